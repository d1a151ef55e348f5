use serde::Serialize;

use crate::error::{Result, ZpError};
use crate::theorems::{InstanceKind, TheoremId};
use crate::zp::PrimeModulus;
use crate::RationalGate;

/// Largest instance space an exhaustive run may cover.
pub const EXHAUSTIVE_LIMIT: u128 = 1 << 28;

pub const DEFAULT_MAX_COUNTEREXAMPLES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Sample { count: u64, seed: u64 },
}

/// Inclusive cardinality bounds on `A` and `B`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Filters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_min: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_min: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_max: Option<usize>,
}

impl Filters {
    pub fn is_empty(&self) -> bool {
        *self == Self::default()
    }

    #[inline]
    pub fn admits_a(&self, n: usize) -> bool {
        self.a_min.is_none_or(|m| n >= m) && self.a_max.is_none_or(|m| n <= m)
    }

    #[inline]
    pub fn admits_b(&self, n: usize) -> bool {
        self.b_min.is_none_or(|m| n >= m) && self.b_max.is_none_or(|m| n <= m)
    }
}

/// Everything that determines a run's report.
///
/// The worker count is an execution detail and is not echoed in reports,
/// which are identical for every worker count.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub theorem: TheoremId,
    pub p: PrimeModulus,
    #[serde(flatten)]
    pub mode: Mode,
    #[serde(skip)]
    pub workers: usize,
    #[serde(skip_serializing_if = "Filters::is_empty")]
    pub filters: Filters,
    pub max_counterexamples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gate: Option<RationalGate>,
}

impl RunConfig {
    pub fn exhaustive(theorem: TheoremId, p: PrimeModulus) -> Self {
        Self {
            theorem,
            p,
            mode: Mode::Exhaustive,
            workers: 1,
            filters: Filters::default(),
            max_counterexamples: DEFAULT_MAX_COUNTEREXAMPLES,
            gate: (theorem == TheoremId::Freiman24).then(RationalGate::default),
        }
    }

    pub fn sample(theorem: TheoremId, p: PrimeModulus, count: u64, seed: u64) -> Self {
        Self {
            mode: Mode::Sample { count, seed },
            ..Self::exhaustive(theorem, p)
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_filters(mut self, filters: Filters) -> Self {
        self.filters = filters;
        self
    }

    pub fn with_gate(mut self, gate: RationalGate) -> Self {
        self.gate = Some(gate);
        self
    }

    /// Size of the unfiltered exhaustive space, before any admissibility
    /// restriction on transform pairs.
    pub fn space_size(&self) -> u128 {
        let p = self.p.get();
        if p > 60 {
            return u128::MAX;
        }
        let sets = (1u128 << p) - 1;
        match self.theorem.instance_kind() {
            InstanceKind::Set | InstanceKind::SetOfTwo => sets,
            InstanceKind::SetAndDifference => sets * (p as u128 - 1),
            InstanceKind::Pair => sets * sets,
            InstanceKind::TransformPair => sets * (1u128 << (p - 1)),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.workers == 0 {
            return Err(ZpError::InvalidConfig("workers must be at least 1".into()));
        }
        if !TheoremId::RUNNABLE.contains(&self.theorem) {
            return Err(ZpError::UnknownTheorem(self.theorem.to_string()));
        }
        if let Mode::Exhaustive = self.mode {
            let size = self.space_size();
            if size > EXHAUSTIVE_LIMIT {
                return Err(ZpError::SpaceTooLarge {
                    size,
                    limit: EXHAUSTIVE_LIMIT,
                });
            }
        }
        Ok(())
    }
}
