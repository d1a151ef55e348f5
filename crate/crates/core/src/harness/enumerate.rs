//! Exhaustive and sampled enumeration with deterministic, parallel merging.
//!
//! The instance space is cut into a fixed number of partitions that depends
//! only on the configuration: contiguous ranges of `A`'s bitmask in
//! exhaustive mode, contiguous ranges of sample indices in sample mode.
//! Workers process whole partitions and the aggregator merges them in
//! partition order, so the report does not depend on the worker count.

use std::time::Instant;

use rayon::prelude::*;

use super::config::{Mode, RunConfig};
use super::report::{FailureRecord, PartitionSummary, VerificationReport};
use super::rng::{mix, SplitMix64};
use crate::davenport::check_transform;
use crate::error::{Result, ZpError};
use crate::theorems::{
    cauchy_davenport, erdos_heilbronn, freiman_24, freiman_3k3, hsz, lemma2_two_point,
    symmetry_identity, theorem_con, vosper, HszVariant, Instance, InstanceKind, TheoremId,
    TheoremVerdict,
};
use crate::zp::{sumset_kernel, PrimeModulus, ResidueSet};
use crate::RationalGate;

/// Number of partitions a run is split into (fewer when the space is small).
pub const PARTITIONS: u64 = 64;

/// Something the harness can apply to instances.
pub trait Checker: Sync {
    fn theorem(&self) -> TheoremId;
    fn check(&self, instance: &Instance) -> Result<TheoremVerdict>;

    fn kind(&self) -> InstanceKind {
        self.theorem().instance_kind()
    }
}

/// Dispatches to the checker named by a [`TheoremId`].
#[derive(Debug, Clone)]
pub struct TheoremChecker {
    theorem: TheoremId,
    gate: RationalGate,
}

impl TheoremChecker {
    pub fn new(theorem: TheoremId, gate: Option<RationalGate>) -> Result<Self> {
        if !TheoremId::RUNNABLE.contains(&theorem) {
            return Err(ZpError::UnknownTheorem(theorem.to_string()));
        }
        Ok(Self {
            theorem,
            gate: gate.unwrap_or_default(),
        })
    }
}

impl Checker for TheoremChecker {
    fn theorem(&self) -> TheoremId {
        self.theorem
    }

    fn check(&self, instance: &Instance) -> Result<TheoremVerdict> {
        use TheoremId::*;
        match (self.theorem, instance) {
            (CauchyDavenport, Instance::Pair(a, b)) => cauchy_davenport(a, b),
            (Vosper, Instance::Pair(a, b)) => vosper(a, b),
            (HszStandard, Instance::Pair(a, b)) => hsz(a, b, HszVariant::Standard),
            (HszConjecture, Instance::Pair(a, b)) => hsz(a, b, HszVariant::Conjecture),
            (TheoremCon, Instance::Pair(a, b)) => theorem_con(a, b),
            (Symmetry, Instance::Pair(a, b)) => symmetry_identity(a, b),
            (Davenport, Instance::Pair(a, b)) => Ok(check_transform(a, b)),
            (Freiman3k3, Instance::Set(a)) => freiman_3k3(a),
            (Freiman24, Instance::Set(a)) => freiman_24(a, &self.gate),
            (ErdosHeilbronn, Instance::Set(a)) => erdos_heilbronn(a),
            (Lemma2, Instance::SetAndDifference(a, d)) => lemma2_two_point(a, *d),
            (t, i) => Err(ZpError::InvalidConfig(format!(
                "{t} cannot check instance {i}"
            ))),
        }
    }
}

/// Order-sensitive digest of the verdicts in one partition.
fn fold_checksum(h: u64, v: &TheoremVerdict) -> u64 {
    let mut f = 0u64;
    let mut feed = |w: u64| f = mix(f ^ w).wrapping_add(w);
    for s in [Some(v.instance.first()), v.instance.second()]
        .into_iter()
        .flatten()
    {
        s.words().iter().for_each(|&w| feed(w));
        feed(u64::MAX);
    }
    match &v.instance {
        Instance::SetAndDifference(_, x) | Instance::Site(_, _, x) => feed(*x as u64),
        _ => {}
    }
    let outcome = match v.conclusion {
        None => 0,
        Some(true) => 1,
        Some(false) => 2,
    };
    mix(h ^ f ^ outcome)
}

struct Partial {
    index: usize,
    first: u64,
    last: u64,
    instances: u64,
    met: u64,
    failures: u64,
    kept: Vec<TheoremVerdict>,
    checksum: u64,
}

impl Partial {
    fn new(index: usize, first: u64, last: u64) -> Self {
        Self {
            index,
            first,
            last,
            instances: 0,
            met: 0,
            failures: 0,
            kept: Vec::new(),
            checksum: 0,
        }
    }

    fn record(&mut self, v: TheoremVerdict, cap: usize) {
        self.instances += 1;
        self.checksum = fold_checksum(self.checksum, &v);
        if v.hypotheses_met() {
            self.met += 1;
        }
        if v.is_counterexample() {
            self.failures += 1;
            if self.kept.len() < cap {
                self.kept.push(v);
            }
        }
    }
}

/// Splits `[start, start + total)` into at most [`PARTITIONS`] contiguous ranges.
fn partition(start: u64, total: u64) -> Vec<(u64, u64)> {
    let n = PARTITIONS.min(total).max(1);
    (0..n)
        .map(|i| {
            let lo = start + (total as u128 * i as u128 / n as u128) as u64;
            let hi = start + (total as u128 * (i + 1) as u128 / n as u128) as u64;
            (lo, hi)
        })
        .collect()
}

fn admissible_transform(a: &ResidueSet, b: &ResidueSet) -> bool {
    b.contains(0) && b.cardinality() >= 2 && !sumset_kernel(a, b).is_full()
}

fn exhaustive_partition(
    config: &RunConfig,
    checker: &dyn Checker,
    index: usize,
    (lo, hi): (u64, u64),
) -> Result<Partial> {
    let m = config.p;
    let p = m.get();
    let cap = config.max_counterexamples;
    let f = &config.filters;
    let all = 1u64 << p;
    let mut part = Partial::new(index, lo, hi - 1);
    for amask in lo..hi {
        let a = ResidueSet::from_mask(m, amask);
        let na = a.cardinality();
        if !f.admits_a(na) {
            continue;
        }
        match checker.kind() {
            InstanceKind::Set => part.record(checker.check(&Instance::Set(a))?, cap),
            InstanceKind::SetOfTwo => {
                if na >= 2 {
                    part.record(checker.check(&Instance::Set(a))?, cap);
                }
            }
            InstanceKind::SetAndDifference => {
                if na >= 2 {
                    for d in 1..p {
                        let inst = Instance::SetAndDifference(a.clone(), d);
                        part.record(checker.check(&inst)?, cap);
                    }
                }
            }
            InstanceKind::Pair => {
                for bmask in 1..all {
                    let b = ResidueSet::from_mask(m, bmask);
                    if f.admits_b(b.cardinality()) {
                        let inst = Instance::Pair(a.clone(), b);
                        part.record(checker.check(&inst)?, cap);
                    }
                }
            }
            InstanceKind::TransformPair => {
                // B ranges over sets containing 0: odd masks
                for bmask in (3..all).step_by(2) {
                    let b = ResidueSet::from_mask(m, bmask);
                    if f.admits_b(b.cardinality()) && admissible_transform(&a, &b) {
                        let inst = Instance::Pair(a.clone(), b);
                        part.record(checker.check(&inst)?, cap);
                    }
                }
            }
        }
    }
    Ok(part)
}

/// Uniform subset of the given cardinality (Floyd's algorithm).
fn random_subset(rng: &mut SplitMix64, m: PrimeModulus, k: usize) -> ResidueSet {
    let p = m.get();
    let mut set = ResidueSet::empty(m);
    for j in (p - k as u32)..p {
        let t = rng.below(j as u64 + 1) as u32;
        if set.contains(t) {
            set.insert(j);
        } else {
            set.insert(t);
        }
    }
    set
}

fn size_range(
    lo: Option<usize>,
    hi: Option<usize>,
    floor: usize,
    p: usize,
) -> Result<(usize, usize)> {
    let lo = lo.unwrap_or(1).max(floor);
    let hi = hi.unwrap_or(p).min(p);
    if lo > hi {
        return Err(ZpError::InvalidConfig(format!(
            "no admissible cardinality in [{lo}, {hi}]"
        )));
    }
    Ok((lo, hi))
}

fn random_sized(rng: &mut SplitMix64, m: PrimeModulus, (lo, hi): (usize, usize)) -> ResidueSet {
    let k = lo + rng.below((hi - lo + 1) as u64) as usize;
    random_subset(rng, m, k)
}

/// Draws the instance for sample `index`.
///
/// Each set gets a cardinality drawn uniformly from the range allowed by the
/// filters and the instance kind, then a uniform subset of that size. The
/// difference of a lemma2 instance is uniform in `[1, p−1]`. Transform pairs
/// have `B` translated by `−min(B)` so that `0 ∈ B`; pairs with
/// `A + B = Z/pZ` are kept and the checker reports them as not meeting the
/// hypotheses.
pub fn draw_instance(
    config: &RunConfig,
    kind: InstanceKind,
    seed: u64,
    index: u64,
) -> Result<Instance> {
    let m = config.p;
    let p = m.as_usize();
    let f = &config.filters;
    let a_floor = match kind {
        InstanceKind::SetOfTwo | InstanceKind::SetAndDifference => 2,
        _ => 1,
    };
    let a_range = size_range(f.a_min, f.a_max, a_floor, p)?;
    let mut rng = SplitMix64::for_sample(seed, index);
    let a = random_sized(&mut rng, m, a_range);
    Ok(match kind {
        InstanceKind::Set | InstanceKind::SetOfTwo => Instance::Set(a),
        InstanceKind::SetAndDifference => {
            let d = 1 + rng.below(m.get() as u64 - 1) as u32;
            Instance::SetAndDifference(a, d)
        }
        InstanceKind::Pair | InstanceKind::TransformPair => {
            let b_floor = if kind == InstanceKind::TransformPair {
                2
            } else {
                1
            };
            let b_range = size_range(f.b_min, f.b_max, b_floor, p)?;
            let mut b = random_sized(&mut rng, m, b_range);
            if kind == InstanceKind::TransformPair {
                let lowest = b.first().expect("nonempty");
                b = b.translate(m.neg(lowest));
            }
            Instance::Pair(a, b)
        }
    })
}

fn sample_partition(
    config: &RunConfig,
    checker: &dyn Checker,
    seed: u64,
    index: usize,
    (lo, hi): (u64, u64),
) -> Result<Partial> {
    let mut part = Partial::new(index, lo, hi.saturating_sub(1));
    for i in lo..hi {
        let inst = draw_instance(config, checker.kind(), seed, i)?;
        part.record(checker.check(&inst)?, config.max_counterexamples);
    }
    Ok(part)
}

/// Runs `checker` over the space described by `config`.
pub fn enumerate(config: &RunConfig, checker: &dyn Checker) -> Result<VerificationReport> {
    config.validate()?;
    if checker.theorem() != config.theorem {
        return Err(ZpError::InvalidConfig(format!(
            "checker for {} given a {} run",
            checker.theorem(),
            config.theorem
        )));
    }
    let started = Instant::now();
    let ranges = match config.mode {
        Mode::Exhaustive => partition(1, (1u64 << config.p.get()) - 1),
        Mode::Sample { count, .. } => partition(0, count),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| ZpError::InvalidConfig(e.to_string()))?;
    let partials: Vec<Partial> = pool.install(|| {
        ranges
            .par_iter()
            .enumerate()
            .map(|(i, &range)| match config.mode {
                Mode::Exhaustive => exhaustive_partition(config, checker, i, range),
                Mode::Sample { seed, .. } => sample_partition(config, checker, seed, i, range),
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let mut report = VerificationReport::new(config.clone());
    let mut kept = Vec::new();
    for part in partials {
        report.instances_tested += part.instances;
        report.hypothesis_met_count += part.met;
        report.conclusion_failure_count += part.failures;
        report.partitions.push(PartitionSummary {
            index: part.index,
            first: part.first,
            last: part.last,
            instances: part.instances,
            checksum: format!("{:016x}", part.checksum),
        });
        kept.extend(part.kept);
    }
    kept.sort_by(|x, y| x.instance.cmp(&y.instance));
    kept.truncate(config.max_counterexamples);
    report.conclusion_failures = kept.into_iter().map(FailureRecord::from).collect();
    report.closed_form_count = closed_form_count(config);
    report.elapsed_ms = started.elapsed().as_millis() as u64;
    if let Some(expected) = report.closed_form_count {
        if expected != report.instances_tested {
            return Err(ZpError::InvalidConfig(format!(
                "enumerated {} instances, closed form gives {expected}",
                report.instances_tested
            )));
        }
    }
    Ok(report)
}

/// Closed-form size of unfiltered exhaustive spaces.
pub fn closed_form_count(config: &RunConfig) -> Option<u64> {
    if config.mode != Mode::Exhaustive || !config.filters.is_empty() {
        return None;
    }
    let p = config.p.get();
    let sets = (1u64 << p) - 1;
    match config.theorem.instance_kind() {
        InstanceKind::Set => Some(sets),
        // all sets but the empty set and the p singletons
        InstanceKind::SetOfTwo => Some(sets - p as u64),
        InstanceKind::SetAndDifference => Some((sets - p as u64) * (p as u64 - 1)),
        InstanceKind::Pair => Some(sets * sets),
        InstanceKind::TransformPair => None,
    }
}

/// Builds the checker named in `config` and runs it.
pub fn run(config: &RunConfig) -> Result<VerificationReport> {
    let checker = TheoremChecker::new(config.theorem, config.gate)?;
    enumerate(config, &checker)
}
