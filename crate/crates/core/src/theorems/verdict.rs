use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::ZpError;
use crate::zp::{ApDescriptor, ResidueSet};

/// Stable identifiers for every checker. The first ten are the CLI's
/// `--theorem` values; the remaining ones label the individual Davenport
/// transform checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    CauchyDavenport,
    Lemma2,
    Vosper,
    HszStandard,
    HszConjecture,
    TheoremCon,
    Freiman3k3,
    Freiman24,
    ErdosHeilbronn,
    Symmetry,
    /// The whole transform suite run as one harness target.
    Davenport,
    DavenportPartition,
    DavenportContainment,
    DavenportDescent,
    Lemma1,
}

/// Shape of the instance a checker consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceKind {
    /// One nonempty set.
    Set,
    /// One set with at least two members.
    SetOfTwo,
    /// A set with at least two members and a nonzero difference.
    SetAndDifference,
    /// An ordered pair of nonempty sets.
    Pair,
    /// Pairs with `0 ∈ B`, `|B| >= 2` and `A+B ≠ Z/pZ`.
    TransformPair,
}

impl TheoremId {
    /// Every id accepted by `verify`.
    pub const RUNNABLE: [TheoremId; 11] = [
        TheoremId::CauchyDavenport,
        TheoremId::Lemma2,
        TheoremId::Vosper,
        TheoremId::HszStandard,
        TheoremId::HszConjecture,
        TheoremId::TheoremCon,
        TheoremId::Freiman3k3,
        TheoremId::Freiman24,
        TheoremId::ErdosHeilbronn,
        TheoremId::Symmetry,
        TheoremId::Davenport,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::CauchyDavenport => "cauchy_davenport",
            TheoremId::Lemma2 => "lemma2",
            TheoremId::Vosper => "vosper",
            TheoremId::HszStandard => "hsz_standard",
            TheoremId::HszConjecture => "hsz_conjecture",
            TheoremId::TheoremCon => "theorem_con",
            TheoremId::Freiman3k3 => "freiman_3k3",
            TheoremId::Freiman24 => "freiman_24",
            TheoremId::ErdosHeilbronn => "erdos_heilbronn",
            TheoremId::Symmetry => "symmetry",
            TheoremId::Davenport => "davenport",
            TheoremId::DavenportPartition => "davenport_partition",
            TheoremId::DavenportContainment => "davenport_containment",
            TheoremId::DavenportDescent => "davenport_descent",
            TheoremId::Lemma1 => "lemma1",
        }
    }

    pub fn instance_kind(self) -> InstanceKind {
        match self {
            TheoremId::Freiman3k3 | TheoremId::Freiman24 => InstanceKind::Set,
            TheoremId::ErdosHeilbronn => InstanceKind::SetOfTwo,
            TheoremId::Lemma2 => InstanceKind::SetAndDifference,
            TheoremId::Davenport
            | TheoremId::DavenportPartition
            | TheoremId::DavenportContainment
            | TheoremId::DavenportDescent
            | TheoremId::Lemma1 => InstanceKind::TransformPair,
            _ => InstanceKind::Pair,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = ZpError;

    fn from_str(s: &str) -> Result<Self, ZpError> {
        Self::RUNNABLE
            .into_iter()
            .chain([
                TheoremId::DavenportPartition,
                TheoremId::DavenportContainment,
                TheoremId::DavenportDescent,
                TheoremId::Lemma1,
            ])
            .find(|t| t.as_str() == s)
            .ok_or_else(|| ZpError::UnknownTheorem(s.to_string()))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// The sets (and scalar parameters) a verdict was computed on.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Instance {
    Set(ResidueSet),
    Pair(ResidueSet, ResidueSet),
    SetAndDifference(ResidueSet, u32),
    /// A transform site: the pair and the excess element `e`.
    Site(ResidueSet, ResidueSet, u32),
}

impl Instance {
    pub fn first(&self) -> &ResidueSet {
        match self {
            Instance::Set(a)
            | Instance::Pair(a, _)
            | Instance::SetAndDifference(a, _)
            | Instance::Site(a, _, _) => a,
        }
    }

    pub fn second(&self) -> Option<&ResidueSet> {
        match self {
            Instance::Pair(_, b) | Instance::Site(_, b, _) => Some(b),
            _ => None,
        }
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instance::Set(a) => write!(f, "A={a}"),
            Instance::Pair(a, b) => write!(f, "A={a} B={b}"),
            Instance::SetAndDifference(a, d) => write!(f, "A={a} d={d}"),
            Instance::Site(a, b, e) => write!(f, "A={a} B={b} e={e}"),
        }
    }
}

impl Serialize for Instance {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("a", self.first())?;
        if let Some(b) = self.second() {
            map.serialize_entry("b", b)?;
        }
        match self {
            Instance::SetAndDifference(_, d) => map.serialize_entry("d", d)?,
            Instance::Site(_, _, e) => map.serialize_entry("e", e)?,
            _ => {}
        }
        map.end()
    }
}

/// Data that lets a verdict be re-checked without rerunning the checker.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// The instance's first set is this progression (or is covered by it).
    Progression { cover: ApDescriptor },
    /// Covers of `A` and `B` sharing one common difference.
    CommonDifference {
        difference: u32,
        a_cover: ApDescriptor,
        b_cover: ApDescriptor,
    },
    /// The checked inequality `value >= bound`.
    AtLeast { value: i64, bound: i64 },
    /// The checked inequality `value <= bound`.
    AtMost { value: i64, bound: i64 },
    /// The named transform check failed, at site `e` when one applies.
    Violation { check: &'static str, e: Option<u32> },
    /// A list of residues, such as a chain of distinct sums.
    Residues { values: Vec<u32> },
}

impl Witness {
    /// Whether the witness supports the conclusion it is attached to.
    pub fn supports(&self, instance: &Instance) -> bool {
        match self {
            Witness::Progression { cover } => cover.covers(instance.first()),
            Witness::CommonDifference {
                difference,
                a_cover,
                b_cover,
            } => {
                a_cover.difference() == *difference
                    && b_cover.difference() == *difference
                    && a_cover.covers(instance.first())
                    && instance.second().is_some_and(|b| b_cover.covers(b))
            }
            Witness::AtLeast { value, bound } => value >= bound,
            Witness::AtMost { value, bound } => value <= bound,
            Witness::Violation { .. } => false,
            Witness::Residues { .. } => true,
        }
    }
}

/// Outcome of one checker on one instance.
///
/// `conclusion` is `None` exactly when the hypotheses are not met. A
/// conclusion of `Some(false)` is a counterexample, never an error.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremVerdict {
    pub theorem: TheoremId,
    pub instance: Instance,
    pub conclusion: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl TheoremVerdict {
    pub fn not_met(theorem: TheoremId, instance: Instance) -> Self {
        Self {
            theorem,
            instance,
            conclusion: None,
            witness: None,
        }
    }

    pub fn decided(
        theorem: TheoremId,
        instance: Instance,
        holds: bool,
        witness: Option<Witness>,
    ) -> Self {
        Self {
            theorem,
            instance,
            conclusion: Some(holds),
            witness,
        }
    }

    #[inline]
    pub fn hypotheses_met(&self) -> bool {
        self.conclusion.is_some()
    }

    /// True when the hypotheses are met and the conclusion fails.
    #[inline]
    pub fn is_counterexample(&self) -> bool {
        self.conclusion == Some(false)
    }

    #[inline]
    pub fn holds(&self) -> bool {
        self.conclusion == Some(true)
    }

    /// Re-validates a positive verdict's witness against the instance.
    pub fn witness_validates(&self) -> bool {
        match (&self.conclusion, &self.witness) {
            (Some(true), Some(w)) => w.supports(&self.instance),
            _ => true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_roundtrip() {
        for id in TheoremId::RUNNABLE {
            assert_eq!(id.as_str().parse::<TheoremId>().unwrap(), id);
        }
        assert_eq!(
            "nope".parse::<TheoremId>(),
            Err(ZpError::UnknownTheorem("nope".into()))
        );
    }
}
