//! Extremal search: enumerate small instances meeting an equality-type
//! criterion and report one canonical representative per affine class.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::config::EXHAUSTIVE_LIMIT;
use crate::error::{Result, ZpError};
use crate::zp::{deficiency_from, sumset_kernel, PrimeModulus, ResidueSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchCriterion {
    /// Pairs with `|A + B| = |A| + |B| − 1`.
    CdEquality,
    /// Sets with `|2A| = 3k − 4`.
    Near3k3,
    /// Pairs with `A + B ≠ Z/pZ` and `|C| = r + 2`.
    HszTight,
}

impl SearchCriterion {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchCriterion::CdEquality => "cd_equality",
            SearchCriterion::Near3k3 => "near_3k3",
            SearchCriterion::HszTight => "hsz_tight",
        }
    }

    fn is_pair(self) -> bool {
        !matches!(self, SearchCriterion::Near3k3)
    }
}

impl fmt::Display for SearchCriterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SearchCriterion {
    type Err = ZpError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cd_equality" => Ok(SearchCriterion::CdEquality),
            "near_3k3" => Ok(SearchCriterion::Near3k3),
            "hsz_tight" => Ok(SearchCriterion::HszTight),
            _ => Err(ZpError::UnknownCriterion(s.to_string())),
        }
    }
}

/// A canonical representative: a set, or a pair of sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SearchWitness {
    pub a: ResidueSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<ResidueSet>,
}

impl fmt::Display for SearchWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.b {
            Some(b) => write!(f, "A={} B={}", self.a, b),
            None => write!(f, "A={}", self.a),
        }
    }
}

/// Sort key: the members in ascending order, compared lexicographically.
fn key(s: &ResidueSet) -> Vec<u32> {
    s.members()
}

/// Least image of `A` under `a ↦ x·(a − a₀)` over `x ≠ 0` and `a₀ ∈ A`.
pub fn canonical_set(a: &ResidueSet) -> ResidueSet {
    let m = a.modulus();
    let mut best: Option<(Vec<u32>, ResidueSet)> = None;
    for x in 1..m.get() {
        let dilated = a.dilate(x);
        for a0 in dilated.iter() {
            let img = dilated.translate(m.neg(a0));
            let k = key(&img);
            if best.as_ref().is_none_or(|(bk, _)| k < *bk) {
                best = Some((k, img));
            }
        }
    }
    best.expect("nonempty set").1
}

/// Least image of `(A, B)` under a common dilation and independent
/// translations putting `0` in both sets. Sumset sizes are invariant under
/// these maps.
pub fn canonical_pair(a: &ResidueSet, b: &ResidueSet) -> (ResidueSet, ResidueSet) {
    let m = a.modulus();
    type Keyed = ((Vec<u32>, Vec<u32>), (ResidueSet, ResidueSet));
    let mut best: Option<Keyed> = None;
    for x in 1..m.get() {
        let (da, db) = (a.dilate(x), b.dilate(x));
        for a0 in da.iter() {
            let ia = da.translate(m.neg(a0));
            let ka = key(&ia);
            if best.as_ref().is_some_and(|(bk, _)| ka > bk.0) {
                continue;
            }
            for b0 in db.iter() {
                let ib = db.translate(m.neg(b0));
                let k = (ka.clone(), key(&ib));
                if best.as_ref().is_none_or(|(bk, _)| k < *bk) {
                    best = Some((k, (ia.clone(), ib)));
                }
            }
        }
    }
    best.expect("nonempty sets").1
}

fn pair_matches(criterion: SearchCriterion, a: &ResidueSet, b: &ResidueSet) -> bool {
    let s = sumset_kernel(a, b).cardinality();
    let (na, nb) = (a.cardinality(), b.cardinality());
    match criterion {
        SearchCriterion::CdEquality => s + 1 == na + nb,
        SearchCriterion::HszTight => {
            let c = a.p() as i64 - s as i64;
            c > 0 && c == deficiency_from(s, na, nb) + 2
        }
        SearchCriterion::Near3k3 => unreachable!(),
    }
}

/// All canonical witnesses for `criterion` at modulus `p`, optionally
/// restricted to `|A| = size`. The result is sorted and deduplicated.
pub fn extremal_search(
    p: PrimeModulus,
    criterion: SearchCriterion,
    size: Option<usize>,
) -> Result<Vec<SearchWitness>> {
    let sets = (1u128 << p.get().min(64)) - 1;
    let space = if criterion.is_pair() {
        sets * sets
    } else {
        sets
    };
    if p.get() > 28 || space > EXHAUSTIVE_LIMIT {
        return Err(ZpError::SpaceTooLarge {
            size: space,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let all = 1u64 << p.get();
    let mut found = BTreeSet::new();
    // every affine class has a member with 0 in each set: odd masks suffice
    for amask in (1..all).step_by(2) {
        let a = ResidueSet::from_mask(p, amask);
        let k = a.cardinality();
        if size.is_some_and(|s| s != k) {
            continue;
        }
        if criterion.is_pair() {
            for bmask in (1..all).step_by(2) {
                let b = ResidueSet::from_mask(p, bmask);
                if pair_matches(criterion, &a, &b) {
                    let (ca, cb) = canonical_pair(&a, &b);
                    found.insert(SearchWitness { a: ca, b: Some(cb) });
                }
            }
        } else {
            let doubled = sumset_kernel(&a, &a).cardinality() as i64;
            if doubled == 3 * k as i64 - 4 {
                found.insert(SearchWitness {
                    a: canonical_set(&a),
                    b: None,
                });
            }
        }
    }
    let mut out: Vec<SearchWitness> = found.into_iter().collect();
    out.sort_by_key(|w| (key(&w.a), w.b.as_ref().map(key)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(p: u64, xs: &[u32]) -> ResidueSet {
        ResidueSet::from_members(PrimeModulus::new(p).unwrap(), xs.iter().copied()).unwrap()
    }

    #[test]
    fn criterion_names() {
        for c in [
            SearchCriterion::CdEquality,
            SearchCriterion::Near3k3,
            SearchCriterion::HszTight,
        ] {
            assert_eq!(c.as_str().parse::<SearchCriterion>().unwrap(), c);
        }
        assert!(matches!(
            "bogus".parse::<SearchCriterion>(),
            Err(ZpError::UnknownCriterion(_))
        ));
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(canonical_set(&set(7, &[2, 4, 6])), set(7, &[0, 1, 2]));
        assert_eq!(canonical_set(&set(7, &[3])), set(7, &[0]));
        let (a, b) = canonical_pair(&set(7, &[3, 5]), &set(7, &[1, 3, 5]));
        assert_eq!((a, b), (set(7, &[0, 1]), set(7, &[0, 1, 2])));
    }

    #[test]
    fn cd_equality_p7() {
        let w = extremal_search(
            PrimeModulus::new(7).unwrap(),
            SearchCriterion::CdEquality,
            None,
        )
        .unwrap();
        let target = SearchWitness {
            a: set(7, &[0, 1]),
            b: Some(set(7, &[0, 1])),
        };
        assert!(w.contains(&target));
        let unique: BTreeSet<_> = w.iter().cloned().collect();
        assert_eq!(unique.len(), w.len());
    }

    #[test]
    fn near_3k3_p5_k2_is_empty() {
        let w = extremal_search(
            PrimeModulus::new(5).unwrap(),
            SearchCriterion::Near3k3,
            Some(2),
        )
        .unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn search_guard() {
        assert!(extremal_search(
            PrimeModulus::new(17).unwrap(),
            SearchCriterion::HszTight,
            None
        )
        .is_err());
    }
}
