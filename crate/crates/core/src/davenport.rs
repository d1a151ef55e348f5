//! The Davenport transform.
//!
//! For `A + B ≠ Z/pZ` with `0 ∈ B` and `|B| >= 2`, the excess set is
//! `E = (A + 2B) ∩ complement(A + B)`, and every `e ∈ E` splits `B` into
//! `B_e = B ∩ (e + C)` and `B^e = B ∩ (e + complement(C))`. The checks here
//! turn each inequality about that split into a verdict.

use crate::error::{Result, ZpError};
use crate::theorems::{Instance, TheoremId, TheoremVerdict, Witness};
use crate::zp::{deficiency_from, sumset_kernel, AffineMap, ResidueSet};

/// A pair `(A, B)` satisfying the transform's standing hypotheses, with the
/// derived sets computed once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformContext {
    a: ResidueSet,
    b: ResidueSet,
    sum: ResidueSet,
    companion: ResidueSet,
    a_plus_2b: ResidueSet,
    excess: ResidueSet,
}

/// The pair `(B_e, B^e)` at the site `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DavenportSplit {
    pub e: u32,
    /// `B_e = B ∩ (e + C)`
    pub lower: ResidueSet,
    /// `B^e = B ∩ (e + complement(C))`
    pub upper: ResidueSet,
}

/// Translates `B` by `−b` so that `0 ∈ B`. Returns the map that was applied.
///
/// [`build_context`] never does this implicitly.
pub fn normalize_pair(
    a: &ResidueSet,
    b: &ResidueSet,
    anchor: u32,
) -> Result<(ResidueSet, ResidueSet, AffineMap)> {
    a.same_modulus(b)?;
    if !b.contains(anchor) {
        return Err(ZpError::Parse(format!("{anchor} is not a member of B")));
    }
    let m = b.modulus();
    let shift = AffineMap::translation(m, m.neg(anchor));
    Ok((a.clone(), shift.image(b), shift))
}

pub fn build_context(a: &ResidueSet, b: &ResidueSet) -> Result<TransformContext> {
    a.same_modulus(b)?;
    if a.is_empty() {
        return Err(ZpError::EmptySet);
    }
    if !b.contains(0) {
        return Err(ZpError::ZeroNotInB);
    }
    let nb = b.cardinality();
    if nb < 2 {
        return Err(ZpError::BTooSmall(nb));
    }
    let sum = sumset_kernel(a, b);
    if sum.is_full() {
        return Err(ZpError::SumsetIsFull);
    }
    let outside = sum.complement();
    let a_plus_2b = sumset_kernel(&sum, b);
    let excess = a_plus_2b.intersection(&outside);
    Ok(TransformContext {
        a: a.clone(),
        b: b.clone(),
        companion: outside.negate(),
        sum,
        a_plus_2b,
        excess,
    })
}

impl TransformContext {
    pub fn a(&self) -> &ResidueSet {
        &self.a
    }

    pub fn b(&self) -> &ResidueSet {
        &self.b
    }

    /// `S = A + B`
    pub fn sum(&self) -> &ResidueSet {
        &self.sum
    }

    /// `C = −complement(A + B)`
    pub fn companion(&self) -> &ResidueSet {
        &self.companion
    }

    pub fn a_plus_2b(&self) -> &ResidueSet {
        &self.a_plus_2b
    }

    /// `E = (A + 2B) ∩ complement(A + B)`
    pub fn excess(&self) -> &ResidueSet {
        &self.excess
    }

    pub fn deficiency(&self) -> i64 {
        deficiency_from(
            self.sum.cardinality(),
            self.a.cardinality(),
            self.b.cardinality(),
        )
    }

    pub fn split(&self, e: u32) -> Result<DavenportSplit> {
        if !self.excess.contains(e) {
            return Err(ZpError::NotInExcess(e));
        }
        let shifted = self.companion.translate(e);
        Ok(DavenportSplit {
            e,
            lower: self.b.intersection(&shifted),
            upper: self.b.difference(&shifted),
        })
    }

    pub fn splits(&self) -> impl Iterator<Item = DavenportSplit> + '_ {
        self.excess
            .iter()
            .map(|e| self.split(e).expect("e is drawn from E"))
    }

    fn site(&self, e: u32) -> Instance {
        Instance::Site(self.a.clone(), self.b.clone(), e)
    }

    /// Partition and size checks on one split: `B_e ∪ B^e = B`,
    /// `B_e ∩ B^e = ∅`, `0 ∈ B_e`, `B^e ≠ ∅` and `1 <= |B_e| <= |B| − 1`.
    pub fn check_partition(&self, s: &DavenportSplit) -> TheoremVerdict {
        let failed = if s.lower.union(&s.upper) != self.b {
            Some("cover")
        } else if !s.lower.is_disjoint(&s.upper) {
            Some("disjoint")
        } else if !s.lower.contains(0) {
            Some("zero_in_lower")
        } else if s.upper.is_empty() {
            Some("upper_nonempty")
        } else {
            let n = s.lower.cardinality();
            (n < 1 || n + 1 > self.b.cardinality()).then_some("size_bounds")
        };
        TheoremVerdict::decided(
            TheoremId::DavenportPartition,
            self.site(s.e),
            failed.is_none(),
            failed.map(|check| Witness::Violation {
                check,
                e: Some(s.e),
            }),
        )
    }

    /// `A + B ⊇ (A + B_e) ∪ (e − B^e)`, with the two parts disjoint.
    pub fn check_containment(&self, s: &DavenportSplit) -> TheoremVerdict {
        let left = if s.lower.is_empty() {
            ResidueSet::empty(self.a.modulus())
        } else {
            sumset_kernel(&self.a, &s.lower)
        };
        let right = s.upper.negate().translate(s.e);
        let failed = if !left.is_subset(&self.sum) {
            Some("lower_part")
        } else if !right.is_subset(&self.sum) {
            Some("upper_part")
        } else if !left.is_disjoint(&right) {
            Some("parts_disjoint")
        } else {
            None
        };
        TheoremVerdict::decided(
            TheoremId::DavenportContainment,
            self.site(s.e),
            failed.is_none(),
            failed.map(|check| Witness::Violation {
                check,
                e: Some(s.e),
            }),
        )
    }

    /// `|A + B| − |B| >= |A + B_e| − |B_e|`.
    pub fn check_descent(&self, s: &DavenportSplit) -> TheoremVerdict {
        if s.lower.is_empty() {
            return TheoremVerdict::not_met(TheoremId::DavenportDescent, self.site(s.e));
        }
        let value = self.sum.cardinality() as i64 - self.b.cardinality() as i64;
        let bound =
            sumset_kernel(&self.a, &s.lower).cardinality() as i64 - s.lower.cardinality() as i64;
        TheoremVerdict::decided(
            TheoremId::DavenportDescent,
            self.site(s.e),
            value >= bound,
            Some(Witness::AtLeast { value, bound }),
        )
    }

    /// If `B_e = {0}` for every `e ∈ E`, then `|B| <= r + 2` when
    /// `A + 2B ≠ Z/pZ` and `|C| <= r + 1` otherwise.
    pub fn lemma1_check(&self) -> TheoremVerdict {
        let instance = Instance::Pair(self.a.clone(), self.b.clone());
        if self.splits().any(|s| s.lower.cardinality() != 1) {
            return TheoremVerdict::not_met(TheoremId::Lemma1, instance);
        }
        let r = self.deficiency();
        let (value, bound) = if self.a_plus_2b.is_full() {
            (self.companion.cardinality() as i64, r + 1)
        } else {
            (self.b.cardinality() as i64, r + 2)
        };
        TheoremVerdict::decided(
            TheoremId::Lemma1,
            instance,
            value <= bound,
            Some(Witness::AtMost { value, bound }),
        )
    }

    /// Every transform check on every site, folded into one verdict that
    /// names the first failing check.
    pub fn check_all(&self) -> TheoremVerdict {
        let instance = Instance::Pair(self.a.clone(), self.b.clone());
        let fail = |check: &'static str, e: Option<u32>| {
            TheoremVerdict::decided(
                TheoremId::Davenport,
                instance.clone(),
                false,
                Some(Witness::Violation { check, e }),
            )
        };
        if self.excess.is_empty() {
            return fail("excess_nonempty", None);
        }
        if !self.sum.is_disjoint(&self.excess) || self.sum.union(&self.excess) != self.a_plus_2b {
            return fail("disjoint_union", None);
        }
        for s in self.splits() {
            for v in [
                self.check_partition(&s),
                self.check_containment(&s),
                self.check_descent(&s),
            ] {
                if v.is_counterexample() {
                    let check = match v.witness {
                        Some(Witness::Violation { check, .. }) => check,
                        _ => "descent",
                    };
                    return fail(check, Some(s.e));
                }
            }
        }
        if self.lemma1_check().is_counterexample() {
            return fail("lemma1", None);
        }
        TheoremVerdict::decided(TheoremId::Davenport, instance, true, None)
    }
}

/// Runs the whole transform suite on `(A, B)`; pairs outside the standing
/// hypotheses yield a hypotheses-not-met verdict.
pub fn check_transform(a: &ResidueSet, b: &ResidueSet) -> TheoremVerdict {
    match build_context(a, b) {
        Ok(ctx) => ctx.check_all(),
        Err(_) => {
            TheoremVerdict::not_met(TheoremId::Davenport, Instance::Pair(a.clone(), b.clone()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zp::PrimeModulus;

    fn set(p: u64, xs: &[u32]) -> ResidueSet {
        ResidueSet::from_members(PrimeModulus::new(p).unwrap(), xs.iter().copied()).unwrap()
    }

    #[test]
    fn context_examples() {
        let ctx = build_context(&set(7, &[0]), &set(7, &[0, 1])).unwrap();
        assert_eq!(ctx.sum(), &set(7, &[0, 1]));
        assert_eq!(ctx.companion(), &set(7, &[1, 2, 3, 4, 5]));
        assert_eq!(ctx.excess(), &set(7, &[2]));

        let ctx = build_context(&set(5, &[0, 1]), &set(5, &[0, 1])).unwrap();
        assert_eq!(ctx.sum(), &set(5, &[0, 1, 2]));
        assert_eq!(ctx.excess(), &set(5, &[3]));

        let ctx = build_context(&set(3, &[0]), &set(3, &[0, 1])).unwrap();
        assert_eq!(ctx.sum(), &set(3, &[0, 1]));
        assert_eq!(ctx.excess(), &set(3, &[2]));
    }

    #[test]
    fn context_hypotheses() {
        assert_eq!(
            build_context(&set(7, &[0]), &set(7, &[1, 2])),
            Err(ZpError::ZeroNotInB)
        );
        assert_eq!(
            build_context(&set(7, &[0]), &set(7, &[0])),
            Err(ZpError::BTooSmall(1))
        );
        assert_eq!(
            build_context(&set(5, &[0, 1, 2]), &set(5, &[0, 3])),
            Err(ZpError::SumsetIsFull)
        );
        assert!(matches!(
            build_context(&set(5, &[0]), &set(7, &[0, 1])),
            Err(ZpError::ModulusMismatch { .. })
        ));
    }

    #[test]
    fn split_examples() {
        let ctx = build_context(&set(7, &[0]), &set(7, &[0, 1])).unwrap();
        let s = ctx.split(2).unwrap();
        assert_eq!(s.lower, set(7, &[0]));
        assert_eq!(s.upper, set(7, &[1]));
        assert_eq!(ctx.split(3), Err(ZpError::NotInExcess(3)));

        // C = −{3,4} = {1,2}; e + C = {4,0}; B_e = {0}, B^e = {1}
        let ctx = build_context(&set(5, &[0, 1]), &set(5, &[0, 1])).unwrap();
        let s = ctx.split(3).unwrap();
        assert_eq!(s.lower, set(5, &[0]));
        assert_eq!(s.upper, set(5, &[1]));
        assert_eq!(s.lower.union(&s.upper), set(5, &[0, 1]));
    }

    #[test]
    fn check_examples() {
        for (p, a, b, e) in [
            (7u64, &[0u32][..], &[0u32, 1][..], 2u32),
            (5, &[0, 1], &[0, 1], 3),
        ] {
            let ctx = build_context(&set(p, a), &set(p, b)).unwrap();
            let s = ctx.split(e).unwrap();
            assert!(ctx.check_partition(&s).holds());
            assert!(ctx.check_containment(&s).holds());
            let d = ctx.check_descent(&s);
            assert!(d.holds());
            assert!(d.witness_validates());
        }
        let ctx = build_context(&set(7, &[0]), &set(7, &[0, 1])).unwrap();
        let d = ctx.check_descent(&ctx.split(2).unwrap());
        assert_eq!(d.witness, Some(Witness::AtLeast { value: 0, bound: 0 }));
    }

    #[test]
    fn lemma1_examples() {
        let ctx = build_context(&set(7, &[0]), &set(7, &[0, 1])).unwrap();
        let v = ctx.lemma1_check();
        assert!(v.holds());
        assert_eq!(v.witness, Some(Witness::AtMost { value: 2, bound: 2 }));

        // A = {0}, B = {0,1,3} mod 7: A+B = {0,1,3}, C = {1,2,3,5}, E = {2,4,6};
        // e = 4 gives e + C = {5,6,0,2} and B_e = {0}; e = 6 gives {0,1,2,4}, B_e = {0,1}
        let ctx = build_context(&set(7, &[0]), &set(7, &[0, 1, 3])).unwrap();
        assert_eq!(ctx.excess(), &set(7, &[2, 4, 6]));
        assert_eq!(ctx.split(6).unwrap().lower, set(7, &[0, 1]));
        assert!(!ctx.lemma1_check().hypotheses_met());
    }

    #[test]
    fn normalizer_translates_explicitly() {
        let (a, b, map) = normalize_pair(&set(7, &[0, 2]), &set(7, &[3, 5]), 3).unwrap();
        assert_eq!(a, set(7, &[0, 2]));
        assert_eq!(b, set(7, &[0, 2]));
        assert_eq!(map.shift(), 4);
        assert!(normalize_pair(&set(7, &[0]), &set(7, &[3]), 1).is_err());
    }
}
