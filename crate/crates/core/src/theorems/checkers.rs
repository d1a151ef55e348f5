//! One checker per theorem. Each reports whether the hypotheses hold and, if
//! so, whether the conclusion does, with a witness that can be re-validated.

use crate::error::{Result, ZpError};
use crate::scalar::GateScalar;
use crate::zp::{
    cover_with_difference, deficiency_from, diameter, difference_classes, is_ap, min_cover_ap,
    restricted_sumset, sumset_kernel, AffineMap, ResidueSet,
};

use super::gate::FreimanGate;
use super::verdict::{Instance, TheoremId, TheoremVerdict, Witness};

fn check_pair(a: &ResidueSet, b: &ResidueSet) -> Result<()> {
    a.same_modulus(b)?;
    if a.is_empty() || b.is_empty() {
        return Err(ZpError::EmptySet);
    }
    Ok(())
}

fn pair(a: &ResidueSet, b: &ResidueSet) -> Instance {
    Instance::Pair(a.clone(), b.clone())
}

/// Sizes shared by the pair checkers.
struct PairStats {
    a: i64,
    b: i64,
    sum: i64,
    companion: i64,
    r: i64,
}

impl PairStats {
    fn new(a: &ResidueSet, b: &ResidueSet) -> Self {
        let sum = sumset_kernel(a, b).cardinality();
        let (na, nb) = (a.cardinality(), b.cardinality());
        Self {
            a: na as i64,
            b: nb as i64,
            sum: sum as i64,
            companion: a.p() as i64 - sum as i64,
            r: deficiency_from(sum, na, nb),
        }
    }
}

/// `|A + B| >= |A| + |B| − 1` whenever `A + B ≠ Z/pZ`.
pub fn cauchy_davenport(a: &ResidueSet, b: &ResidueSet) -> Result<TheoremVerdict> {
    check_pair(a, b)?;
    let st = PairStats::new(a, b);
    if st.companion == 0 {
        return Ok(TheoremVerdict::not_met(
            TheoremId::CauchyDavenport,
            pair(a, b),
        ));
    }
    let bound = st.a + st.b - 1;
    Ok(TheoremVerdict::decided(
        TheoremId::CauchyDavenport,
        pair(a, b),
        st.sum >= bound,
        Some(Witness::AtLeast {
            value: st.sum,
            bound,
        }),
    ))
}

/// The unconditional form `|A + B| >= min(p, |A| + |B| − 1)`.
pub fn cauchy_davenport_unconditional(a: &ResidueSet, b: &ResidueSet) -> Result<bool> {
    check_pair(a, b)?;
    let st = PairStats::new(a, b);
    Ok(st.sum >= (a.p() as i64).min(st.a + st.b - 1))
}

/// If `|{0, d} + A| <= 1 + |A|` then `A` is a progression with difference `±d`.
pub fn lemma2_two_point(a: &ResidueSet, d: u32) -> Result<TheoremVerdict> {
    let m = a.modulus();
    if d.is_multiple_of(m.get()) {
        return Err(ZpError::ZeroDifference);
    }
    let k = a.cardinality();
    if k < 2 {
        return Err(ZpError::TooFewMembers { needed: 2, got: k });
    }
    let instance = Instance::SetAndDifference(a.clone(), d % m.get());
    let two = ResidueSet::from_residues(m, [0, d as i64]);
    if sumset_kernel(&two, a).cardinality() > k + 1 {
        return Ok(TheoremVerdict::not_met(TheoremId::Lemma2, instance));
    }
    let cover = cover_with_difference(a, d)?;
    Ok(TheoremVerdict::decided(
        TheoremId::Lemma2,
        instance,
        cover.len() as usize == k,
        Some(Witness::Progression { cover }),
    ))
}

/// Vosper: `|B| >= 2`, `|C| >= 2` and `r = 0` force `A` to be a progression.
pub fn vosper(a: &ResidueSet, b: &ResidueSet) -> Result<TheoremVerdict> {
    check_pair(a, b)?;
    let st = PairStats::new(a, b);
    if st.b < 2 || st.companion < 2 || st.r != 0 {
        return Ok(TheoremVerdict::not_met(TheoremId::Vosper, pair(a, b)));
    }
    let ap = is_ap(a)?;
    Ok(TheoremVerdict::decided(
        TheoremId::Vosper,
        pair(a, b),
        ap.is_some(),
        ap.map(|cover| Witness::Progression { cover }),
    ))
}

/// Which size conditions gate [`hsz`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HszVariant {
    /// `|A| >= r+3`, `|B| >= r+3`, `|C| >= r+2`.
    Standard,
    /// `|A| >= r+2`, `|B| >= r+3`, `|C| >= r+3`.
    Conjecture,
}

impl HszVariant {
    pub fn theorem_id(self) -> TheoremId {
        match self {
            HszVariant::Standard => TheoremId::HszStandard,
            HszVariant::Conjecture => TheoremId::HszConjecture,
        }
    }

    fn admits(self, st: &PairStats) -> bool {
        let r = st.r;
        r >= 0
            && match self {
                HszVariant::Standard => st.a >= r + 3 && st.b >= r + 3 && st.companion >= r + 2,
                HszVariant::Conjecture => st.a >= r + 2 && st.b >= r + 3 && st.companion >= r + 3,
            }
    }
}

/// Progressions of lengths exactly `|A| + r` and `|B| + r`, sharing one
/// common difference, covering `A` and `B`.
pub fn hsz(a: &ResidueSet, b: &ResidueSet, variant: HszVariant) -> Result<TheoremVerdict> {
    check_pair(a, b)?;
    let id = variant.theorem_id();
    let st = PairStats::new(a, b);
    if !variant.admits(&st) {
        return Ok(TheoremVerdict::not_met(id, pair(a, b)));
    }
    let la = (st.a + st.r) as u32;
    let lb = (st.b + st.r) as u32;
    for d in difference_classes(a.modulus()) {
        let ca = cover_with_difference(a, d)?;
        if ca.len() > la {
            continue;
        }
        let cb = cover_with_difference(b, d)?;
        if cb.len() > lb {
            continue;
        }
        let witness = Witness::CommonDifference {
            difference: d,
            a_cover: ca.extended_to(la)?,
            b_cover: cb.extended_to(lb)?,
        };
        return Ok(TheoremVerdict::decided(id, pair(a, b), true, Some(witness)));
    }
    Ok(TheoremVerdict::decided(id, pair(a, b), false, None))
}

/// `diam(A) <= |A| + r` when `|B| >= r+3` and `|C| >= r+2`.
///
/// Pairs with `A + B = Z/pZ` never meet the hypotheses (`r` is only
/// guaranteed nonnegative when `C` is nonempty).
pub fn theorem_con(a: &ResidueSet, b: &ResidueSet) -> Result<TheoremVerdict> {
    check_pair(a, b)?;
    let st = PairStats::new(a, b);
    if st.companion == 0 || st.b < st.r + 3 || st.companion < st.r + 2 {
        return Ok(TheoremVerdict::not_met(TheoremId::TheoremCon, pair(a, b)));
    }
    let value = diameter(a)? as i64;
    let bound = st.a + st.r;
    Ok(TheoremVerdict::decided(
        TheoremId::TheoremCon,
        pair(a, b),
        value <= bound,
        Some(Witness::AtMost { value, bound }),
    ))
}

fn short_cover_verdict(id: TheoremId, a: &ResidueSet, doubled: usize) -> Result<TheoremVerdict> {
    let cover = min_cover_ap(a)?;
    let bound = doubled as i64 - a.cardinality() as i64 + 1;
    Ok(TheoremVerdict::decided(
        id,
        Instance::Set(a.clone()),
        cover.len() as i64 <= bound,
        Some(Witness::Progression { cover }),
    ))
}

/// `|2A| < 3k − 3` and `k < p/4 + 3/2` imply a short covering progression.
pub fn freiman_3k3(a: &ResidueSet) -> Result<TheoremVerdict> {
    if a.is_empty() {
        return Err(ZpError::EmptySet);
    }
    let k = a.cardinality() as i64;
    let doubled = sumset_kernel(a, a).cardinality();
    // k < p/4 + 3/2  <=>  4k < p + 6
    if (doubled as i64) >= 3 * k - 3 || 4 * k >= a.p() as i64 + 6 {
        return Ok(TheoremVerdict::not_met(
            TheoremId::Freiman3k3,
            Instance::Set(a.clone()),
        ));
    }
    short_cover_verdict(TheoremId::Freiman3k3, a, doubled)
}

/// `|2A| <= c·k − 3` and `k < p/D` imply a short covering progression,
/// with `c` and `D` taken from `gate`.
pub fn freiman_24<T: GateScalar>(a: &ResidueSet, gate: &FreimanGate<T>) -> Result<TheoremVerdict> {
    if a.is_empty() {
        return Err(ZpError::EmptySet);
    }
    let k = a.cardinality();
    let doubled = sumset_kernel(a, a).cardinality();
    if !gate.admits(k as u64, doubled as u64, a.p() as u64) {
        return Ok(TheoremVerdict::not_met(
            TheoremId::Freiman24,
            Instance::Set(a.clone()),
        ));
    }
    short_cover_verdict(TheoremId::Freiman24, a, doubled)
}

/// `|A ∔ A| >= min(p, 2k − 3)` for the restricted sumset.
pub fn erdos_heilbronn(a: &ResidueSet) -> Result<TheoremVerdict> {
    let s = restricted_sumset(a)?.cardinality() as i64;
    let k = a.cardinality() as i64;
    let bound = (a.p() as i64).min(2 * k - 3);
    Ok(TheoremVerdict::decided(
        TheoremId::ErdosHeilbronn,
        Instance::Set(a.clone()),
        s >= bound,
        Some(Witness::AtLeast { value: s, bound }),
    ))
}

/// The affine map sending the canonical shortest cover of `A` onto
/// `[0, diam(A) − 1]`, and the image of `A` under it.
pub fn cover_normalization(a: &ResidueSet) -> Result<(AffineMap, ResidueSet)> {
    let cover = min_cover_ap(a)?;
    let m = a.modulus();
    let d_inv = m.inv(cover.difference()).expect("difference is nonzero");
    let map = AffineMap::new(m, d_inv, m.neg(m.mul(cover.start(), d_inv)))?;
    Ok((map, map.image(a)))
}

/// The `2k − 3` sums `r₀+r₁ < … < r₀+r_{k−1} < r₁+r_{k−1} < … < r_{k−2}+r_{k−1}`
/// of the integer representatives of the normalized set, reduced mod `p`.
///
/// They are pairwise distinct whenever `diam(A) <= 2k − 3` and `p >= 4k − 5`.
pub fn distinct_sum_chain(a: &ResidueSet) -> Result<Vec<u32>> {
    let k = a.cardinality();
    if k < 2 {
        return Err(ZpError::TooFewMembers { needed: 2, got: k });
    }
    let (_, normalized) = cover_normalization(a)?;
    let reps = normalized.members();
    let m = a.modulus();
    let (first, last) = (reps[0], reps[k - 1]);
    let mut chain = Vec::with_capacity(2 * k - 3);
    chain.extend(reps[1..].iter().map(|&x| m.add(first, x)));
    chain.extend(reps[1..k - 1].iter().map(|&x| m.add(x, last)));
    Ok(chain)
}

/// `p + 1 − r = |A| + |B| + |C|`, symmetry of `r` in `A` and `B`, and
/// `0 ∉ A + B + C`. The identity is also re-checked on the rotated pairs
/// `(B, C)` and `(C, A)` whenever their sumsets are not the whole group.
pub fn symmetry_identity(a: &ResidueSet, b: &ResidueSet) -> Result<TheoremVerdict> {
    check_pair(a, b)?;
    let sum = sumset_kernel(a, b);
    if sum.is_full() {
        return Ok(TheoremVerdict::not_met(TheoremId::Symmetry, pair(a, b)));
    }
    let c = sum.complement().negate();
    let p = a.p() as i64;
    let identity = |x: &ResidueSet, y: &ResidueSet| {
        let s = sumset_kernel(x, y);
        let r = deficiency_from(s.cardinality(), x.cardinality(), y.cardinality());
        let companion = p - s.cardinality() as i64;
        p + 1 - r == x.cardinality() as i64 + y.cardinality() as i64 + companion
    };
    let r_ab = deficiency_from(sum.cardinality(), a.cardinality(), b.cardinality());
    let ba = sumset_kernel(b, a);
    let r_ba = deficiency_from(ba.cardinality(), b.cardinality(), a.cardinality());
    let failed = if p + 1 - r_ab != (a.cardinality() + b.cardinality() + c.cardinality()) as i64
        || !identity(a, b)
    {
        Some("identity")
    } else if r_ab != r_ba {
        Some("swap")
    } else if sumset_kernel(&sum, &c).contains(0) {
        Some("triple_sum")
    } else if !identity(b, &c) || !identity(&c, a) {
        Some("rotation")
    } else {
        None
    };
    Ok(TheoremVerdict::decided(
        TheoremId::Symmetry,
        pair(a, b),
        failed.is_none(),
        failed.map(|check| Witness::Violation { check, e: None }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zp::{ApDescriptor, PrimeModulus};

    fn set(p: u64, xs: &[u32]) -> ResidueSet {
        ResidueSet::from_members(PrimeModulus::new(p).unwrap(), xs.iter().copied()).unwrap()
    }

    #[test]
    fn cauchy_davenport_examples() {
        let v = cauchy_davenport(&set(7, &[0, 1]), &set(7, &[0, 1])).unwrap();
        assert!(v.holds());
        assert_eq!(v.witness, Some(Witness::AtLeast { value: 3, bound: 3 }));
        let b = set(7, &[1, 2, 5]);
        let v = cauchy_davenport(&set(7, &[0]), &b).unwrap();
        assert_eq!(v.witness, Some(Witness::AtLeast { value: 3, bound: 3 }));
        let full = cauchy_davenport(&set(5, &[0, 1, 2]), &set(5, &[0, 1, 2])).unwrap();
        assert!(!full.hypotheses_met());
        assert!(cauchy_davenport_unconditional(&set(5, &[0, 1, 2]), &set(5, &[0, 1, 2])).unwrap());
        assert!(cauchy_davenport(&set(5, &[0]), &set(7, &[0])).is_err());
    }

    #[test]
    fn lemma2_examples() {
        let v = lemma2_two_point(&set(7, &[2, 3, 4]), 1).unwrap();
        assert!(v.holds());
        let m7 = PrimeModulus::new(7).unwrap();
        assert_eq!(
            v.witness,
            Some(Witness::Progression {
                cover: ApDescriptor::new(m7, 2, 1, 3).unwrap()
            })
        );
        assert!(!lemma2_two_point(&set(7, &[0, 1, 3]), 1)
            .unwrap()
            .hypotheses_met());
        let full = lemma2_two_point(&set(7, &[0, 1, 2, 3, 4, 5, 6]), 3).unwrap();
        assert!(full.holds() && full.witness_validates());
        assert_eq!(
            lemma2_two_point(&set(7, &[0, 1]), 0),
            Err(ZpError::ZeroDifference)
        );
        assert!(lemma2_two_point(&set(7, &[0]), 1).is_err());
    }

    #[test]
    fn vosper_examples() {
        let v = vosper(&set(7, &[0, 1]), &set(7, &[0, 1])).unwrap();
        assert!(v.holds() && v.witness_validates());
        let v = vosper(&set(7, &[0, 1, 3]), &set(7, &[0, 1, 3])).unwrap();
        assert!(!v.hypotheses_met());
    }

    #[test]
    fn hsz_examples() {
        let a = set(13, &[0, 1, 2]);
        let v = hsz(&a, &a, HszVariant::Standard).unwrap();
        assert!(v.holds() && v.witness_validates());
        let m13 = PrimeModulus::new(13).unwrap();
        assert_eq!(
            v.witness,
            Some(Witness::CommonDifference {
                difference: 1,
                a_cover: ApDescriptor::new(m13, 0, 1, 3).unwrap(),
                b_cover: ApDescriptor::new(m13, 0, 1, 3).unwrap(),
            })
        );
        // A+B = {0..6}: r = 7 − 6 + 1 = 2, so |A| = 3 < r + 3 and the gate fails
        let v = hsz(&a, &set(13, &[0, 2, 4]), HszVariant::Standard).unwrap();
        assert!(!v.hypotheses_met());
    }

    #[test]
    fn theorem_con_examples() {
        let a = set(13, &[0, 1, 2]);
        let v = theorem_con(&a, &a).unwrap();
        assert_eq!(v.witness, Some(Witness::AtMost { value: 3, bound: 3 }));
        // {0,1,4} + {0,1,2,3} = {0..7}: r = 8 − 7 + 1 = 2 and |B| = 4 < 5
        let v = theorem_con(&set(11, &[0, 1, 4]), &set(11, &[0, 1, 2, 3])).unwrap();
        assert!(!v.hypotheses_met());
    }

    #[test]
    fn freiman_examples() {
        let v = freiman_3k3(&set(13, &[0, 1, 2])).unwrap();
        assert!(v.holds() && v.witness_validates());
        // {0,1,5}: 2A = {0,1,2,5,6,10}, |2A| = 6 is not < 6
        assert!(!freiman_3k3(&set(13, &[0, 1, 5])).unwrap().hypotheses_met());
        assert!(freiman_3k3(&set(13, &[])).is_err());
    }

    #[test]
    fn erdos_heilbronn_examples() {
        let v = erdos_heilbronn(&set(7, &[0, 1])).unwrap();
        assert_eq!(v.witness, Some(Witness::AtLeast { value: 1, bound: 1 }));
        let v = erdos_heilbronn(&set(5, &[0, 1, 2, 3, 4])).unwrap();
        assert_eq!(v.witness, Some(Witness::AtLeast { value: 5, bound: 5 }));
        assert!(erdos_heilbronn(&set(5, &[1])).is_err());
    }

    #[test]
    fn chain_examples() {
        assert_eq!(
            distinct_sum_chain(&set(13, &[0, 1, 2])).unwrap(),
            vec![1, 2, 3]
        );
        assert_eq!(
            distinct_sum_chain(&set(13, &[0, 2, 4])).unwrap(),
            vec![1, 2, 3]
        );
        assert_eq!(distinct_sum_chain(&set(11, &[0, 5])).unwrap(), vec![1]);
        assert!(distinct_sum_chain(&set(11, &[5])).is_err());
    }

    #[test]
    fn symmetry_examples() {
        assert!(symmetry_identity(&set(7, &[0, 1]), &set(7, &[0, 1]))
            .unwrap()
            .holds());
        assert!(symmetry_identity(&set(3, &[0]), &set(3, &[0]))
            .unwrap()
            .holds());
        let full = symmetry_identity(&set(5, &[0, 1, 2]), &set(5, &[0, 1, 2])).unwrap();
        assert!(!full.hypotheses_met());
    }
}
