//! Set arithmetic: sumsets, complements, affine images and the companion set.

use super::affine::AffineMap;
use super::set::{rotl_u128, rotl_u64, ResidueSet};
use crate::error::{Result, ZpError};

fn nonempty(a: &ResidueSet) -> Result<()> {
    if a.is_empty() {
        Err(ZpError::EmptySet)
    } else {
        Ok(())
    }
}

fn check_pair(a: &ResidueSet, b: &ResidueSet) -> Result<()> {
    a.same_modulus(b)?;
    nonempty(a)?;
    nonempty(b)
}

/// `A + B` by accumulating a cyclic rotation of `A` for every `b ∈ B`.
///
/// Costs `|B| · ⌈p/64⌉` word operations, with dedicated one-word (`p <= 64`)
/// and `u128` (`p <= 128`) paths.
pub fn sumset(a: &ResidueSet, b: &ResidueSet) -> Result<ResidueSet> {
    check_pair(a, b)?;
    Ok(sumset_kernel(a, b))
}

/// Sumset without validation. Both sets share a modulus.
#[inline]
pub(crate) fn sumset_kernel(a: &ResidueSet, b: &ResidueSet) -> ResidueSet {
    let m = a.modulus();
    let p = m.get();
    // shift by members of the sparser operand
    let (base, shifts) = if b.cardinality() <= a.cardinality() {
        (a, b)
    } else {
        (b, a)
    };
    match base.words().len() {
        1 => {
            let w = base.words()[0];
            let mut acc = 0u64;
            for s in shifts.iter() {
                acc |= rotl_u64(w, s, p);
            }
            ResidueSet::from_words(m, &[acc])
        }
        2 => {
            let w = base.words()[0] as u128 | (base.words()[1] as u128) << 64;
            let mut acc = 0u128;
            for s in shifts.iter() {
                acc |= rotl_u128(w, s, p);
            }
            ResidueSet::from_words(m, &[acc as u64, (acc >> 64) as u64])
        }
        _ => {
            let mut acc = ResidueSet::empty(m);
            for s in shifts.iter() {
                acc.or_translated(base, s);
            }
            acc
        }
    }
}

/// `2A = A + A`.
pub fn double(a: &ResidueSet) -> Result<ResidueSet> {
    nonempty(a)?;
    Ok(sumset_kernel(a, a))
}

/// `{a + a' | a, a' ∈ A, a ≠ a'}`. Its size is the restricted-sum count `s`.
pub fn restricted_sumset(a: &ResidueSet) -> Result<ResidueSet> {
    let k = a.cardinality();
    if k < 2 {
        return Err(ZpError::TooFewMembers { needed: 2, got: k });
    }
    let mut acc = ResidueSet::empty(a.modulus());
    let mut rest = a.clone();
    // each unordered pair is reached once: pair x with members above it
    for x in a.iter() {
        rest.remove(x);
        if rest.is_empty() {
            break;
        }
        acc.or_translated(&rest, x);
    }
    Ok(acc)
}

pub fn complement(a: &ResidueSet) -> ResidueSet {
    a.complement()
}

pub fn affine_image(a: &ResidueSet, map: &AffineMap) -> Result<ResidueSet> {
    nonempty(a)?;
    a.same_modulus(&ResidueSet::empty(map.modulus()))?;
    Ok(map.image(a))
}

/// `C = −(complement of A+B)`; empty exactly when `A+B = Z/pZ`.
pub fn companion_set(a: &ResidueSet, b: &ResidueSet) -> Result<ResidueSet> {
    Ok(sumset(a, b)?.complement().negate())
}

/// `r = |A+B| − |A| − |B| + 1`.
pub fn deficiency(a: &ResidueSet, b: &ResidueSet) -> Result<i64> {
    let s = sumset(a, b)?;
    Ok(deficiency_from(
        s.cardinality(),
        a.cardinality(),
        b.cardinality(),
    ))
}

#[inline]
pub(crate) fn deficiency_from(sum: usize, a: usize, b: usize) -> i64 {
    sum as i64 - a as i64 - b as i64 + 1
}
