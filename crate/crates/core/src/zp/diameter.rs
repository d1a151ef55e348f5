//! Affine diameter and shortest covering progressions.
//!
//! For a fixed common difference `d`, the shortest progression with
//! difference `d` covering `A` is found by dilating `A` by `d⁻¹` and locating
//! the largest cyclic gap `g` between consecutive members: the cover has
//! length `p − g + 1` and starts right after the gap. The diameter is the
//! minimum over the difference classes `d ∈ [1, (p−1)/2]`.

use super::modulus::PrimeModulus;
use super::ops::sumset_kernel;
use super::progression::ApDescriptor;
use super::set::ResidueSet;
use crate::error::{Result, ZpError};

/// Largest cyclic gap between consecutive members, wraparound included.
fn max_gap(set: &ResidueSet) -> u32 {
    let mut it = set.iter();
    let first = it.next().expect("nonempty");
    let mut prev = first;
    let mut best = 0;
    for x in it {
        best = best.max(x - prev);
        prev = x;
    }
    best.max(first + set.p() - prev)
}

fn length_for(set: &ResidueSet, d_inv: u32) -> u32 {
    let dilated = set.dilate(d_inv);
    set.p() - max_gap(&dilated) + 1
}

/// Shortest progression with common difference `±d` covering `set`.
///
/// The returned difference is normalized into `[1, (p−1)/2]`; among covers of
/// equal length the smallest start is chosen. Unlike
/// [`ApDescriptor::canonical`] the difference is kept even for the full group.
pub fn cover_with_difference(set: &ResidueSet, d: u32) -> Result<ApDescriptor> {
    if set.is_empty() {
        return Err(ZpError::EmptySet);
    }
    let m = set.modulus();
    let d = m.normalize_difference(d)?;
    let d_inv = m.inv(d).expect("d is nonzero");
    let dilated = set.dilate(d_inv);
    let p = m.get();
    let k = set.cardinality() as u32;
    if k == p {
        return ApDescriptor::new(m, 0, d, p);
    }
    let g = max_gap(&dilated);
    let len = p - g + 1;
    // several gaps may tie; pick the cover whose real start is smallest
    let members = dilated.members();
    let mut start = u32::MAX;
    for (i, &x) in members.iter().enumerate() {
        let prev = if i == 0 {
            members[members.len() - 1] as i64 - p as i64
        } else {
            members[i - 1] as i64
        };
        if (x as i64 - prev) as u32 == g {
            start = start.min(m.mul(x, d));
        }
    }
    ApDescriptor::new(m, start, d, len)
}

/// `diam(A)`: length of the shortest arithmetic progression covering `A`.
pub fn diameter(set: &ResidueSet) -> Result<u32> {
    if set.is_empty() {
        return Err(ZpError::EmptySet);
    }
    let m = set.modulus();
    let k = set.cardinality() as u32;
    if k == 1 {
        return Ok(1);
    }
    let mut best = m.get();
    for d in 1..=m.max_difference() {
        let len = length_for(set, m.inv(d).expect("d is nonzero"));
        best = best.min(len);
        if best == k {
            break;
        }
    }
    Ok(best)
}

/// Canonical shortest covering progression: ties are broken by the smallest
/// normalized difference, then by the smallest start.
pub fn min_cover_ap(set: &ResidueSet) -> Result<ApDescriptor> {
    if set.is_empty() {
        return Err(ZpError::EmptySet);
    }
    let m = set.modulus();
    let k = set.cardinality() as u32;
    if k == 1 || k == m.get() {
        return ApDescriptor::new(m, set.first().unwrap(), 1, k).map(|ap| ap.canonical());
    }
    let mut best: Option<ApDescriptor> = None;
    for d in 1..=m.max_difference() {
        let cover = cover_with_difference(set, d)?;
        if best.is_none_or(|b| cover.len() < b.len()) {
            best = Some(cover);
            if cover.len() == k {
                break;
            }
        }
    }
    Ok(best.expect("at least one difference class").canonical())
}

/// The canonical descriptor of `set` when it is itself a progression.
pub fn is_ap(set: &ResidueSet) -> Result<Option<ApDescriptor>> {
    let cover = min_cover_ap(set)?;
    Ok((cover.len() as usize == set.cardinality()).then_some(cover))
}

/// `diam(A) <= |2A| − |A| + 1`.
pub fn is_short_covered(set: &ResidueSet) -> Result<bool> {
    let diam = diameter(set)? as i64;
    let doubled = sumset_kernel(set, set).cardinality() as i64;
    Ok(diam <= doubled - set.cardinality() as i64 + 1)
}

/// All normalized difference classes `[1, (p−1)/2]` (just `1` for `p = 2`).
pub fn difference_classes(m: PrimeModulus) -> impl Iterator<Item = u32> {
    1..=m.max_difference()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(p: u64, xs: &[u32]) -> ResidueSet {
        ResidueSet::from_members(PrimeModulus::new(p).unwrap(), xs.iter().copied()).unwrap()
    }

    fn ap(p: u64, a: u32, d: u32, k: u32) -> ApDescriptor {
        ApDescriptor::new(PrimeModulus::new(p).unwrap(), a, d, k).unwrap()
    }

    /// Shortest covering progression by trying every (start, d, length).
    fn brute_diameter(s: &ResidueSet) -> u32 {
        let p = s.p();
        (1..=p)
            .find(|&len| (0..p).any(|a| (1..p).any(|d| ap(p as u64, a, d, len).covers(s))))
            .unwrap()
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(diameter(&set(7, &[0, 1, 2, 3, 4, 5, 6])).unwrap(), 7);
        assert_eq!(diameter(&set(7, &[0, 2, 4])).unwrap(), 3);
        // frozen from the brute-force oracle
        let s = set(13, &[0, 1, 5]);
        assert_eq!(brute_diameter(&s), 4);
        assert_eq!(diameter(&s).unwrap(), 4);
        assert_eq!(diameter(&set(7, &[])), Err(ZpError::EmptySet));
    }

    #[test]
    fn min_cover_examples() {
        assert_eq!(min_cover_ap(&set(7, &[1, 3, 5])).unwrap(), ap(7, 1, 2, 3));
        assert_eq!(min_cover_ap(&set(7, &[4])).unwrap(), ap(7, 4, 1, 1));
        assert_eq!(
            min_cover_ap(&set(5, &[0, 1, 2, 3, 4])).unwrap(),
            ap(5, 0, 1, 5)
        );
    }

    #[test]
    fn is_ap_examples() {
        assert_eq!(is_ap(&set(7, &[0, 2, 4])).unwrap(), Some(ap(7, 0, 2, 3)));
        assert_eq!(is_ap(&set(7, &[0, 1, 3])).unwrap(), None);
        assert_eq!(diameter(&set(7, &[0, 1, 3])).unwrap(), 4);
        assert_eq!(is_ap(&set(7, &[6])).unwrap(), Some(ap(7, 6, 1, 1)));
    }

    #[test]
    fn short_cover_examples() {
        assert!(is_short_covered(&set(7, &[0, 1])).unwrap());
        assert!(is_short_covered(&set(7, &[0])).unwrap());
        // |2A| = 6 so the bound is 4; the oracle gives diam = 5
        let s = set(13, &[0, 1, 4]);
        assert_eq!(double(&s).cardinality(), 6);
        assert_eq!(brute_diameter(&s), 5);
        assert!(!is_short_covered(&s).unwrap());
    }

    fn double(s: &ResidueSet) -> ResidueSet {
        sumset_kernel(s, s)
    }

    #[test]
    fn cover_with_fixed_difference() {
        let c = cover_with_difference(&set(7, &[0, 1, 2, 3, 4, 5, 6]), 3).unwrap();
        assert_eq!((c.start(), c.difference(), c.len()), (0, 3, 7));
        let c = cover_with_difference(&set(11, &[2, 4, 6]), 9).unwrap();
        assert_eq!((c.start(), c.difference(), c.len()), (2, 2, 3));
        assert!(cover_with_difference(&set(11, &[2]), 0).is_err());
    }

    #[test]
    fn agrees_with_brute_force_p7() {
        let m = PrimeModulus::new(7).unwrap();
        for mask in 1u64..(1 << 7) {
            let s = ResidueSet::from_mask(m, mask);
            let d = diameter(&s).unwrap();
            assert_eq!(d, brute_diameter(&s), "{s}");
            let c = min_cover_ap(&s).unwrap();
            assert!(c.covers(&s) && c.len() == d && c.is_canonical(), "{s}");
        }
    }
}
