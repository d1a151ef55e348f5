use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use smallvec::SmallVec;

use super::modulus::PrimeModulus;
use crate::error::{Result, ZpError};

pub(crate) type Words = SmallVec<[u64; 2]>;

/// A subset of `Z/pZ`, stored as a bitmask over residues `0..p`.
///
/// Sets with `p <= 128` live inline in two machine words; larger moduli
/// spill to the heap. Bits at or beyond index `p` are always clear.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ResidueSet {
    modulus: PrimeModulus,
    words: Words,
}

#[inline]
fn word_count(p: u32) -> usize {
    (p as usize).div_ceil(64)
}

#[inline]
fn low_mask_u64(p: u32) -> u64 {
    if p >= 64 {
        u64::MAX
    } else {
        (1u64 << p) - 1
    }
}

#[inline]
fn low_mask_u128(p: u32) -> u128 {
    if p >= 128 {
        u128::MAX
    } else {
        (1u128 << p) - 1
    }
}

/// Cyclic left rotation of the low `p` bits of a word (`p <= 64`, `s < p`).
#[inline]
pub(crate) fn rotl_u64(w: u64, s: u32, p: u32) -> u64 {
    if s == 0 {
        w
    } else {
        ((w << s) | (w >> (p - s))) & low_mask_u64(p)
    }
}

#[inline]
pub(crate) fn rotl_u128(w: u128, s: u32, p: u32) -> u128 {
    if s == 0 {
        w
    } else {
        ((w << s) | (w >> (p - s))) & low_mask_u128(p)
    }
}

/// `dst |= rotl_p(src, s)` over word arrays of arbitrary length.
fn or_rotated_words(dst: &mut [u64], src: &[u64], s: u32, p: u32) {
    let n = dst.len();
    // src << s, bits at or beyond p are dropped by the final mask.
    let (wo, bit) = ((s / 64) as usize, s % 64);
    for (i, &w) in src.iter().enumerate().take(n) {
        if w == 0 {
            continue;
        }
        let j = i + wo;
        if j < n {
            dst[j] |= w << bit;
        }
        if bit > 0 && j + 1 < n {
            dst[j + 1] |= w >> (64 - bit);
        }
    }
    // src >> (p - s) brings the wrapped high bits down.
    if s > 0 {
        let r = p - s;
        let (wo, bit) = ((r / 64) as usize, r % 64);
        for (i, &w) in src.iter().enumerate().take(n).skip(wo) {
            if w == 0 {
                continue;
            }
            let j = i - wo;
            dst[j] |= w >> bit;
            if bit > 0 && j > 0 {
                dst[j - 1] |= w << (64 - bit);
            }
        }
    }
    let tail = p % 64;
    if tail != 0 {
        dst[n - 1] &= (1u64 << tail) - 1;
    }
}

impl ResidueSet {
    pub fn empty(modulus: PrimeModulus) -> Self {
        Self {
            modulus,
            words: SmallVec::from_elem(0, word_count(modulus.get())),
        }
    }

    pub fn full(modulus: PrimeModulus) -> Self {
        let mut s = Self {
            modulus,
            words: SmallVec::from_elem(u64::MAX, word_count(modulus.get())),
        };
        s.clear_tail();
        s
    }

    pub fn singleton(modulus: PrimeModulus, x: u32) -> Result<Self> {
        Self::from_members(modulus, [x])
    }

    /// Builds a set from members; rejects out-of-range values and duplicates.
    pub fn from_members<I>(modulus: PrimeModulus, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = u32>,
    {
        let mut s = Self::empty(modulus);
        for x in members {
            if x >= modulus.get() {
                return Err(ZpError::ResidueOutOfRange {
                    value: x as u64,
                    p: modulus.get(),
                });
            }
            if s.contains(x) {
                return Err(ZpError::DuplicateMember(x));
            }
            s.insert(x);
        }
        Ok(s)
    }

    /// Builds a set from arbitrary integers, reducing each mod `p`.
    pub fn from_residues<I>(modulus: PrimeModulus, values: I) -> Self
    where
        I: IntoIterator<Item = i64>,
    {
        let mut s = Self::empty(modulus);
        for v in values {
            s.insert(modulus.reduce(v));
        }
        s
    }

    /// Builds a set from the low `p` bits of `mask`. Requires `p <= 64`.
    #[inline]
    pub fn from_mask(modulus: PrimeModulus, mask: u64) -> Self {
        assert!(modulus.get() <= 64, "from_mask requires p <= 64");
        let mut words = Words::new();
        words.push(mask & low_mask_u64(modulus.get()));
        Self { modulus, words }
    }

    /// Builds a set from little-endian words; bits beyond `p` are cleared.
    pub fn from_words(modulus: PrimeModulus, src: &[u64]) -> Self {
        let mut s = Self::empty(modulus);
        for (d, w) in s.words.iter_mut().zip(src) {
            *d = *w;
        }
        s.clear_tail();
        s
    }

    #[inline]
    fn clear_tail(&mut self) {
        let tail = self.modulus.get() % 64;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.modulus.get()
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The bitmask as a single word, when `p <= 64`.
    #[inline]
    pub fn mask(&self) -> Option<u64> {
        (self.words.len() == 1).then(|| self.words[0])
    }

    #[inline]
    pub fn cardinality(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn is_full(&self) -> bool {
        self.cardinality() == self.modulus.as_usize()
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        x < self.p() && self.words[(x / 64) as usize] >> (x % 64) & 1 == 1
    }

    #[inline]
    pub(crate) fn insert(&mut self, x: u32) {
        debug_assert!(x < self.p());
        self.words[(x / 64) as usize] |= 1u64 << (x % 64);
    }

    #[inline]
    pub(crate) fn remove(&mut self, x: u32) {
        debug_assert!(x < self.p());
        self.words[(x / 64) as usize] &= !(1u64 << (x % 64));
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Members<'_> {
        Members {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn members(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<u32> {
        self.iter().next()
    }

    pub fn same_modulus(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(ZpError::ModulusMismatch {
                left: self.p(),
                right: other.p(),
            });
        }
        Ok(())
    }

    fn zip_words(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| f(*a, *b))
            .collect();
        Self {
            modulus: self.modulus,
            words,
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_words(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_words(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_words(other, |a, b| a & !b)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.modulus == other.modulus
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Flips membership within `[0, p-1]`.
    pub fn complement(&self) -> Self {
        let mut s = Self {
            modulus: self.modulus,
            words: self.words.iter().map(|w| !w).collect(),
        };
        s.clear_tail();
        s
    }

    /// The translate `{a + s}`, computed as a cyclic rotation of the bitmask.
    pub fn translate(&self, s: u32) -> Self {
        let mut out = Self::empty(self.modulus);
        out.or_translated(self, s % self.p());
        out
    }

    /// `self |= src + s`, with `s < p`.
    #[inline]
    pub(crate) fn or_translated(&mut self, src: &Self, s: u32) {
        let p = self.p();
        match self.words.len() {
            1 => self.words[0] |= rotl_u64(src.words[0], s, p),
            2 => {
                let w = src.words[0] as u128 | (src.words[1] as u128) << 64;
                let r = rotl_u128(w, s, p);
                self.words[0] |= r as u64;
                self.words[1] |= (r >> 64) as u64;
            }
            _ => or_rotated_words(&mut self.words, &src.words, s, p),
        }
    }

    /// The negation `{-a}`.
    pub fn negate(&self) -> Self {
        let m = self.modulus;
        let mut out = Self::empty(m);
        for x in self.iter() {
            out.insert(m.neg(x));
        }
        out
    }

    /// The dilation `{x·a}`.
    pub fn dilate(&self, x: u32) -> Self {
        let m = self.modulus;
        let mut out = Self::empty(m);
        for a in self.iter() {
            out.insert(m.mul(a, x));
        }
        out
    }
}

/// Ascending iterator over the members of a [`ResidueSet`].
pub struct Members<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Members<'_> {
    type Item = u32;

    #[inline]
    fn next(&mut self) -> Option<u32> {
        loop {
            if self.current != 0 {
                let tz = self.current.trailing_zeros();
                self.current &= self.current - 1;
                return Some(self.index as u32 * 64 + tz);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl<'a> IntoIterator for &'a ResidueSet {
    type Item = u32;
    type IntoIter = Members<'a>;

    fn into_iter(self) -> Members<'a> {
        self.iter()
    }
}

/// Orders by modulus, then by the bitmask read as an unsigned integer.
impl Ord for ResidueSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.modulus
            .cmp(&other.modulus)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for ResidueSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Literal format `p=13:{0,1,5}`.
impl fmt::Display for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={}:{{", self.p())?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses a comma-separated member list such as `0,1,5` (empty allowed).
pub fn parse_members(modulus: PrimeModulus, csv: &str) -> Result<ResidueSet> {
    let csv = csv.trim();
    let mut values = Vec::new();
    if !csv.is_empty() {
        for tok in csv.split(',') {
            let tok = tok.trim();
            let v: u64 = tok
                .parse()
                .map_err(|_| ZpError::Parse(format!("bad member `{tok}`")))?;
            if v >= modulus.get() as u64 {
                return Err(ZpError::ResidueOutOfRange {
                    value: v,
                    p: modulus.get(),
                });
            }
            values.push(v as u32);
        }
    }
    ResidueSet::from_members(modulus, values)
}

impl FromStr for ResidueSet {
    type Err = ZpError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || ZpError::Parse(format!("expected `p=<prime>:{{...}}`, got `{s}`"));
        let rest = s.trim().strip_prefix("p=").ok_or_else(bad)?;
        let (p, body) = rest.split_once(':').ok_or_else(bad)?;
        let p: u64 = p.parse().map_err(|_| bad())?;
        let inner = body
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .ok_or_else(bad)?;
        parse_members(PrimeModulus::new(p)?, inner)
    }
}

impl Serialize for ResidueSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    #[test]
    fn literal_roundtrip() {
        let s: ResidueSet = "p=13:{0,1,5}".parse().unwrap();
        assert_eq!(s.members(), vec![0, 1, 5]);
        assert_eq!(s.to_string(), "p=13:{0,1,5}");
        let e: ResidueSet = "p=5:{}".parse().unwrap();
        assert!(e.is_empty());
        assert_eq!(e.to_string(), "p=5:{}");
    }

    #[test]
    fn literal_rejects_bad_input() {
        assert!(matches!(
            "p=7:{0,7}".parse::<ResidueSet>(),
            Err(ZpError::ResidueOutOfRange { value: 7, p: 7 })
        ));
        assert_eq!(
            "p=7:{1,1}".parse::<ResidueSet>(),
            Err(ZpError::DuplicateMember(1))
        );
        assert_eq!("p=4:{1}".parse::<ResidueSet>(), Err(ZpError::NotPrime(4)));
        assert!("7:{1}".parse::<ResidueSet>().is_err());
        assert!("p=7:{1,x}".parse::<ResidueSet>().is_err());
    }

    #[test]
    fn tail_bits_stay_clear() {
        for p in [2u64, 3, 61, 67, 127, 131, 257] {
            let full = ResidueSet::full(m(p));
            assert_eq!(full.cardinality(), p as usize);
            assert!(full.complement().is_empty());
            assert_eq!(ResidueSet::empty(m(p)).complement(), full);
            for s in [0, 1, p as u32 / 2, p as u32 - 1] {
                assert_eq!(full.translate(s), full);
            }
        }
    }

    #[test]
    fn translate_matches_pointwise() {
        for p in [2u64, 3, 7, 61, 127, 131, 199] {
            let md = m(p);
            let a = ResidueSet::from_residues(md, [0, 1, 5, p as i64 - 1, (p / 2) as i64]);
            for s in 0..p as u32 {
                let expect = ResidueSet::from_residues(md, a.iter().map(|x| (x + s) as i64));
                assert_eq!(a.translate(s), expect, "p={p} s={s}");
            }
        }
    }

    #[test]
    fn iteration_order_and_ordering() {
        let s = ResidueSet::from_members(m(131), [130, 0, 64, 63]).unwrap();
        assert_eq!(s.members(), vec![0, 63, 64, 130]);
        let a = ResidueSet::from_mask(m(7), 0b011);
        let b = ResidueSet::from_mask(m(7), 0b100);
        assert!(a < b);
    }
}
