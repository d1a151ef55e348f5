use std::fmt;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Result, ZpError};

/// A prime modulus `p`, checked by trial division at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeModulus(u32);

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut f = 3u64;
    while f * f <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(ZpError::NotPrime(p));
        }
        Ok(Self(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn as_usize(self) -> usize {
        self.0 as usize
    }

    /// Largest normalized common difference, `(p-1)/2`, or 1 when `p = 2`.
    #[inline]
    pub fn max_difference(self) -> u32 {
        ((self.0 - 1) / 2).max(1)
    }

    /// Reduces any integer to its residue in `[0, p-1]`.
    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.0 as u64 - (b % self.0) as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        self.sub(0, a)
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    /// Multiplicative inverse by extended Euclid. Returns `None` for `a ≡ 0`.
    pub fn inv(self, a: u32) -> Option<u32> {
        let a = (a % self.0) as i64;
        if a == 0 {
            return None;
        }
        let eg = a.extended_gcd(&(self.0 as i64));
        debug_assert_eq!(eg.gcd, 1);
        Some(self.reduce(eg.x))
    }

    /// Picks the representative of `±d` lying in `[1, (p-1)/2]`.
    pub fn normalize_difference(self, d: u32) -> Result<u32> {
        let d = d % self.0;
        if d == 0 {
            return Err(ZpError::ZeroDifference);
        }
        Ok(if d > self.max_difference() {
            self.0 - d
        } else {
            d
        })
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for PrimeModulus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u32(self.0)
    }
}

impl TryFrom<u64> for PrimeModulus {
    type Error = ZpError;

    fn try_from(p: u64) -> Result<Self> {
        Self::new(p)
    }
}
