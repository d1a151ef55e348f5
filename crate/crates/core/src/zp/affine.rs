use std::fmt;

use super::modulus::PrimeModulus;
use super::set::ResidueSet;
use crate::error::{Result, ZpError};

/// The map `a ↦ x·a + y` with `x ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AffineMap {
    modulus: PrimeModulus,
    scale: u32,
    shift: u32,
}

impl AffineMap {
    pub fn new(modulus: PrimeModulus, scale: u32, shift: u32) -> Result<Self> {
        let scale = scale % modulus.get();
        if scale == 0 {
            return Err(ZpError::ZeroScale);
        }
        Ok(Self {
            modulus,
            scale,
            shift: shift % modulus.get(),
        })
    }

    pub fn identity(modulus: PrimeModulus) -> Self {
        Self {
            modulus,
            scale: 1,
            shift: 0,
        }
    }

    pub fn translation(modulus: PrimeModulus, shift: u32) -> Self {
        Self {
            modulus,
            scale: 1,
            shift: shift % modulus.get(),
        }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn shift(&self) -> u32 {
        self.shift
    }

    #[inline]
    pub fn apply(&self, a: u32) -> u32 {
        let m = self.modulus;
        m.add(m.mul(self.scale, a), self.shift)
    }

    /// `a ↦ x⁻¹·(a − y)`.
    pub fn inverse(&self) -> Self {
        let m = self.modulus;
        let xi = m.inv(self.scale).expect("scale is nonzero mod a prime");
        Self {
            modulus: m,
            scale: xi,
            shift: m.neg(m.mul(xi, self.shift)),
        }
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let m = self.modulus;
        Self {
            modulus: m,
            scale: m.mul(self.scale, other.scale),
            shift: self.apply(other.shift),
        }
    }

    pub fn image(&self, set: &ResidueSet) -> ResidueSet {
        let mut out = ResidueSet::empty(set.modulus());
        for a in set.iter() {
            out.insert(self.apply(a));
        }
        out
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "a -> {}*a + {} (mod {})",
            self.scale, self.shift, self.modulus
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_compose() {
        let m = PrimeModulus::new(13).unwrap();
        for x in 1..13 {
            for y in 0..13 {
                let f = AffineMap::new(m, x, y).unwrap();
                let id = f.compose(&f.inverse());
                assert_eq!(id, AffineMap::identity(m));
                for a in 0..13 {
                    assert_eq!(f.inverse().apply(f.apply(a)), a);
                }
            }
        }
        assert_eq!(AffineMap::new(m, 13, 1), Err(ZpError::ZeroScale));
    }
}
