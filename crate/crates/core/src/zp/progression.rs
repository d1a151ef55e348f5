use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::modulus::PrimeModulus;
use super::set::ResidueSet;
use crate::error::{Result, ZpError};

/// An arithmetic progression `{start + j·difference | 0 <= j < len}` mod `p`.
///
/// Construction checks only that the expansion has `len` distinct members.
/// [`ApDescriptor::canonical`] picks the representative used in reports:
/// difference in `[1, (p-1)/2]`, `difference = 1` for singletons, and
/// `(0, 1, p)` for the whole group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ApDescriptor {
    modulus: PrimeModulus,
    start: u32,
    difference: u32,
    len: u32,
}

impl ApDescriptor {
    pub fn new(modulus: PrimeModulus, start: u32, difference: u32, len: u32) -> Result<Self> {
        let p = modulus.get();
        if len == 0 || len > p {
            return Err(ZpError::InvalidLength { len, p });
        }
        let difference = difference % p;
        if difference == 0 && len > 1 {
            return Err(ZpError::ZeroDifference);
        }
        Ok(Self {
            modulus,
            start: start % p,
            difference,
            len,
        })
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn difference(&self) -> u32 {
        self.difference
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The `j`-th term.
    pub fn term(&self, j: u32) -> u32 {
        let m = self.modulus;
        m.add(self.start, m.mul(j % m.get(), self.difference))
    }

    pub fn expand(&self) -> ResidueSet {
        let mut out = ResidueSet::empty(self.modulus);
        let mut x = self.start;
        for _ in 0..self.len {
            out.insert(x);
            x = self.modulus.add(x, self.difference);
        }
        out
    }

    pub fn covers(&self, set: &ResidueSet) -> bool {
        set.is_subset(&self.expand())
    }

    /// Same start and difference, extended on the right end to `len`.
    pub fn extended_to(&self, len: u32) -> Result<Self> {
        if len < self.len {
            return Err(ZpError::InvalidLength {
                len,
                p: self.modulus.get(),
            });
        }
        let d = if self.difference == 0 {
            1
        } else {
            self.difference
        };
        Self::new(self.modulus, self.start, d, len)
    }

    /// Canonical representative of the same expansion.
    pub fn canonical(&self) -> Self {
        let m = self.modulus;
        let p = m.get();
        if self.len == p {
            return Self {
                modulus: m,
                start: 0,
                difference: 1,
                len: p,
            };
        }
        if self.len == 1 {
            return Self {
                difference: 1,
                ..*self
            };
        }
        if self.difference <= m.max_difference() {
            *self
        } else {
            // walk the progression backwards from its last term
            Self {
                modulus: m,
                start: self.term(self.len - 1),
                difference: p - self.difference,
                len: self.len,
            }
        }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }
}

impl fmt::Display for ApDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}+j*{}, j<{}) mod {}",
            self.start, self.difference, self.len, self.modulus
        )
    }
}

impl Serialize for ApDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ApDescriptor", 3)?;
        st.serialize_field("start", &self.start)?;
        st.serialize_field("difference", &self.difference)?;
        st.serialize_field("length", &self.len)?;
        st.end()
    }
}
