use serde::{Serialize, Serializer};

use crate::error::{Result, ZpError};
use crate::scalar::GateScalar;

/// Hypothesis gate `|2A| <= constant·k − 3` and `k < p / bound_divisor`.
///
/// Generic over the scalar so the constants can be exact rationals (the
/// default) or floats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreimanGate<T> {
    constant: T,
    bound_divisor: T,
}

impl<T: GateScalar> FreimanGate<T> {
    pub fn new(constant: T, bound_divisor: T) -> Result<Self> {
        if constant <= T::from_count(2) {
            return Err(ZpError::InvalidGate(format!(
                "constant must exceed 2, got {constant}"
            )));
        }
        if bound_divisor <= T::zero() {
            return Err(ZpError::InvalidGate(format!(
                "bound divisor must be positive, got {bound_divisor}"
            )));
        }
        Ok(Self {
            constant,
            bound_divisor,
        })
    }

    /// Parses both constants from text such as `2.4` or `12/5`.
    pub fn parse(constant: &str, bound_divisor: &str) -> Result<Self> {
        let parse = |s: &str| {
            T::parse_constant(s).ok_or_else(|| ZpError::InvalidGate(format!("cannot parse `{s}`")))
        };
        Self::new(parse(constant)?, parse(bound_divisor)?)
    }

    /// `c = 2.4`, `k < p/35`.
    pub fn classic() -> Self {
        Self::parse("2.4", "35").expect("valid constants")
    }

    /// The weaker size bound `k < p/10.7`.
    pub fn relaxed() -> Self {
        Self::parse("2.4", "10.7").expect("valid constants")
    }

    /// The approximate bound `k < p/2.8`. Not a proven statement.
    pub fn approximate() -> Self {
        Self::parse("2.4", "2.8").expect("valid constants")
    }

    pub fn constant(&self) -> T {
        self.constant
    }

    pub fn bound_divisor(&self) -> T {
        self.bound_divisor
    }

    pub fn admits(&self, k: u64, doubled: u64, p: u64) -> bool {
        let k_t = T::from_count(k);
        T::from_count(doubled) <= self.constant * k_t - T::from_count(3)
            && k_t * self.bound_divisor < T::from_count(p)
    }
}

impl<T: GateScalar> Default for FreimanGate<T> {
    fn default() -> Self {
        Self::classic()
    }
}

impl<T: GateScalar> Serialize for FreimanGate<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FreimanGate", 2)?;
        st.serialize_field("constant", &self.constant.to_string())?;
        st.serialize_field("bound_divisor", &self.bound_divisor.to_string())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn rejects_bad_constants() {
        assert!(FreimanGate::<Rational>::parse("2", "35").is_err());
        assert!(FreimanGate::<Rational>::parse("2.4", "0").is_err());
        assert!(FreimanGate::<Rational>::parse("2.4", "-3").is_err());
        assert!(FreimanGate::<f64>::parse("1.5", "35").is_err());
        assert!(FreimanGate::<Rational>::parse("abc", "35").is_err());
    }

    #[test]
    fn exact_boundary() {
        let g = FreimanGate::<Rational>::classic();
        // k = 5: 2.4·5 − 3 = 9 exactly; p must exceed 175
        assert!(g.admits(5, 9, 211));
        assert!(!g.admits(5, 10, 211));
        assert!(!g.admits(5, 9, 175));
        assert!(g.admits(5, 9, 176));
        let f = FreimanGate::<f64>::classic();
        assert!(f.admits(5, 9, 211));
    }

    #[test]
    fn classic_gate_implies_3k3_gate() {
        let g = FreimanGate::<Rational>::classic();
        for p in [2u64, 3, 5, 7, 37, 211, 1009] {
            for k in 1..=p {
                for doubled in 1..=p {
                    if g.admits(k, doubled, p) {
                        assert!(
                            doubled + 3 < 3 * k && 4 * k < p + 6,
                            "p={p} k={k} 2A={doubled}"
                        );
                    }
                }
            }
        }
    }
}
