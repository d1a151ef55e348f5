//! Scalar types usable for the real-valued constants of theorem gates.

use std::fmt::{Debug, Display};

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Field-like scalar for comparing set sizes against real constants such as
/// `2.4·k − 3` or `p/35`.
///
/// `f32`/`f64` work, but only exact rationals compare without rounding at
/// the gate boundary.
pub trait GateScalar:
    Num + Signed + PartialOrd + Copy + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync
{
    fn from_count(n: u64) -> Self {
        Self::from_u64(n).expect("count fits in scalar")
    }

    /// Parses `2.4`, `35` or `12/5`.
    fn parse_constant(s: &str) -> Option<Self>;
}

impl GateScalar for f64 {
    fn parse_constant(s: &str) -> Option<Self> {
        match s.split_once('/') {
            Some((n, d)) => Some(n.trim().parse::<f64>().ok()? / d.trim().parse::<f64>().ok()?),
            None => s.trim().parse().ok(),
        }
    }
}

impl GateScalar for f32 {
    fn parse_constant(s: &str) -> Option<Self> {
        f64::parse_constant(s).map(|x| x as f32)
    }
}

impl GateScalar for Ratio<i64> {
    fn parse_constant(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            return (d != 0).then(|| Ratio::new(n, d));
        }
        let (neg, digits) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
        if int.is_empty() && frac.is_empty() {
            return None;
        }
        if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || frac.len() > 15 {
            return None;
        }
        let scale = 10i64.checked_pow(frac.len() as u32)?;
        let int_part: i64 = if int.is_empty() { 0 } else { int.parse().ok()? };
        let frac_part: i64 = if frac.is_empty() {
            0
        } else {
            frac.parse().ok()?
        };
        let numer = int_part.checked_mul(scale)?.checked_add(frac_part)?;
        Some(Ratio::new(if neg { -numer } else { numer }, scale))
    }
}
