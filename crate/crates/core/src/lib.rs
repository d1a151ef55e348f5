//! Sumsets and additive structure modulo a prime.
//!
//! The crate provides bit-parallel set arithmetic over `Z/pZ` ([`zp`]), the
//! Davenport transform and its inequalities ([`davenport`]), one checker per
//! classical theorem on small doubling ([`theorems`]), and an enumeration
//! and sampling harness that verifies those theorems over whole instance
//! spaces ([`harness`]).

pub mod davenport;
pub mod error;
pub mod harness;
pub mod scalar;
pub mod theorems;
pub mod zp;

pub use error::{Result, ZpError};
pub use scalar::GateScalar;
pub use theorems::{FreimanGate, TheoremId, TheoremVerdict};
pub use zp::{AffineMap, ApDescriptor, PrimeModulus, ResidueSet};

/// Exact rational used for configurable gate constants.
pub type Rational = num_rational::Ratio<i64>;

/// Freiman 2.4-style gate with exact rational constants (the default).
pub type RationalGate = FreimanGate<Rational>;

/// Freiman 2.4-style gate with floating-point constants.
pub type FloatGate = FreimanGate<f64>;
