use thiserror::Error;

/// Errors raised by set arithmetic, the Davenport transform and the harness.
///
/// A theorem whose conclusion fails is never an error; it is reported as a
/// counterexample verdict. Errors are reserved for malformed input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZpError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },
    #[error("operation requires a nonempty set")]
    EmptySet,
    #[error("operation requires at least {needed} members, got {got}")]
    TooFewMembers { needed: usize, got: usize },
    #[error("residue {value} out of range for p={p}")]
    ResidueOutOfRange { value: u64, p: u32 },
    #[error("duplicate member {0}")]
    DuplicateMember(u32),
    #[error("affine scale must be nonzero")]
    ZeroScale,
    #[error("common difference must be nonzero")]
    ZeroDifference,
    #[error("progression length {len} invalid for p={p}")]
    InvalidLength { len: u32, p: u32 },
    #[error("parse error: {0}")]
    Parse(String),

    // Davenport transform hypotheses.
    #[error("transform requires 0 in B")]
    ZeroNotInB,
    #[error("transform requires |B| >= 2, got {0}")]
    BTooSmall(usize),
    #[error("transform requires A+B != Z/pZ")]
    SumsetIsFull,
    #[error("{0} is not in E")]
    NotInExcess(u32),

    // Checker configuration.
    #[error("invalid gate constant: {0}")]
    InvalidGate(String),

    // Harness.
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error("unknown search criterion `{0}`")]
    UnknownCriterion(String),
    #[error("instance space of {size} exceeds the exhaustive limit of {limit}")]
    SpaceTooLarge { size: u128, limit: u128 },
    #[error("invalid run configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = ZpError> = std::result::Result<T, E>;
