//! Error type shared by all modules of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("total degree {degree} exceeds the factorization degree cap {cap}")]
    DegreeCapExceeded { degree: u32, cap: u32 },
    #[error("invalid q: {0}")]
    QInvalid(String),
    #[error("pole of order > 1 at {place}; apply Hermite reduction first")]
    NotSimplePole { place: String },
    #[error("operator for {0} is not an automorphism")]
    UnsupportedOperator(String),
    #[error("not a WZ pair")]
    NotAWZPair,
    #[error("residue is not constant: {0}")]
    NonConstantResidue(String),
    #[error("structure violation: {0}")]
    StructureViolation(String),
    #[error("orbit search exceeded bound {0}")]
    SearchBoundExceeded(i64),
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("indices (m, n) must not both be zero")]
    InvalidIndices,
    #[error("side condition \u{3b8}_x^s(h) = \u{3b8}_y^t(h) fails")]
    NotInvariant,
    #[error("invalid component: {0}")]
    InvalidComponent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
