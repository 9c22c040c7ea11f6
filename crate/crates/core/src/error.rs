use thiserror::Error;

/// Errors raised by the library. Violations of internal invariants are
/// reported as [`Error::Internal`]; they always indicate a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid semigroup description: {0}")]
    InvalidSpec(String),

    #[error("unsupported input class: {0}")]
    Unsupported(String),

    #[error("point {0} does not lie in the cone")]
    NotInCone(String),

    #[error("point {0} does not lie in the semigroup")]
    NotInSemigroup(String),

    #[error("unknown face id {0}")]
    UnknownFace(usize),

    #[error("invalid character: {0}")]
    InvalidCharacter(String),

    #[error("functional {0} is not in the dual cone of the base face")]
    OutsideDualCone(String),

    #[error("face {lower} is not below face {upper}")]
    NotComparable { lower: usize, upper: usize },

    #[error("membership of {point} undecided after {nodes} search nodes (raise the search budget)")]
    Indeterminate { point: String, nodes: u64 },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
