use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point set is empty")]
    EmptySet,

    #[error("point is not in the convex hull of the given set")]
    NotInHull,

    #[error("point {0} is not a member of the discrete set")]
    NotInSet(String),

    #[error("duplicate point {0}")]
    DuplicatePoint(String),

    #[error("operation requires an enumerable set (lattice or lattice difference)")]
    NotEnumerable,

    #[error("invalid lattice basis: {0}")]
    InvalidBasis(String),

    #[error("sublattice {index} is not contained in the ambient lattice")]
    NotSublattice { index: usize },

    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded { what: &'static str, size: u128, cap: u128 },

    #[error("no applicable bound formula: {0}")]
    NoApplicableFormula(String),

    #[error("arithmetic overflow evaluating {0}")]
    Overflow(&'static str),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("verification failure: {0}")]
    VerificationFailure(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
