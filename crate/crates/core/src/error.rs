use thiserror::Error;

/// Errors raised at the public entry points. Internal recursion never fails:
/// out-of-dimension brackets simply evaluate to zero there.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension: sum of psi-powers must be n-1")]
    BracketDimension,

    #[error("dimension: sum of psi-powers must be {expected}, got {got}")]
    Dimension { expected: u64, got: u64 },

    #[error("multiplicity must be a positive integer")]
    NonPositiveMultiplicity,

    #[error("psi-power at point {index} must be positive")]
    NonPositivePsi { index: usize },

    #[error("bracket must have at least one part")]
    EmptyBracket,

    #[error("genus must be at least 1")]
    Genus,

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("coefficient column {index} has p + c = 0")]
    CoeffHypothesis { index: usize },

    #[error("invalid reduction spec: {0}")]
    ReductionSpec(String),

    #[error("cannot parse {0}")]
    Parse(String),

    #[error("invalid range: {0}")]
    Range(String),

    #[error("path oracle is limited to m <= 5 and coordinates in [0, 6]")]
    OracleScale,

    #[error("subset must be nonempty and within 1..={m}")]
    Subset { m: usize },

    #[error("cache line {line}: {reason}")]
    Cache { line: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
