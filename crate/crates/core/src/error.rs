use thiserror::Error;

/// Everything that can go wrong while building or combining values.
///
/// All variants describe rejected input; none of them signal a broken law.
/// Law failures are reported through [`crate::laws::RunReport`] instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid score {0}: scores are finite reals or -inf")]
    InvalidScore(f64),
    #[error("unit score {0} lies outside [0, 1]")]
    InvalidUnit(f64),
    #[error("exp bridge is only defined on [-inf, 0], got {0}")]
    PositiveExponent(f64),
    #[error("space must contain at least one point")]
    EmptySpace,
    #[error("duplicate point label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("values must cover the space exactly: {0}")]
    Coverage(String),
    #[error("objects live on different spaces")]
    SpaceMismatch,
    #[error("invalid point map: {0}")]
    InvalidMap(String),
    #[error("not normalized: max weight is {found}, expected {expected}")]
    Unnormalized { found: String, expected: String },
    #[error("positive weight {0} in a max-plus density")]
    PositiveWeight(f64),
    #[error("empty support")]
    EmptySupport,
    #[error("support entries {0} and {1} coincide")]
    DuplicateSupport(usize, usize),
    #[error("probe bound must be positive, got {0}")]
    NonPositiveBound(f64),
    #[error("capacity tables are limited to {max} points, got {found}")]
    SpaceTooLarge { found: usize, max: usize },
    #[error("capacity violates {0}")]
    InvalidCapacity(String),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("invalid document: {0}")]
    Document(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
