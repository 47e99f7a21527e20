use thiserror::Error;

/// Errors produced by validation and evaluation across the crate.
///
/// Variants split into two broad classes: rejected inputs (dimensions,
/// parameter ranges, malformed configs) and failed numeric preconditions
/// (degenerate witness tuples, horizons too short for a requested shift).
#[derive(Debug, Error)]
pub enum Error {
    #[error("vector has dimension {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("tuple has {got} vectors, expected {expected}")]
    TupleLength { expected: usize, got: usize },

    #[error("non-finite entry at position {index}: {value}")]
    NonFinite { index: usize, value: f64 },

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown catalog entry: {0}")]
    UnknownCatalog(String),

    #[error("index {index} outside horizon 1..={horizon}")]
    BeyondHorizon { index: usize, horizon: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("degenerate witness tuple {index}: smallest singular value {sigma_min:.3e} below {threshold:.3e}")]
    DegenerateWitness {
        index: usize,
        sigma_min: f64,
        threshold: f64,
    },

    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
