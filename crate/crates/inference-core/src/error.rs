use thiserror::Error;

/// Errors raised by distribution constructors and inference operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum InferenceError {
    #[error("non-finite value {value} at index {index}")]
    NonFinite { index: usize, value: f64 },

    #[error("negative probability {value} at index {index}")]
    NegativeProbability { index: usize, value: f64 },

    #[error("probabilities sum to {sum}, expected 1 within {tolerance}")]
    NotNormalized { sum: f64, tolerance: f64 },

    #[error("column {column} sums to {sum}, expected 1 within {tolerance}")]
    ColumnNotStochastic {
        column: usize,
        sum: f64,
        tolerance: f64,
    },

    #[error("precision must be non-negative, got {0}")]
    NegativePrecision(f64),

    #[error("outcome index {index} out of range ({outcomes} outcomes)")]
    OutcomeOutOfRange { index: usize, outcomes: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("observation has zero probability under every state supported by the prior")]
    DegenerateEvidence,

    #[error("empty distribution")]
    Empty,
}

pub type Result<T> = std::result::Result<T, InferenceError>;
