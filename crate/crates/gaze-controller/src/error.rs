use thiserror::Error;

#[derive(Debug, Error)]
pub enum GazeError {
    #[error("invalid behavior id {0} (expected 1-8)")]
    InvalidBehavior(u8),

    #[error("event at {timestamp} s is earlier than the previous event at {previous} s")]
    OutOfOrderEvent { timestamp: f64, previous: f64 },

    #[error("line {line}: {reason}")]
    MalformedScript { line: usize, reason: String },

    #[error("invalid PCM payload: {0}")]
    InvalidPcm(String),

    #[error("malformed frame CSV at line {line}: {reason}")]
    MalformedCsv { line: usize, reason: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, GazeError>;
