use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An index, step or parameter fell outside its admissible range.
    #[error("out of range: {0}")]
    Range(String),
    /// A configuration is inconsistent or incomplete.
    #[error("invalid configuration: {0}")]
    Config(String),
    /// Two sequences that must agree in length do not.
    #[error("shape mismatch: expected length {expected}, got {actual}")]
    Shape { expected: usize, actual: usize },
    /// Rejection sampling ran out of attempts.
    #[error("generation of {task} failed after {attempts} attempts: {predicate}")]
    Generation {
        task: String,
        attempts: usize,
        predicate: String,
    },
    /// An answer or log record does not match what the trial expects.
    #[error("validation failed: {0}")]
    Validation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
