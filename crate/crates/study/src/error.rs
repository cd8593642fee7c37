use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum StudyError {
    #[error(transparent)]
    Core(#[from] horizon_core::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("generating {task} failed: {source}")]
    Task {
        task: String,
        #[source]
        source: horizon_core::Error,
    },
    /// Every offending record, one message each.
    #[error("{} invalid record(s):\n  {}", .0.len(), .0.join("\n  "))]
    Invalid(Vec<String>),
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = StudyError> = std::result::Result<T, E>;

pub(crate) fn io_err(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> StudyError {
    let path = path.into();
    move |source| StudyError::Io { path, source }
}

pub(crate) fn json_err(path: impl Into<PathBuf>) -> impl FnOnce(serde_json::Error) -> StudyError {
    let path = path.into();
    move |source| StudyError::Json { path, source }
}
