use thiserror::Error;

#[derive(Debug, Error)]
pub enum WorkbenchError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("line {line}: {message}")]
    Row { line: u64, message: String },
    #[error("missing table {0}")]
    MissingTable(&'static str),
    #[error("no index on trips; run `index build` first")]
    MissingIndex,
    #[error(transparent)]
    Core(#[from] mobdb_core::Error),
    #[error(transparent)]
    Eval(#[from] crate::eval::EvalError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl WorkbenchError {
    /// Process exit code: 1 for usage errors, 2 for everything data-related.
    pub fn exit_code(&self) -> i32 {
        match self {
            WorkbenchError::Usage(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, WorkbenchError>;
