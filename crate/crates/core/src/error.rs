use thiserror::Error;

use crate::group::GroupError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("invalid probability vector: {0}")]
    InvalidProbability(String),
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("enumeration budget of {limit} exceeded")]
    BudgetExceeded { limit: u64 },
    #[error("certificate conflict: {0}")]
    Conflict(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
