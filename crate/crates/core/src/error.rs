use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{what} exceeded cap {cap}")]
    CapExceeded { what: String, cap: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("negative entry: {0}")]
    Negative(String),
    #[error("missing generator matrix for {0}")]
    MissingGenerator(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("residue mismatch: {0}")]
    ResidueMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
