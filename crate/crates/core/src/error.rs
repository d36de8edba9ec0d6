use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("field mismatch: r = {0} vs r = {1}")]
    FieldMismatch(u32, u32),
    #[error("mode mismatch between skein elements")]
    ModeMismatch,
    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(i64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("singular system: {0}")]
    Singular(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
