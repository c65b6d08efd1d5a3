use cubic_algebra::AlgebraError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("witness error: {0}")]
    Witness(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("normalization impossible: {0}")]
    Normalization(String),
    #[error("singular matrix: {0}")]
    SingularMatrix(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
