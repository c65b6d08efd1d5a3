use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division error: {0}")]
    Division(String),
    #[error("incompatible coefficient fields or variable lists: {0}")]
    Field(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("singular matrix")]
    SingularMatrix,
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
