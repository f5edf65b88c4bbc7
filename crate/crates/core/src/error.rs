use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cocycle check failed: {0}")]
    Cocycle(String),
    #[error("unsupported for this family: {0}")]
    Unsupported(String),
    #[error("point is not on the model: residual {0:e}")]
    OffManifold(f64),
    #[error("not an element of the expected group: {0}")]
    NotInGroup(String),
    #[error("degenerate tangent space")]
    Degenerate,
}

pub type Result<T> = std::result::Result<T, Error>;
