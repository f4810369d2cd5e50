use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("genus mismatch: {left} vs {right}")]
    GenusMismatch { left: usize, right: usize },

    #[error("genus must be at least {min}, got {got}")]
    GenusTooSmall { min: usize, got: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("generator index {index} out of range (allowed 1..={max})")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("matrix is not symplectic")]
    NotSymplectic,

    #[error("twist mismatch: {0}")]
    TwistMismatch(String),

    #[error("matrix is not invertible by unit pivoting")]
    NotInvertible,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("intertwiner space has dimension {dimension}, expected 1")]
    IntertwinerDimension { dimension: usize },

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
