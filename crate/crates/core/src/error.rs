use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown quiver label {0:?}")]
    UnknownQuiver(String),
    #[error("malformed orientation: {0}")]
    Orientation(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unknown indecomposable: {0}")]
    UnknownIndecomposable(String),
    #[error("representation is not indecomposable")]
    Decomposable,
    #[error("not an almost complete silting object: {0}")]
    NotAlmostComplete(String),
    #[error("not a silting object: {0}")]
    NotSilting(String),
    #[error("index {index} out of range for {len} summands")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
