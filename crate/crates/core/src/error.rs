use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("format error: {0}")]
    Format(String),

    /// A point was traced through a Schreier vector whose orbit does not contain it.
    #[error("point {point} is not in the orbit of {root}")]
    NotInOrbit { point: usize, root: usize },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// Syntax error in the expression grammar; `pos` is a byte offset into the input.
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid expression: {0}")]
    InvalidExpression(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
