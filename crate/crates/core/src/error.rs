use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument violates an operation's precondition.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The request is well formed but exceeds a materialization or search cap.
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
