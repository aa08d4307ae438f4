use thiserror::Error;

/// Errors produced by the codec and transport-block chain.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A coding parameter set that cannot be realized (bad lifting size,
    /// oversized transport block, empty circular buffer, ...).
    #[error("invalid configuration: {0}")]
    Config(String),
    /// An argument that violates an operation's precondition.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// A bundled or user-supplied table failed validation.
    #[error("table format error: {0}")]
    Table(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn config_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

pub(crate) fn arg_err(msg: impl Into<String>) -> Error {
    Error::Argument(msg.into())
}
