use thiserror::Error;

#[derive(Debug, Error)]
pub enum OffloadError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Codec(#[from] decodex_core::Error),
    #[error("model file: {0}")]
    Toml(#[from] toml::de::Error),
}

pub type Result<T> = std::result::Result<T, OffloadError>;

pub(crate) fn config_err(msg: impl Into<String>) -> OffloadError {
    OffloadError::Config(msg.into())
}
