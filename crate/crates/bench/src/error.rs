use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Offload(#[from] decodex_offload::OffloadError),
    #[error(transparent)]
    Codec(#[from] decodex_core::Error),
    #[error("config file: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("I/O: {0}")]
    Io(#[from] std::io::Error),
    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed record: {0}")]
    Parse(String),
}

impl BenchError {
    /// Whether the error stems from invalid user configuration.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            BenchError::Config(_)
                | BenchError::Toml(_)
                | BenchError::Offload(
                    decodex_offload::OffloadError::Config(_) | decodex_offload::OffloadError::Toml(_)
                )
                | BenchError::Codec(decodex_core::Error::Config(_) | decodex_core::Error::Argument(_))
        )
    }
}

pub type Result<T> = std::result::Result<T, BenchError>;

pub(crate) fn config_err(msg: impl Into<String>) -> BenchError {
    BenchError::Config(msg.into())
}
