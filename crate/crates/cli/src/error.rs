use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Missing or conflicting inputs. Exit status 2.
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Compute(#[from] jacobi_spectral::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("invalid config: {0}")]
    Config(#[from] serde_json::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}
