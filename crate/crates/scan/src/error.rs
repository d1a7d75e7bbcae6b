use thiserror::Error;

/// Failures of the scan front end. Per-point numerical failures are not
/// errors at this level; they end up in the `error` column.
#[derive(Debug, Error)]
pub enum ScanError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] twinfock::Error),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("config file: {0}")]
    Config(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T, ScanError> {
    Err(ScanError::Usage(msg.into()))
}

pub(crate) fn io_error(path: &std::path::Path) -> impl FnOnce(std::io::Error) -> ScanError + '_ {
    move |source| ScanError::Io { path: path.display().to_string(), source }
}
