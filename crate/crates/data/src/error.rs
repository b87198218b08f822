use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DataError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    /// Structurally invalid record or manifest content.
    #[error("{path}: {detail}")]
    Parse { path: PathBuf, detail: String },
    #[error("row {row}: {detail}")]
    Csv { row: usize, detail: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] epiforge_core::CoreError),
}

impl DataError {
    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> DataError {
        let path = path.into();
        move |source| DataError::Io { path, source }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, detail: impl Into<String>) -> DataError {
        DataError::Parse { path: path.into(), detail: detail.into() }
    }
}
