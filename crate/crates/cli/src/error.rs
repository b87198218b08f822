//! Error taxonomy with stable process exit codes.

use std::fmt;

/// Exit code for a clean run.
pub const EXIT_OK: i32 = 0;
/// Exit code for invalid input: bad flags, malformed files, unknown ids.
pub const EXIT_INVALID: i32 = 2;
/// Exit code when preprocessing excludes the series from evaluation; the
/// verdict is reported rather than a crash.
pub const EXIT_EXCLUDED: i32 = 3;
/// Exit code for filesystem failures.
pub const EXIT_IO: i32 = 4;

/// A failed command, classified for its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Unusable arguments, configs, or file contents.
    Invalid(String),
    /// The input series failed an evaluation-entry rule.
    Excluded(String),
    /// An underlying read or write failed.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Excluded(_) => EXIT_EXCLUDED,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(msg) => write!(f, "error: {msg}"),
            CliError::Excluded(msg) => write!(f, "verdict: {msg}"),
            CliError::Io(msg) => write!(f, "i/o error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<epiforge_data::DataError> for CliError {
    fn from(err: epiforge_data::DataError) -> Self {
        match err {
            epiforge_data::DataError::Io { .. } => CliError::Io(err.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<epiforge_forecast::ForecastError> for CliError {
    fn from(err: epiforge_forecast::ForecastError) -> Self {
        match err {
            epiforge_forecast::ForecastError::Io(_) | epiforge_forecast::ForecastError::Csv(_) => {
                CliError::Io(err.to_string())
            }
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<epiforge_attrib::AttribError> for CliError {
    fn from(err: epiforge_attrib::AttribError) -> Self {
        CliError::Invalid(err.to_string())
    }
}

impl From<epiforge_core::CoreError> for CliError {
    fn from(err: epiforge_core::CoreError) -> Self {
        CliError::Invalid(err.to_string())
    }
}
