use thiserror::Error;

/// Errors raised while building or running scenario components.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("invalid wave schedule: {0}")]
    InvalidSchedule(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("population is empty")]
    EmptyPopulation,
}
