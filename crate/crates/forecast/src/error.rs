use thiserror::Error;

/// Errors surfaced by forecasting models and the evaluation harness.
#[derive(Debug, Error)]
pub enum ForecastError {
    /// A forecaster was asked to produce output from an empty context.
    #[error("forecast context is empty")]
    EmptyContext,

    /// A series is shorter than the model's minimum fitting length.
    #[error("series too short: need at least {needed} observations, got {got}")]
    TooShort { needed: usize, got: usize },

    /// Paired inputs disagree on length or horizon.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// An argument is outside its documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A model specification cannot be fit to this series (e.g. a
    /// multiplicative component over non-positive data, or a filter pass
    /// that left the admissible region).
    #[error("model infeasible: {0}")]
    Infeasible(String),

    /// Every candidate specification was infeasible for the series.
    #[error("no feasible model specification for this series")]
    NoFeasibleModel,

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}
