//! Quantile forecasting and rolling-origin evaluation for surveillance
//! series: scoring rules, a persistence baseline, and an automatically
//! selected exponential-smoothing family.

pub mod error;
pub mod ets;
pub mod harness;
pub mod metrics;
pub mod optim;
pub mod persistence;
pub mod quantiles;
pub mod stats;

pub use error::ForecastError;
pub use ets::{
    ets_filter, ets_fit, ets_fit_fixed, ets_forecast, ets_point_forecast, ets_select, ErrorKind,
    EtsFit, EtsParams, EtsSpec, EtsState, SeasonalKind, TrendKind,
};
pub use harness::{
    rolling_harness, EtsForecaster, EvalReport, Forecaster, HarnessOptions, PersistenceForecaster,
    TaskRecord,
};
pub use metrics::{interval_bounds, interval_coverage, mae, mape, mean_quantile_loss, pinball_loss};
pub use persistence::persistence_forecast;
pub use quantiles::{level_index, ForecastQuantiles, MEDIAN_IDX, NUM_LEVELS, QUANTILE_LEVELS};
