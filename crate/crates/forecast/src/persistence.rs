//! Flat-line baseline: repeat the last observed value.

use crate::error::ForecastError;
use crate::quantiles::ForecastQuantiles;

/// Point persistence forecast: every quantile of every horizon step equals
/// the last context value. The sharpest possible forecast under the belief
/// that nothing changes — and a surprisingly strong baseline on slowly
/// varying surveillance series.
pub fn persistence_forecast(
    context: &[f64],
    horizon: usize,
) -> Result<ForecastQuantiles, ForecastError> {
    let &last = context.last().ok_or(ForecastError::EmptyContext)?;
    ForecastQuantiles::constant(last, horizon)
}
