//! Forecast scoring rules.

use crate::error::ForecastError;
use crate::quantiles::{level_index, ForecastQuantiles, NUM_LEVELS, QUANTILE_LEVELS};

/// Pinball (quantile) loss of predicting `predicted` for the `level`
/// quantile when `observed` materializes:
/// `max(level * e, (level - 1) * e)` with `e = observed - predicted`.
///
/// Panics if `level` is outside (0, 1).
pub fn pinball_loss(observed: f64, predicted: f64, level: f64) -> f64 {
    assert!(
        level > 0.0 && level < 1.0,
        "quantile level must lie strictly inside (0, 1)"
    );
    let e = observed - predicted;
    (level * e).max((level - 1.0) * e)
}

fn check_shapes(
    forecasts: &[ForecastQuantiles],
    observed: &[Vec<f64>],
) -> Result<(), ForecastError> {
    if forecasts.len() != observed.len() {
        return Err(ForecastError::ShapeMismatch(format!(
            "{} forecasts vs {} observation series",
            forecasts.len(),
            observed.len()
        )));
    }
    if forecasts.is_empty() {
        return Err(ForecastError::InvalidArgument(
            "empty forecast batch".into(),
        ));
    }
    for (i, (f, o)) in forecasts.iter().zip(observed).enumerate() {
        if f.horizon() != o.len() {
            return Err(ForecastError::ShapeMismatch(format!(
                "forecast {i}: horizon {} vs {} observations",
                f.horizon(),
                o.len()
            )));
        }
        if f.horizon() == 0 {
            return Err(ForecastError::InvalidArgument(format!(
                "forecast {i} has zero horizon"
            )));
        }
    }
    Ok(())
}

/// Pinball loss averaged over every (forecast, step, level) triple in the
/// batch. `observed[i]` must hold exactly `forecasts[i].horizon()` values.
pub fn mean_quantile_loss(
    forecasts: &[ForecastQuantiles],
    observed: &[Vec<f64>],
) -> Result<f64, ForecastError> {
    check_shapes(forecasts, observed)?;
    let mut total = 0.0;
    let mut count = 0usize;
    for (f, obs) in forecasts.iter().zip(observed) {
        for (step, &y) in obs.iter().enumerate() {
            for (li, &q) in QUANTILE_LEVELS.iter().enumerate() {
                total += pinball_loss(y, f.value(step, li), q);
            }
            count += NUM_LEVELS;
        }
    }
    Ok(total / count as f64)
}

/// Mean absolute error of the median forecast over the batch.
pub fn mae(forecasts: &[ForecastQuantiles], observed: &[Vec<f64>]) -> Result<f64, ForecastError> {
    check_shapes(forecasts, observed)?;
    let mut total = 0.0;
    let mut count = 0usize;
    for (f, obs) in forecasts.iter().zip(observed) {
        for (step, &y) in obs.iter().enumerate() {
            total += (y - f.median(step)).abs();
            count += 1;
        }
    }
    Ok(total / count as f64)
}

/// Mean absolute percentage error of the median forecast, as a fraction
/// (0.1 means 10%). Steps with `observed == 0` are skipped; the second
/// return value counts how many were. Returns `None` when every step was
/// skipped.
pub fn mape(
    forecasts: &[ForecastQuantiles],
    observed: &[Vec<f64>],
) -> Result<(Option<f64>, usize), ForecastError> {
    check_shapes(forecasts, observed)?;
    let mut total = 0.0;
    let mut count = 0usize;
    let mut skipped = 0usize;
    for (f, obs) in forecasts.iter().zip(observed) {
        for (step, &y) in obs.iter().enumerate() {
            if y == 0.0 {
                skipped += 1;
                continue;
            }
            total += ((y - f.median(step)) / y).abs();
            count += 1;
        }
    }
    if count == 0 {
        Ok((None, skipped))
    } else {
        Ok((Some(total / count as f64), skipped))
    }
}

/// The pair of reported quantile levels bounding the central interval of
/// mass `level` (supported: 0.5 and 0.9).
pub fn interval_bounds(level: f64) -> Result<(usize, usize), ForecastError> {
    let half = (1.0 - level) / 2.0;
    match (level_index(half), level_index(1.0 - half)) {
        (Some(lo), Some(hi)) => Ok((lo, hi)),
        _ => Err(ForecastError::InvalidArgument(format!(
            "no reported quantile pair brackets a central {level} interval"
        ))),
    }
}

/// Fraction of (forecast, step) pairs whose observation falls inside the
/// closed central interval of mass `level` (e.g. 0.5 uses the 25–75%
/// quantiles, 0.9 the 5–95%).
pub fn interval_coverage(
    forecasts: &[ForecastQuantiles],
    observed: &[Vec<f64>],
    level: f64,
) -> Result<f64, ForecastError> {
    check_shapes(forecasts, observed)?;
    let (lo, hi) = interval_bounds(level)?;
    let mut hits = 0usize;
    let mut count = 0usize;
    for (f, obs) in forecasts.iter().zip(observed) {
        for (step, &y) in obs.iter().enumerate() {
            if f.value(step, lo) <= y && y <= f.value(step, hi) {
                hits += 1;
            }
            count += 1;
        }
    }
    Ok(hits as f64 / count as f64)
}
