//! Quantile-grid forecast representation.

use crate::error::ForecastError;
use crate::stats::{quantile_type7, sorted_copy};

/// The quantile levels every forecaster reports, ascending.
pub const QUANTILE_LEVELS: [f64; 9] = [0.05, 0.1, 0.25, 0.4, 0.5, 0.6, 0.75, 0.9, 0.95];

/// Number of reported quantile levels.
pub const NUM_LEVELS: usize = QUANTILE_LEVELS.len();

/// Index of the median within [`QUANTILE_LEVELS`].
pub const MEDIAN_IDX: usize = 4;

/// Returns the index of `level` within [`QUANTILE_LEVELS`], if present.
pub fn level_index(level: f64) -> Option<usize> {
    QUANTILE_LEVELS
        .iter()
        .position(|&q| (q - level).abs() < 1e-12)
}

/// A multi-step quantile forecast: one row of [`NUM_LEVELS`] values per
/// horizon step, each row non-decreasing across levels.
///
/// Rows are made monotone at construction by sorting, which preserves
/// every per-level pinball loss or improves it (rearrangement inequality),
/// so downstream metrics never see a crossed quantile pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ForecastQuantiles {
    steps: Vec<[f64; NUM_LEVELS]>,
}

impl ForecastQuantiles {
    /// Builds a forecast from per-step rows, restoring monotonicity per
    /// row. Rejects non-finite values.
    pub fn from_rows(rows: Vec<[f64; NUM_LEVELS]>) -> Result<Self, ForecastError> {
        let mut steps = rows;
        for row in &mut steps {
            if row.iter().any(|v| !v.is_finite()) {
                return Err(ForecastError::InvalidArgument(
                    "non-finite forecast quantile".into(),
                ));
            }
            row.sort_by(|a, b| a.partial_cmp(b).unwrap());
        }
        Ok(Self { steps })
    }

    /// A degenerate forecast that puts every quantile of every step at
    /// `value` — the natural quantile extension of a point forecast.
    pub fn constant(value: f64, horizon: usize) -> Result<Self, ForecastError> {
        if !value.is_finite() {
            return Err(ForecastError::InvalidArgument(
                "non-finite forecast value".into(),
            ));
        }
        Ok(Self {
            steps: vec![[value; NUM_LEVELS]; horizon],
        })
    }

    /// Reduces per-step sample draws to the reporting grid with the
    /// interpolating quantile estimator. Each inner slice holds the
    /// simulated values for one horizon step.
    pub fn from_step_samples(samples: &[Vec<f64>]) -> Result<Self, ForecastError> {
        let mut steps = Vec::with_capacity(samples.len());
        for draws in samples {
            if draws.is_empty() {
                return Err(ForecastError::InvalidArgument(
                    "empty sample set for a horizon step".into(),
                ));
            }
            let sorted = sorted_copy(draws);
            let mut row = [0.0; NUM_LEVELS];
            for (i, &q) in QUANTILE_LEVELS.iter().enumerate() {
                row[i] = quantile_type7(&sorted, q);
            }
            steps.push(row);
        }
        Ok(Self { steps })
    }

    /// Number of horizon steps covered.
    pub fn horizon(&self) -> usize {
        self.steps.len()
    }

    /// The quantile row for `step` (0-based).
    pub fn row(&self, step: usize) -> &[f64; NUM_LEVELS] {
        &self.steps[step]
    }

    /// The forecast value at `step` for the level at `level_idx`.
    pub fn value(&self, step: usize, level_idx: usize) -> f64 {
        self.steps[step][level_idx]
    }

    /// Median (point) forecast at `step`.
    pub fn median(&self, step: usize) -> f64 {
        self.steps[step][MEDIAN_IDX]
    }

    /// Truncates to the first `horizon` steps.
    pub fn truncated(&self, horizon: usize) -> Self {
        Self {
            steps: self.steps[..horizon.min(self.steps.len())].to_vec(),
        }
    }
}
