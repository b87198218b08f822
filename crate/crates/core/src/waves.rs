//! Piecewise-constant parameter schedules.

use serde::{Deserialize, Serialize};

use crate::error::CoreError;

/// Piecewise-constant schedule over simulation days.
///
/// `values[0]` applies on days `[0, change_days[0])`, `values[i]` on
/// `[change_days[i-1], change_days[i])`, and the final value from the last
/// change day onward: segments are left-closed, right-open, so a new value
/// takes effect exactly on its change day.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveSchedule {
    change_days: Vec<u32>,
    values: Vec<f64>,
}

impl WaveSchedule {
    /// Builds a schedule. `values` needs exactly `change_days.len() + 1`
    /// entries and change days must be strictly increasing.
    pub fn new(change_days: Vec<u32>, values: Vec<f64>) -> Result<Self, CoreError> {
        if values.len() != change_days.len() + 1 {
            return Err(CoreError::InvalidSchedule(format!(
                "{} change days require {} segment values, got {}",
                change_days.len(),
                change_days.len() + 1,
                values.len()
            )));
        }
        if !change_days.windows(2).all(|w| w[0] < w[1]) {
            return Err(CoreError::InvalidSchedule(
                "change days must be strictly increasing".into(),
            ));
        }
        Ok(Self { change_days, values })
    }

    /// Schedule holding one value forever.
    pub fn constant(value: f64) -> Self {
        Self { change_days: Vec::new(), values: vec![value] }
    }

    /// Index of the segment in force on day `t`.
    pub fn segment_index(&self, t: u32) -> usize {
        self.change_days.partition_point(|&d| d <= t)
    }

    /// Value in force on day `t`.
    pub fn value_at(&self, t: u32) -> f64 {
        self.values[self.segment_index(t)]
    }

    pub fn segment_count(&self) -> usize {
        self.values.len()
    }

    pub fn change_days(&self) -> &[u32] {
        &self.change_days
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}
