//! Threshold-triggered intervention controller.

use serde::{Deserialize, Serialize};

/// Reactive intervention policy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InterventionConfig {
    pub enabled: bool,
    /// Daily-case level that arms activation when exceeded.
    pub on_threshold: f64,
    /// Daily-case level counting toward release while active.
    pub off_threshold: f64,
    /// Transmission multiplier on the contact (or vector) route while active.
    pub reduction: f64,
    /// Multiplier on the environmental route while active, when the scenario
    /// has one.
    pub water_reduction: Option<f64>,
    /// Days cases must stay above the on-threshold before activation; a dip
    /// below resets the count.
    pub trigger_delay: u32,
    /// Minimum days an activation lasts.
    pub min_duration: u32,
    /// Hard cap on activation length, if any.
    pub max_duration: Option<u32>,
    /// Consecutive below-off-threshold days required for release.
    pub consecutive_off_days: u32,
}

impl InterventionConfig {
    pub const fn disabled() -> Self {
        Self {
            enabled: false,
            on_threshold: 0.0,
            off_threshold: 0.0,
            reduction: 1.0,
            water_reduction: None,
            trigger_delay: 0,
            min_duration: 0,
            max_duration: None,
            consecutive_off_days: 0,
        }
    }
}

/// Controller memory; feed one day of cases at a time via [`step`].
///
/// [`step`]: InterventionState::step
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct InterventionState {
    days_over: u32,
    active: bool,
    active_days: u32,
    below_off: u32,
}

impl InterventionState {
    pub fn new() -> Self {
        Self::default()
    }

    /// Whether the intervention is currently in force (before today's count).
    pub fn active(&self) -> bool {
        self.active
    }

    /// Advances one day with today's case count; returns the updated flag.
    ///
    /// Release conditions are evaluated against the days already served, so
    /// an activation with `min_duration = d` reports active for exactly `d`
    /// days before it can release.
    pub fn step(&mut self, daily_cases: u64, config: &InterventionConfig) -> bool {
        if !config.enabled {
            return false;
        }
        let cases = daily_cases as f64;
        if self.active {
            let served_min = self.active_days >= config.min_duration;
            let calm = self.below_off >= config.consecutive_off_days;
            let expired = config.max_duration.is_some_and(|cap| self.active_days >= cap);
            if expired || (served_min && calm) {
                *self = Self::default();
            }
        }
        if self.active {
            self.active_days += 1;
            if cases < config.off_threshold {
                self.below_off += 1;
            } else {
                self.below_off = 0;
            }
        } else {
            if cases > config.on_threshold {
                self.days_over += 1;
            } else {
                self.days_over = 0;
            }
            if self.days_over > config.trigger_delay {
                self.active = true;
                self.active_days = 1;
                self.below_off = u32::from(cases < config.off_threshold);
            }
        }
        self.active
    }
}
