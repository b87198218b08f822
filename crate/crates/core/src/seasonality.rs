//! Seasonal transmissibility forcing with annual phase jitter.

use rand::Rng;
use rand_distr::Normal;
use serde::{Deserialize, Serialize};

/// One cosine harmonic of the forcing curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Harmonic {
    pub amplitude: f64,
    /// Period in days.
    pub period: f64,
    /// Phase offset in days.
    pub phase: f64,
}

/// Seasonal forcing configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeasonalityConfig {
    pub enabled: bool,
    /// Factor returned when disabled; the resting level when enabled.
    pub baseline: f64,
    pub harmonics: Vec<Harmonic>,
    /// Annual phase jitter half-range in days: each simulated year draws a
    /// shared shift from `Uniform[-jitter, +jitter]`.
    pub annual_jitter_days: f64,
    /// Standard deviation of additive day-to-day noise.
    pub daily_noise_sd: f64,
}

impl SeasonalityConfig {
    /// Forcing pinned at `baseline`, no harmonics, no noise.
    pub fn disabled(baseline: f64) -> Self {
        Self {
            enabled: false,
            baseline,
            harmonics: Vec::new(),
            annual_jitter_days: 0.0,
            daily_noise_sd: 0.0,
        }
    }
}

/// Stateful factor generator; owns the current year's phase jitter.
#[derive(Debug, Clone)]
pub struct SeasonalForcing {
    config: SeasonalityConfig,
    year_jitter: f64,
}

impl SeasonalForcing {
    pub fn new(config: SeasonalityConfig) -> Self {
        Self { config, year_jitter: 0.0 }
    }

    /// Forcing factor for day `t`, clamped at zero.
    ///
    /// The phase jitter is resampled whenever `t` crosses a 365-day
    /// boundary, so callers must feed consecutive days.
    pub fn factor<R: Rng + ?Sized>(&mut self, t: u32, rng: &mut R) -> f64 {
        let cfg = &self.config;
        if !cfg.enabled {
            return cfg.baseline;
        }
        if t % 365 == 0 && cfg.annual_jitter_days > 0.0 {
            self.year_jitter = rng.random_range(-cfg.annual_jitter_days..=cfg.annual_jitter_days);
        }
        let mut s = cfg.baseline;
        for h in &cfg.harmonics {
            let angle = std::f64::consts::TAU * (t as f64 - h.phase + self.year_jitter) / h.period;
            s += h.amplitude * angle.cos();
        }
        if cfg.daily_noise_sd > 0.0 {
            s += rng.sample(Normal::new(0.0, cfg.daily_noise_sd).expect("finite noise sd"));
        }
        s.max(0.0)
    }
}
