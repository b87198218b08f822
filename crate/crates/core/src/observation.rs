//! Surveillance distortion pipeline.
//!
//! True counts pass, in order, through multiplicative noise, ramping
//! underreporting, laboratory batch errors, day-specific reporting delays,
//! and weekday effects. Hospitalization and death channels receive only the
//! noise and delay stages. Every stage is optional except the noise stage,
//! whose sd may simply be zero.

use rand::Rng;
use rand_distr::{Distribution, LogNormal};
use serde::{Deserialize, Serialize};

use crate::draws::{binomial, multinomial_scatter, poisson};
use crate::outcomes::Outcomes;
use crate::series::{ObservedSeries, Resolution};
use crate::trajectory::TrueTrajectory;

/// Logistic ramp of the fraction of true cases that get reported.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReportingConfig {
    /// Reporting rate at the start of surveillance.
    pub initial_rate: f64,
    /// Asymptotic reporting rate once surveillance matures.
    pub max_rate: f64,
    /// Days until surveillance effectively reaches the asymptote.
    pub days_to_max: f64,
    /// Logistic steepness.
    pub steepness: f64,
}

/// Laboratory batching errors: occasional bad batches lose a fraction of
/// their counts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LabConfig {
    /// Mean batch size (Poisson).
    pub batch_mean: f64,
    /// Probability a batch is processed badly.
    pub bad_batch_rate: f64,
    /// Fraction retained by a bad batch, drawn per batch from this range.
    pub accuracy_min: f64,
    pub accuracy_max: f64,
}

/// Reporting delay whose support tightens as surveillance matures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DelayConfig {
    pub initial_max_delay: u32,
    pub final_max_delay: u32,
    pub initial_alpha: f64,
    pub final_alpha: f64,
    /// Days over which max delay and alpha interpolate from initial to final.
    pub ramp_days: f64,
}

/// Day-of-week reporting factors, `factors[0]` = Monday.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeekdayConfig {
    pub factors: [f64; 7],
    /// Weekday of simulation day 0 (0 = Monday).
    pub start_weekday: u8,
}

/// Full observation-pipeline configuration; `None` stages are skipped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservationConfig {
    /// Sd of the log-normal multiplicative noise applied to every channel.
    pub mult_noise_sd: f64,
    /// Negative-binomial dispersion recorded for downstream consumers; the
    /// pipeline itself never draws from it.
    pub overdispersion: f64,
    pub reporting: Option<ReportingConfig>,
    pub lab: Option<LabConfig>,
    pub delays: Option<DelayConfig>,
    pub weekday: Option<WeekdayConfig>,
}

impl ObservationConfig {
    /// Pipeline that returns true counts unchanged.
    pub fn transparent() -> Self {
        Self {
            mult_noise_sd: 0.0,
            overdispersion: 0.0,
            reporting: None,
            lab: None,
            delays: None,
            weekday: None,
        }
    }
}

/// Scales each count by `LogNormal(0, sd^2)`, rounded, floored at zero.
pub fn apply_mult_noise<R: Rng + ?Sized>(series: &mut [u64], sd: f64, rng: &mut R) {
    if sd <= 0.0 {
        return;
    }
    let noise = LogNormal::new(0.0, sd).expect("finite noise sd");
    for c in series.iter_mut() {
        let scaled = (*c as f64) * noise.sample(rng);
        *c = scaled.round().max(0.0) as u64;
    }
}

/// Reporting rate on day `t`: a logistic ramp from `initial_rate` toward
/// `max_rate`, centered halfway through `days_to_max`.
pub fn reporting_rate(t: f64, config: &ReportingConfig) -> f64 {
    let t_mid = config.days_to_max / 2.0;
    if t_mid <= 0.0 {
        return config.max_rate;
    }
    let u = (t - t_mid) / t_mid;
    config.initial_rate
        + (config.max_rate - config.initial_rate) / (1.0 + (-config.steepness * u).exp())
}

/// Binomial thinning by the reporting rate of each absolute day; the
/// series' first entry is absolute day `first_day`.
fn underreport_from<R: Rng + ?Sized>(
    series: &mut [u64],
    config: &ReportingConfig,
    first_day: usize,
    rng: &mut R,
) {
    for (t, c) in series.iter_mut().enumerate() {
        let rate = reporting_rate((first_day + t) as f64, config).clamp(0.0, 1.0);
        *c = binomial(*c, rate, rng);
    }
}

/// Binomial thinning by the day-specific reporting rate.
pub fn apply_underreporting<R: Rng + ?Sized>(
    series: &mut [u64],
    config: &ReportingConfig,
    rng: &mut R,
) {
    underreport_from(series, config, 0, rng);
}

/// Splits each day's counts into Poisson-sized batches; bad batches keep
/// only a uniform fraction of their counts.
pub fn apply_lab_noise<R: Rng + ?Sized>(series: &mut [u64], config: &LabConfig, rng: &mut R) {
    for c in series.iter_mut() {
        let mut remaining = *c;
        let mut kept = 0u64;
        while remaining > 0 {
            let size = poisson(config.batch_mean, rng).max(1).min(remaining);
            kept += if rng.random_bool(config.bad_batch_rate.clamp(0.0, 1.0)) {
                let accuracy = if config.accuracy_max > config.accuracy_min {
                    rng.random_range(config.accuracy_min..=config.accuracy_max)
                } else {
                    config.accuracy_min
                };
                binomial(size, accuracy.clamp(0.0, 1.0), rng)
            } else {
                size
            };
            remaining -= size;
        }
        *c = kept;
    }
}

/// Normalized delay weights proportional to `alpha / (d + 1)` over
/// `0..=max_delay`.
pub fn delay_weights(alpha: f64, max_delay: u32) -> Vec<f64> {
    let mut w: Vec<f64> = (0..=max_delay).map(|d| alpha / f64::from(d + 1)).collect();
    let total: f64 = w.iter().sum();
    for x in &mut w {
        *x /= total;
    }
    w
}

/// Scatters counts forward by absolute-day-specific reporting delays.
///
/// The series' first entry is absolute day `first_day`; delays truncate at
/// absolute day `horizon - 1` (the end of the underlying full series) and
/// renormalize there, exactly as a full-series pass would. Counts delayed
/// past the end of the slice are dropped: they land beyond it, not beyond
/// the horizon.
fn delays_from<R: Rng + ?Sized>(
    series: &mut Vec<u64>,
    config: &DelayConfig,
    first_day: usize,
    horizon: usize,
    rng: &mut R,
) {
    let len = series.len();
    if len == 0 {
        return;
    }
    let mut out = vec![0u64; len];
    let mut pmf: Vec<f64> = Vec::with_capacity(config.initial_max_delay.max(config.final_max_delay) as usize + 1);
    for (t, &count) in series.iter().enumerate() {
        if count == 0 {
            continue;
        }
        let day = first_day + t;
        let frac = if config.ramp_days > 0.0 {
            (day as f64 / config.ramp_days).min(1.0)
        } else {
            1.0
        };
        let max_delay = f64::from(config.initial_max_delay)
            + frac * (f64::from(config.final_max_delay) - f64::from(config.initial_max_delay));
        let alpha = config.initial_alpha + frac * (config.final_alpha - config.initial_alpha);
        let capped = (max_delay.round() as usize).min(horizon.saturating_sub(day + 1));
        pmf.clear();
        pmf.extend((0..=capped).map(|d| alpha / (d + 1) as f64));
        let total: f64 = pmf.iter().sum();
        for p in &mut pmf {
            *p /= total;
        }
        multinomial_scatter(count, &pmf, rng, |d, x| {
            if t + d < len {
                out[t + d] += x;
            }
        });
    }
    *series = out;
}

/// Scatters each day's counts forward by a day-specific reporting delay.
///
/// The max delay (rounded) and alpha interpolate linearly from their initial
/// to final values over `ramp_days`. Delays are truncated at the end of the
/// series and renormalized, so the total count is conserved exactly.
pub fn apply_reporting_delays<R: Rng + ?Sized>(
    series: &mut Vec<u64>,
    config: &DelayConfig,
    rng: &mut R,
) {
    let horizon = series.len();
    delays_from(series, config, 0, horizon, rng);
}

/// Weekday factors by absolute day; the series' first entry is absolute day
/// `first_day`.
fn weekday_from(series: &mut [u64], config: &WeekdayConfig, first_day: usize) {
    for (t, c) in series.iter_mut().enumerate() {
        let factor = config.factors[(config.start_weekday as usize + first_day + t) % 7];
        *c = ((*c as f64) * factor).round().max(0.0) as u64;
    }
}

/// Multiplies each day by its weekday factor, rounded, floored at zero.
pub fn apply_weekday(series: &mut [u64], config: &WeekdayConfig) {
    weekday_from(series, config, 0);
}

/// Observed slice of one scenario's channels, produced by `observe_window`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowObservation {
    pub cases: Vec<u64>,
    pub hospitalizations: Vec<u64>,
    pub deaths: Vec<u64>,
}

/// Runs the pipeline over a slice and emits absolute days `[emit_start,
/// emit_start + emit_len)`.
///
/// `true_cases` and `outcomes` cover absolute days `[slice_start,
/// slice_start + len)`; the slice must reach back at least the maximum
/// dispatch delay before `emit_start` (or to day 0) so that delayed reports
/// landing in the emitted range have their source days available. `horizon`
/// is the underlying full-series length: dispatch delays truncate and
/// renormalize there, never at the slice edge, so emitted counts are
/// distributed exactly as the matching span of a full-series pass.
pub fn observe_window<R: Rng + ?Sized>(
    true_cases: &[u64],
    outcomes: &Outcomes,
    slice_start: usize,
    emit_start: usize,
    emit_len: usize,
    horizon: usize,
    config: &ObservationConfig,
    rng: &mut R,
) -> WindowObservation {
    let emit_end = emit_start + emit_len;
    assert!(emit_start >= slice_start, "emit range starts before the slice");
    assert!(
        emit_end <= slice_start + true_cases.len(),
        "emit range runs past the slice"
    );
    assert!(emit_end <= horizon, "emit range runs past the series horizon");
    assert_eq!(true_cases.len(), outcomes.hospitalizations.len());
    assert_eq!(true_cases.len(), outcomes.deaths.len());

    let mut cases = true_cases.to_vec();
    apply_mult_noise(&mut cases, config.mult_noise_sd, rng);
    if let Some(reporting) = &config.reporting {
        underreport_from(&mut cases, reporting, slice_start, rng);
    }
    if let Some(lab) = &config.lab {
        apply_lab_noise(&mut cases, lab, rng);
    }
    if let Some(delays) = &config.delays {
        delays_from(&mut cases, delays, slice_start, horizon, rng);
    }
    if let Some(weekday) = &config.weekday {
        weekday_from(&mut cases, weekday, slice_start);
    }

    let mut hosp = outcomes.hospitalizations.clone();
    apply_mult_noise(&mut hosp, config.mult_noise_sd, rng);
    if let Some(delays) = &config.delays {
        delays_from(&mut hosp, delays, slice_start, horizon, rng);
    }

    let mut deaths = outcomes.deaths.clone();
    apply_mult_noise(&mut deaths, config.mult_noise_sd, rng);
    if let Some(delays) = &config.delays {
        delays_from(&mut deaths, delays, slice_start, horizon, rng);
    }

    let lo = emit_start - slice_start;
    WindowObservation {
        cases: cases[lo..lo + emit_len].to_vec(),
        hospitalizations: hosp[lo..lo + emit_len].to_vec(),
        deaths: deaths[lo..lo + emit_len].to_vec(),
    }
}

/// Runs the full pipeline over one trajectory's channels.
pub fn observe<R: Rng + ?Sized>(
    trajectory: &TrueTrajectory,
    outcomes: &Outcomes,
    config: &ObservationConfig,
    rng: &mut R,
) -> ObservedSeries {
    let len = trajectory.new_symptomatic.len();
    let window = observe_window(
        &trajectory.new_symptomatic,
        outcomes,
        0,
        0,
        len,
        len,
        config,
        rng,
    );
    ObservedSeries {
        resolution: Resolution::Daily,
        population: trajectory.population,
        cases: Some(window.cases),
        hospitalizations: Some(window.hospitalizations),
        deaths: Some(window.deaths),
        missing: None,
    }
}
