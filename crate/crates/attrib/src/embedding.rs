//! Deterministic trajectory embedding.
//!
//! The reference pipeline this toolkit mirrors derives its similarity
//! space from a trained network's internal representation. That latent
//! space is out of scope here; in its place stands an explicit,
//! documented feature map over weekly surveillance counts. This is a
//! deliberate fidelity gap: retrieval, aggregation, and validation
//! mechanics are exercised for real, but similarity judgments reflect
//! these hand-picked summaries, not a learned notion of dynamical
//! resemblance.
//!
//! All features are computed on per-capita (and mostly log-scale) values,
//! so the embedding is invariant to population size by construction.

use crate::error::AttribError;

/// Number of features in a [`TrajectoryEmbedding`].
pub const EMBEDDING_DIM: usize = 30;

/// Minimum series length (weeks) the embedding accepts.
pub const MIN_WEEKS: usize = 8;

/// Floor added to per-capita rates before taking logs.
const LOG_FLOOR: f64 = 1e-9;

/// Weekly surveillance counts for one trajectory. Cases are required;
/// hospitalization and death channels are optional and must match the
/// case series length when present.
#[derive(Debug, Clone)]
pub struct EmbeddingInput<'a> {
    pub weekly_cases: &'a [f64],
    pub weekly_hospitalizations: Option<&'a [f64]>,
    pub weekly_deaths: Option<&'a [f64]>,
    pub population: f64,
}

/// Fixed-length summary of a trajectory's dynamics. Raw (unstandardized)
/// feature values; the library index standardizes per feature before
/// measuring distances.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryEmbedding {
    pub features: [f64; EMBEDDING_DIM],
}

/// Human-readable feature names, index-aligned with
/// [`TrajectoryEmbedding::features`].
pub const FEATURE_NAMES: [&str; EMBEDDING_DIM] = [
    "log_rate_mean",
    "log_rate_max",
    "log_rate_q25",
    "log_rate_q50",
    "log_rate_q75",
    "log_rate_q90",
    "growth_mean",
    "growth_sd",
    "growth_q10",
    "growth_q90",
    "growth_min",
    "growth_max",
    "peak_count",
    "peak_spacing",
    "peak_second_ratio",
    "peak_position",
    "acf_lag1",
    "acf_lag2",
    "acf_lag4",
    "acf_lag8",
    "acf_lag13",
    "acf_lag26",
    "acf_lag52",
    "spectral_annual",
    "spectral_semiannual",
    "spectral_quarterly",
    "death_case_ratio",
    "hosp_case_ratio",
    "death_peak_lag",
    "hosp_peak_lag",
];

/// Interpolated quantile of an ascending slice (`q` in [0, 1]).
fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let h = (n - 1) as f64 * q;
    let lo = h.floor() as usize;
    if lo + 1 >= n {
        return sorted[n - 1];
    }
    sorted[lo] + (h - lo as f64) * (sorted[lo + 1] - sorted[lo])
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn sd(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let m = mean(values);
    (values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / values.len() as f64).sqrt()
}

/// Autocorrelation of `z` at `lag`; 0 when the lag is too long or the
/// series has no variance.
fn autocorrelation(z: &[f64], lag: usize) -> f64 {
    let n = z.len();
    if lag >= n {
        return 0.0;
    }
    let m = mean(z);
    let denom: f64 = z.iter().map(|v| (v - m) * (v - m)).sum();
    if denom < 1e-300 {
        return 0.0;
    }
    let num: f64 = (0..n - lag).map(|t| (z[t] - m) * (z[t + lag] - m)).sum();
    num / denom
}

/// Indices of local maxima at or above half the global maximum, at least
/// two weeks apart (the higher of a close pair survives).
fn peak_indices(r: &[f64]) -> Vec<usize> {
    let global = r.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if global <= 0.0 {
        return Vec::new();
    }
    let threshold = 0.5 * global;
    let n = r.len();
    let mut candidates = Vec::new();
    for t in 0..n {
        let left = if t == 0 { f64::NEG_INFINITY } else { r[t - 1] };
        let right = if t + 1 == n { f64::NEG_INFINITY } else { r[t + 1] };
        // Strictly above the right neighbor so plateaus yield one peak.
        if r[t] >= left && r[t] > right && r[t] >= threshold {
            candidates.push(t);
        }
    }
    let mut peaks: Vec<usize> = Vec::new();
    for t in candidates {
        match peaks.last() {
            Some(&prev) if t - prev < 2 => {
                if r[t] > r[prev] {
                    *peaks.last_mut().unwrap() = t;
                }
            }
            _ => peaks.push(t),
        }
    }
    peaks
}

/// Fraction of (non-constant) spectral power falling on periods inside
/// `[lo, hi]` weeks, by direct discrete Fourier transform of the centered
/// series. Quadratic in the series length, which is fine at surveillance
/// scales (a few hundred weeks).
fn spectral_band_fraction(z: &[f64], lo: f64, hi: f64) -> f64 {
    let n = z.len();
    let m = mean(z);
    let mut total = 0.0;
    let mut band = 0.0;
    for k in 1..=n / 2 {
        let (mut re, mut im) = (0.0, 0.0);
        for (t, &v) in z.iter().enumerate() {
            let angle = -2.0 * std::f64::consts::PI * (k * t) as f64 / n as f64;
            re += (v - m) * angle.cos();
            im += (v - m) * angle.sin();
        }
        let power = re * re + im * im;
        total += power;
        let period = n as f64 / k as f64;
        if period >= lo && period <= hi {
            band += power;
        }
    }
    if total < 1e-300 {
        0.0
    } else {
        band / total
    }
}

fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}

fn validate_channel(
    name: &str,
    channel: Option<&[f64]>,
    expected: usize,
) -> Result<(), AttribError> {
    if let Some(values) = channel {
        if values.len() != expected {
            return Err(AttribError::ShapeMismatch(format!(
                "{name} channel has {} weeks, cases have {expected}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(AttribError::InvalidArgument(format!(
                "{name} channel contains negative or non-finite values"
            )));
        }
    }
    Ok(())
}

/// Embeds a weekly trajectory into [`EMBEDDING_DIM`] summary features:
/// log per-capita level statistics, week-over-week log-growth statistics,
/// peak shape, autocorrelation at epidemiologically salient lags,
/// spectral energy in annual/semiannual/quarterly bands, and cross-channel
/// severity ratios (zero when a channel is absent).
pub fn embed(input: &EmbeddingInput) -> Result<TrajectoryEmbedding, AttribError> {
    let cases = input.weekly_cases;
    if cases.len() < MIN_WEEKS {
        return Err(AttribError::TooShort {
            needed: MIN_WEEKS,
            got: cases.len(),
        });
    }
    if !(input.population.is_finite() && input.population > 0.0) {
        return Err(AttribError::InvalidArgument(
            "population must be positive and finite".into(),
        ));
    }
    if cases.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(AttribError::InvalidArgument(
            "case channel contains negative or non-finite values".into(),
        ));
    }
    validate_channel("hospitalization", input.weekly_hospitalizations, cases.len())?;
    validate_channel("death", input.weekly_deaths, cases.len())?;

    let n = cases.len();
    let r: Vec<f64> = cases.iter().map(|&c| c / input.population).collect();
    let z: Vec<f64> = r.iter().map(|&v| (v + LOG_FLOOR).ln()).collect();
    let mut sorted_z = z.clone();
    sorted_z.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut f = [0.0; EMBEDDING_DIM];
    f[0] = mean(&z);
    f[1] = sorted_z[n - 1];
    f[2] = quantile_sorted(&sorted_z, 0.25);
    f[3] = quantile_sorted(&sorted_z, 0.50);
    f[4] = quantile_sorted(&sorted_z, 0.75);
    f[5] = quantile_sorted(&sorted_z, 0.90);

    let growth: Vec<f64> = z.windows(2).map(|w| w[1] - w[0]).collect();
    let mut sorted_g = growth.clone();
    sorted_g.sort_by(|a, b| a.partial_cmp(b).unwrap());
    f[6] = mean(&growth);
    f[7] = sd(&growth);
    f[8] = quantile_sorted(&sorted_g, 0.10);
    f[9] = quantile_sorted(&sorted_g, 0.90);
    f[10] = sorted_g[0];
    f[11] = sorted_g[sorted_g.len() - 1];

    let peaks = peak_indices(&r);
    f[12] = peaks.len() as f64;
    f[13] = if peaks.len() >= 2 {
        let gaps: Vec<f64> = peaks.windows(2).map(|w| (w[1] - w[0]) as f64).collect();
        mean(&gaps) / 52.0
    } else {
        0.0
    };
    f[14] = if peaks.len() >= 2 {
        let mut heights: Vec<f64> = peaks.iter().map(|&t| r[t]).collect();
        heights.sort_by(|a, b| b.partial_cmp(a).unwrap());
        if heights[0] > 0.0 {
            heights[1] / heights[0]
        } else {
            0.0
        }
    } else {
        0.0
    };
    f[15] = argmax(&r) as f64 / n as f64;

    for (i, lag) in [1usize, 2, 4, 8, 13, 26, 52].into_iter().enumerate() {
        f[16 + i] = autocorrelation(&z, lag);
    }

    f[23] = spectral_band_fraction(&z, 42.0, 62.0);
    f[24] = spectral_band_fraction(&z, 22.0, 32.0);
    f[25] = spectral_band_fraction(&z, 10.0, 16.0);

    let total_cases: f64 = cases.iter().sum();
    let ratio_to_cases = |channel: Option<&[f64]>| -> f64 {
        match channel {
            Some(values) if total_cases > 0.0 => {
                (values.iter().sum::<f64>() / total_cases).clamp(0.0, 10.0)
            }
            _ => 0.0,
        }
    };
    let peak_lag = |channel: Option<&[f64]>| -> f64 {
        match channel {
            Some(values) if values.iter().any(|&v| v > 0.0) => {
                (argmax(values) as f64 - argmax(&r) as f64) / n as f64
            }
            _ => 0.0,
        }
    };
    f[26] = ratio_to_cases(input.weekly_deaths);
    f[27] = ratio_to_cases(input.weekly_hospitalizations);
    f[28] = peak_lag(input.weekly_deaths);
    f[29] = peak_lag(input.weekly_hospitalizations);

    debug_assert!(f.iter().all(|v| v.is_finite()));
    Ok(TrajectoryEmbedding { features: f })
}
