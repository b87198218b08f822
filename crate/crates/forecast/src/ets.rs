//! Innovations state-space exponential smoothing with automatic model
//! selection.
//!
//! The family covers every combination of error kind (additive or
//! multiplicative), trend kind (none, additive, damped additive,
//! multiplicative, damped multiplicative), and seasonal kind (none,
//! additive, multiplicative). All thirty variants share one state
//! recursion written in terms of the *absolute* one-step error
//! `e = y - mu`:
//!
//! ```text
//! p  = level                    (no trend)
//!      level + phi * b          (additive trend)
//!      level * b^phi            (multiplicative trend)
//! mu = p, p + s, or p * s       (per seasonal kind, s = seasonal state)
//! d  = s for multiplicative seasonality, 1 otherwise
//!
//! level' = p + alpha * e / d
//! b'     = phi * b + beta * e / d              (additive trend)
//!          b^phi   + beta * e / (d * level)    (multiplicative trend)
//! s'     = s + gamma * e                       (additive seasonal)
//!          s + gamma * e / p                   (multiplicative seasonal)
//! ```
//!
//! Multiplying out the textbook per-variant update tables shows they all
//! reduce to exactly these expressions, so the error kind affects only the
//! likelihood: additive errors score the absolute innovations,
//! multiplicative errors score the relative innovations `e / mu` plus a
//! `-sum(ln mu)` change-of-variables term that keeps AIC values comparable
//! across error kinds.

use crate::error::ForecastError;
use crate::optim::nelder_mead;
use crate::quantiles::{ForecastQuantiles, NUM_LEVELS, QUANTILE_LEVELS};
use crate::stats::{linear_fit, mean};
use epiforge_core::rng::{mix_seed, RngStream};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use statrs::distribution::{ContinuousCDF, Normal};

const LN_2PI: f64 = 1.8378770664093453;

/// How the one-step innovation enters the observation equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Additive,
    Multiplicative,
}

/// Trend component of the state space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrendKind {
    None,
    Additive,
    AdditiveDamped,
    Multiplicative,
    MultiplicativeDamped,
}

/// Seasonal component of the state space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeasonalKind {
    None,
    Additive,
    Multiplicative,
}

/// One member of the smoothing-model family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EtsSpec {
    pub error: ErrorKind,
    pub trend: TrendKind,
    pub seasonal: SeasonalKind,
    /// Season length in observations; ignored (treated as 1) when
    /// `seasonal` is `None`.
    pub season_length: usize,
}

impl EtsSpec {
    /// A non-seasonal specification.
    pub fn non_seasonal(error: ErrorKind, trend: TrendKind) -> Self {
        Self {
            error,
            trend,
            seasonal: SeasonalKind::None,
            season_length: 1,
        }
    }

    /// The full candidate grid for automatic selection, in canonical
    /// order: error (additive first), then trend (none, additive, damped
    /// additive, multiplicative, damped multiplicative), then seasonal
    /// (none, additive, multiplicative). Seasonal variants are included
    /// only when `season_length >= 2`.
    pub fn grid(season_length: usize) -> Vec<EtsSpec> {
        let errors = [ErrorKind::Additive, ErrorKind::Multiplicative];
        let trends = [
            TrendKind::None,
            TrendKind::Additive,
            TrendKind::AdditiveDamped,
            TrendKind::Multiplicative,
            TrendKind::MultiplicativeDamped,
        ];
        let seasonals = [
            SeasonalKind::None,
            SeasonalKind::Additive,
            SeasonalKind::Multiplicative,
        ];
        let mut grid = Vec::new();
        for error in errors {
            for trend in trends {
                for seasonal in seasonals {
                    if seasonal != SeasonalKind::None && season_length < 2 {
                        continue;
                    }
                    grid.push(EtsSpec {
                        error,
                        trend,
                        seasonal,
                        season_length: if seasonal == SeasonalKind::None {
                            1
                        } else {
                            season_length
                        },
                    });
                }
            }
        }
        grid
    }

    /// Conventional label, e.g. `ETS(A,Ad,N)`.
    pub fn label(&self) -> String {
        let e = match self.error {
            ErrorKind::Additive => "A",
            ErrorKind::Multiplicative => "M",
        };
        let t = match self.trend {
            TrendKind::None => "N",
            TrendKind::Additive => "A",
            TrendKind::AdditiveDamped => "Ad",
            TrendKind::Multiplicative => "M",
            TrendKind::MultiplicativeDamped => "Md",
        };
        let s = match self.seasonal {
            SeasonalKind::None => "N",
            SeasonalKind::Additive => "A",
            SeasonalKind::Multiplicative => "M",
        };
        format!("ETS({e},{t},{s})")
    }

    pub fn has_trend(&self) -> bool {
        self.trend != TrendKind::None
    }

    pub fn is_damped(&self) -> bool {
        matches!(
            self.trend,
            TrendKind::AdditiveDamped | TrendKind::MultiplicativeDamped
        )
    }

    pub fn has_seasonal(&self) -> bool {
        self.seasonal != SeasonalKind::None
    }

    fn has_multiplicative_trend(&self) -> bool {
        matches!(
            self.trend,
            TrendKind::Multiplicative | TrendKind::MultiplicativeDamped
        )
    }

    /// Whether the series must be strictly positive for this spec to be
    /// well defined.
    pub fn needs_positive(&self) -> bool {
        self.error == ErrorKind::Multiplicative
            || self.has_multiplicative_trend()
            || self.seasonal == SeasonalKind::Multiplicative
    }

    /// Minimum series length for parameter estimation: ten observations,
    /// or two full cycles for seasonal specifications.
    pub fn min_observations(&self) -> usize {
        if self.has_seasonal() {
            10usize.max(2 * self.season_length)
        } else {
            10
        }
    }

    /// Number of estimated quantities charged to the information
    /// criterion: smoothing parameters, damping, initial states (one
    /// seasonal initial is determined by the normalization constraint),
    /// and the innovation variance.
    pub fn param_count(&self) -> usize {
        let m = self.season_length;
        1 // alpha
            + self.has_trend() as usize // beta
            + self.has_seasonal() as usize // gamma
            + self.is_damped() as usize // phi
            + 1 // initial level
            + self.has_trend() as usize // initial trend
            + if self.has_seasonal() { m - 1 } else { 0 }
            + 1 // innovation variance
    }
}

/// Smoothing parameters and initial state for one specification.
///
/// `beta`, `gamma`, and `phi` are ignored when the matching component is
/// absent; `seasonal` holds the `season_length` initial seasonal states
/// (empty for non-seasonal specs), indexed by time position `t % m`.
#[derive(Debug, Clone, PartialEq)]
pub struct EtsParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub phi: f64,
    pub level: f64,
    pub trend: f64,
    pub seasonal: Vec<f64>,
}

impl EtsParams {
    /// Parameters for a non-seasonal, trendless model.
    pub fn level_only(alpha: f64, level: f64) -> Self {
        Self {
            alpha,
            beta: 0.0,
            gamma: 0.0,
            phi: 1.0,
            level,
            trend: 0.0,
            seasonal: Vec::new(),
        }
    }
}

/// Filtered state after processing a series. `seasonal[p]` holds the most
/// recent seasonal value for time position `p = t % m`; `time` counts
/// observations processed.
#[derive(Debug, Clone, PartialEq)]
pub struct EtsState {
    pub level: f64,
    pub trend: f64,
    pub seasonal: Vec<f64>,
    pub time: usize,
}

/// Result of one filter pass at fixed parameters.
#[derive(Debug, Clone)]
pub struct EtsFilterOutput {
    pub state: EtsState,
    /// One-step-ahead point forecasts, aligned with the input series.
    pub fitted: Vec<f64>,
    /// Sum of squared innovations (absolute or relative, per error kind).
    pub sse: f64,
    /// Maximum-likelihood innovation variance, `sse / n`.
    pub sigma2: f64,
    pub log_likelihood: f64,
}

struct Components {
    point: f64,
    mu: f64,
    s_old: f64,
    d: f64,
}

fn components_phi(
    spec: &EtsSpec,
    level: f64,
    trend: f64,
    seasonal: &[f64],
    pos: usize,
    phi: f64,
) -> Components {
    let point = match spec.trend {
        TrendKind::None => level,
        TrendKind::Additive | TrendKind::AdditiveDamped => level + phi * trend,
        TrendKind::Multiplicative | TrendKind::MultiplicativeDamped => level * trend.powf(phi),
    };
    let s_old = if spec.has_seasonal() {
        seasonal[pos]
    } else {
        match spec.seasonal {
            SeasonalKind::Multiplicative => 1.0,
            _ => 0.0,
        }
    };
    let mu = match spec.seasonal {
        SeasonalKind::None => point,
        SeasonalKind::Additive => point + s_old,
        SeasonalKind::Multiplicative => point * s_old,
    };
    let d = if spec.seasonal == SeasonalKind::Multiplicative {
        s_old
    } else {
        1.0
    };
    Components {
        point,
        mu,
        s_old,
        d,
    }
}

fn effective_phi(spec: &EtsSpec, params_phi: f64) -> f64 {
    if spec.is_damped() {
        params_phi
    } else {
        1.0
    }
}

/// Runs the state recursion over `series` at fixed parameters, returning
/// the end state and the innovation likelihood. Errors with
/// [`ForecastError::Infeasible`] when the pass leaves the admissible
/// region (non-positive mean under multiplicative error, non-positive
/// multiplicative component, numeric overflow).
pub fn ets_filter(
    series: &[f64],
    spec: &EtsSpec,
    params: &EtsParams,
) -> Result<EtsFilterOutput, ForecastError> {
    if series.is_empty() {
        return Err(ForecastError::EmptyContext);
    }
    let m = spec.season_length.max(1);
    if spec.has_seasonal() {
        if spec.season_length < 2 {
            return Err(ForecastError::InvalidArgument(
                "seasonal specification requires season_length >= 2".into(),
            ));
        }
        if params.seasonal.len() != m {
            return Err(ForecastError::ShapeMismatch(format!(
                "expected {m} initial seasonal states, got {}",
                params.seasonal.len()
            )));
        }
    }
    let phi = effective_phi(spec, params.phi);
    let mult_trend = spec.has_multiplicative_trend();
    let mult_seasonal = spec.seasonal == SeasonalKind::Multiplicative;
    let mult_error = spec.error == ErrorKind::Multiplicative;

    let infeasible = |what: &str| Err(ForecastError::Infeasible(what.to_string()));

    let mut level = params.level;
    let mut trend = params.trend;
    let mut seasonal = params.seasonal.clone();
    if mult_trend && (level <= 0.0 || trend <= 0.0) {
        return infeasible("multiplicative trend requires positive initial level and trend");
    }
    if mult_seasonal && seasonal.iter().any(|&s| s <= 0.0) {
        return infeasible("multiplicative seasonality requires positive seasonal states");
    }

    let mut fitted = Vec::with_capacity(series.len());
    let mut sse = 0.0;
    let mut log_mu_sum = 0.0;
    for (t, &y) in series.iter().enumerate() {
        let c = components_phi(spec, level, trend, &seasonal, t % m, phi);
        if !c.mu.is_finite() {
            return infeasible("one-step mean overflowed");
        }
        if mult_error && c.mu <= 0.0 {
            return infeasible("multiplicative error requires a positive one-step mean");
        }
        if mult_seasonal && c.point <= 0.0 {
            return infeasible("multiplicative seasonality requires a positive trend component");
        }
        fitted.push(c.mu);

        let e = y - c.mu;
        let eps = if mult_error { e / c.mu } else { e };
        sse += eps * eps;
        if mult_error {
            log_mu_sum += c.mu.abs().ln();
        }

        let new_level = c.point + params.alpha * e / c.d;
        let new_trend = match spec.trend {
            TrendKind::None => trend,
            TrendKind::Additive | TrendKind::AdditiveDamped => {
                phi * trend + params.beta * e / c.d
            }
            TrendKind::Multiplicative | TrendKind::MultiplicativeDamped => {
                trend.powf(phi) + params.beta * e / (c.d * level)
            }
        };
        if !new_level.is_finite() || !new_trend.is_finite() {
            return infeasible("state overflowed");
        }
        if mult_trend && (new_level <= 0.0 || new_trend <= 0.0) {
            return infeasible("multiplicative trend state left the positive region");
        }
        if spec.has_seasonal() {
            let new_seasonal = match spec.seasonal {
                SeasonalKind::Additive => c.s_old + params.gamma * e,
                SeasonalKind::Multiplicative => c.s_old + params.gamma * e / c.point,
                SeasonalKind::None => unreachable!(),
            };
            if !new_seasonal.is_finite() || (mult_seasonal && new_seasonal <= 0.0) {
                return infeasible("seasonal state left the admissible region");
            }
            seasonal[t % m] = new_seasonal;
        }
        level = new_level;
        trend = new_trend;
    }

    let n = series.len() as f64;
    // A perfect fit gives sse = 0; clamp so the log-likelihood stays
    // finite and model comparison still works on degenerate series.
    let sse_safe = sse.max(1e-300);
    let mut log_likelihood = -0.5 * n * (1.0 + (sse_safe / n).ln() + LN_2PI);
    if mult_error {
        log_likelihood -= log_mu_sum;
    }
    Ok(EtsFilterOutput {
        state: EtsState {
            level,
            trend,
            seasonal,
            time: series.len(),
        },
        fitted,
        sse,
        sigma2: sse / n,
        log_likelihood,
    })
}

/// A fitted smoothing model: specification, estimated parameters, end
/// state, and the information-criterion bookkeeping used for selection.
#[derive(Debug, Clone)]
pub struct EtsFit {
    pub spec: EtsSpec,
    pub params: EtsParams,
    pub state: EtsState,
    pub sigma2: f64,
    pub log_likelihood: f64,
    pub aic: f64,
    pub param_count: usize,
    pub n: usize,
}

/// Heuristic initial states: a least-squares line through the first ten
/// (de-seasonalized) points for level and trend, and per-position cycle
/// means over the first cycles for the seasonal profile (centered to sum
/// zero when additive, normalized to mean one when multiplicative).
fn heuristic_initials(
    series: &[f64],
    spec: &EtsSpec,
) -> Result<(f64, f64, Vec<f64>), ForecastError> {
    let m = spec.season_length;
    let (seasonal, adjusted): (Vec<f64>, Vec<f64>) = if spec.has_seasonal() {
        let cycles = (series.len() / m).min(4);
        let window = &series[..cycles * m];
        let grand = mean(window);
        let mut profile = vec![0.0; m];
        for (j, slot) in profile.iter_mut().enumerate() {
            let vals: Vec<f64> = (0..cycles).map(|c| window[c * m + j]).collect();
            *slot = mean(&vals);
        }
        match spec.seasonal {
            SeasonalKind::Additive => {
                for s in &mut profile {
                    *s -= grand;
                }
                let offset = mean(&profile);
                for s in &mut profile {
                    *s -= offset;
                }
                let adjusted = series
                    .iter()
                    .enumerate()
                    .map(|(t, &y)| y - profile[t % m])
                    .collect();
                (profile, adjusted)
            }
            SeasonalKind::Multiplicative => {
                if grand <= 0.0 {
                    return Err(ForecastError::Infeasible(
                        "multiplicative seasonal profile needs a positive mean".into(),
                    ));
                }
                for s in &mut profile {
                    *s /= grand;
                }
                let norm = mean(&profile);
                for s in &mut profile {
                    *s /= norm;
                    if *s <= 0.0 {
                        return Err(ForecastError::Infeasible(
                            "degenerate multiplicative seasonal profile".into(),
                        ));
                    }
                }
                let adjusted = series
                    .iter()
                    .enumerate()
                    .map(|(t, &y)| y / profile[t % m])
                    .collect();
                (profile, adjusted)
            }
            SeasonalKind::None => unreachable!(),
        }
    } else {
        (Vec::new(), series.to_vec())
    };

    let q = adjusted.len().min(10);
    let (intercept, slope) = linear_fit(&adjusted[..q]);
    // The first observation is predicted from the *initial* state, so the
    // level heuristic backs one trend step out of the intercept.
    let (level, trend) = match spec.trend {
        TrendKind::None => (intercept, 0.0),
        TrendKind::Additive | TrendKind::AdditiveDamped => (intercept - slope, slope),
        TrendKind::Multiplicative | TrendKind::MultiplicativeDamped => {
            let ratio = if intercept.abs() > 1e-8 {
                (1.0 + slope / intercept).clamp(0.9, 1.1)
            } else {
                1.0
            };
            (intercept / ratio, ratio)
        }
    };
    Ok((level, trend, seasonal))
}

// Layout of the free-coordinate vector handed to the optimizer.
struct Layout {
    alpha: usize,
    beta: Option<usize>,
    gamma: Option<usize>,
    phi: Option<usize>,
    level: usize,
    trend: Option<usize>,
    dim: usize,
}

impl Layout {
    fn new(spec: &EtsSpec) -> Self {
        let mut next = 0usize;
        let mut take = || {
            let i = next;
            next += 1;
            i
        };
        let alpha = take();
        let beta = spec.has_trend().then(&mut take);
        let gamma = spec.has_seasonal().then(&mut take);
        let phi = spec.is_damped().then(&mut take);
        let level = take();
        let trend = spec.has_trend().then(&mut take);
        Layout {
            alpha,
            beta,
            gamma,
            phi,
            level,
            trend,
            dim: next,
        }
    }

    fn unpack(&self, x: &[f64], seasonal: &[f64]) -> EtsParams {
        EtsParams {
            alpha: x[self.alpha],
            beta: self.beta.map_or(0.0, |i| x[i]),
            gamma: self.gamma.map_or(0.0, |i| x[i]),
            phi: self.phi.map_or(1.0, |i| x[i]),
            level: x[self.level],
            trend: self.trend.map_or(0.0, |i| x[i]),
            seasonal: seasonal.to_vec(),
        }
    }
}

const PHI_MIN: f64 = 0.8001;
const PHI_MAX: f64 = 0.9999;

fn grid_index(spec: &EtsSpec) -> u64 {
    let e = match spec.error {
        ErrorKind::Additive => 0u64,
        ErrorKind::Multiplicative => 1,
    };
    let t = match spec.trend {
        TrendKind::None => 0u64,
        TrendKind::Additive => 1,
        TrendKind::AdditiveDamped => 2,
        TrendKind::Multiplicative => 3,
        TrendKind::MultiplicativeDamped => 4,
    };
    let s = match spec.seasonal {
        SeasonalKind::None => 0u64,
        SeasonalKind::Additive => 1,
        SeasonalKind::Multiplicative => 2,
    };
    e * 15 + t * 3 + s
}

fn validate_for_fit(series: &[f64], spec: &EtsSpec) -> Result<(), ForecastError> {
    if series.iter().any(|y| !y.is_finite()) {
        return Err(ForecastError::InvalidArgument(
            "series contains non-finite values".into(),
        ));
    }
    let needed = spec.min_observations();
    if series.len() < needed {
        return Err(ForecastError::TooShort {
            needed,
            got: series.len(),
        });
    }
    if spec.needs_positive() && series.iter().any(|&y| y <= 0.0) {
        return Err(ForecastError::Infeasible(
            "multiplicative components require strictly positive data".into(),
        ));
    }
    Ok(())
}

/// Fits `spec` to `series` by maximizing the innovation likelihood over
/// the smoothing parameters and the level/trend initials (seasonal
/// initials stay at their heuristic values). Deterministic: the restart
/// schedule is seeded from the specification alone.
pub fn ets_fit(series: &[f64], spec: &EtsSpec) -> Result<EtsFit, ForecastError> {
    validate_for_fit(series, spec)?;
    let (level0, trend0, seasonal0) = heuristic_initials(series, spec)?;
    let layout = Layout::new(spec);

    let min_y = series.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_y = series.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let range = (max_y - min_y).max(max_y.abs().max(1.0) * 1e-3);

    let mut lower = vec![0.0; layout.dim];
    let mut upper = vec![0.0; layout.dim];
    lower[layout.alpha] = 1e-4;
    upper[layout.alpha] = 0.9999;
    if let Some(i) = layout.beta {
        lower[i] = 1e-4;
        upper[i] = 0.9999;
    }
    if let Some(i) = layout.gamma {
        lower[i] = 1e-4;
        upper[i] = 0.9999;
    }
    if let Some(i) = layout.phi {
        lower[i] = PHI_MIN;
        upper[i] = PHI_MAX;
    }
    if spec.needs_positive() {
        lower[layout.level] = (0.1 * min_y).max(1e-8);
        upper[layout.level] = 2.0 * max_y;
    } else {
        lower[layout.level] = min_y - range;
        upper[layout.level] = max_y + range;
    }
    if let Some(i) = layout.trend {
        if spec.has_multiplicative_trend() {
            lower[i] = 0.5;
            upper[i] = 2.0;
        } else {
            lower[i] = -range;
            upper[i] = range;
        }
    }

    let objective = |x: &[f64]| {
        let params = layout.unpack(x, &seasonal0);
        if layout.beta.is_some() && params.beta >= params.alpha {
            return f64::INFINITY;
        }
        if layout.gamma.is_some() && params.gamma >= 1.0 - params.alpha {
            return f64::INFINITY;
        }
        match ets_filter(series, spec, &params) {
            Ok(out) => -out.log_likelihood,
            Err(_) => f64::INFINITY,
        }
    };

    // Restart schedule: one conventional default start plus nine seeded
    // random starts inside the admissible region.
    let mut starts: Vec<Vec<f64>> = Vec::with_capacity(10);
    let mut base = vec![0.0; layout.dim];
    base[layout.alpha] = 0.3;
    if let Some(i) = layout.beta {
        base[i] = 0.1;
    }
    if let Some(i) = layout.gamma {
        base[i] = 0.1;
    }
    if let Some(i) = layout.phi {
        base[i] = 0.95;
    }
    base[layout.level] = level0.clamp(lower[layout.level], upper[layout.level]);
    if let Some(i) = layout.trend {
        base[i] = trend0.clamp(lower[i], upper[i]);
    }
    starts.push(base.clone());

    let mut rng = RngStream::new(mix_seed(&[0x6574_735f_6669_74, grid_index(spec)]), 0).rng();
    while starts.len() < 10 {
        let mut x = base.clone();
        let alpha = rng.random_range(0.02..0.98);
        x[layout.alpha] = alpha;
        if let Some(i) = layout.beta {
            x[i] = rng.random_range(1e-3..alpha.max(2e-3) * 0.99);
        }
        if let Some(i) = layout.gamma {
            x[i] = rng.random_range(1e-3..((1.0 - alpha) * 0.99).max(2e-3));
        }
        if let Some(i) = layout.phi {
            x[i] = rng.random_range(PHI_MIN..PHI_MAX);
        }
        let jitter: f64 = rng.random_range(-0.25..0.25);
        x[layout.level] =
            (base[layout.level] + jitter * range).clamp(lower[layout.level], upper[layout.level]);
        if let Some(i) = layout.trend {
            let jitter: f64 = rng.random_range(-0.25..0.25);
            let width = upper[i] - lower[i];
            x[i] = (base[i] + jitter * 0.2 * width).clamp(lower[i], upper[i]);
        }
        starts.push(x);
    }

    let mut best: Option<(Vec<f64>, f64)> = None;
    for start in &starts {
        let (x, value) = nelder_mead(objective, start, &lower, &upper, 500);
        if best.as_ref().is_none_or(|(_, bv)| value < *bv) {
            best = Some((x, value));
        }
    }
    let (x, value) = best.expect("at least one restart");
    if !value.is_finite() {
        return Err(ForecastError::Infeasible(
            "no admissible parameters found".into(),
        ));
    }
    let params = layout.unpack(&x, &seasonal0);
    finish_fit(series, spec, params)
}

/// Builds a fit at caller-supplied parameters (no optimization). The
/// information criterion still charges the usual parameter count.
pub fn ets_fit_fixed(
    series: &[f64],
    spec: &EtsSpec,
    params: &EtsParams,
) -> Result<EtsFit, ForecastError> {
    if series.iter().any(|y| !y.is_finite()) {
        return Err(ForecastError::InvalidArgument(
            "series contains non-finite values".into(),
        ));
    }
    finish_fit(series, spec, params.clone())
}

fn finish_fit(series: &[f64], spec: &EtsSpec, params: EtsParams) -> Result<EtsFit, ForecastError> {
    let out = ets_filter(series, spec, &params)?;
    let k = spec.param_count();
    Ok(EtsFit {
        spec: *spec,
        params,
        sigma2: out.sigma2,
        log_likelihood: out.log_likelihood,
        aic: 2.0 * k as f64 - 2.0 * out.log_likelihood,
        param_count: k,
        state: out.state,
        n: series.len(),
    })
}

/// Fits every feasible grid member and returns the one with the smallest
/// AIC; exact ties go to the model with fewer parameters, then to the
/// earlier grid position. Infeasible specifications (too little data,
/// non-positive data under multiplicative components, filter divergence)
/// are skipped; if everything is skipped the error is
/// [`ForecastError::NoFeasibleModel`].
pub fn ets_select(series: &[f64], season_length: usize) -> Result<EtsFit, ForecastError> {
    let mut best: Option<EtsFit> = None;
    for spec in EtsSpec::grid(season_length) {
        let fit = match ets_fit(series, &spec) {
            Ok(fit) => fit,
            Err(_) => continue,
        };
        if !fit.aic.is_finite() {
            continue;
        }
        let replace = match &best {
            None => true,
            Some(b) => {
                fit.aic < b.aic || (fit.aic == b.aic && fit.param_count < b.param_count)
            }
        };
        if replace {
            best = Some(fit);
        }
    }
    best.ok_or(ForecastError::NoFeasibleModel)
}

/// Deterministic point forecasts (forecast means of the linear classes;
/// conditional medians of the state recursion with zero future error
/// otherwise) for `horizon` steps ahead.
pub fn ets_point_forecast(fit: &EtsFit, horizon: usize) -> Vec<f64> {
    let spec = &fit.spec;
    let phi = effective_phi(spec, fit.params.phi);
    let m = spec.season_length.max(1);
    let mut out = Vec::with_capacity(horizon);
    let mut phi_sum = 0.0;
    for j in 1..=horizon {
        phi_sum += phi.powi(j as i32);
        let trend_part = match spec.trend {
            TrendKind::None => fit.state.level,
            TrendKind::Additive => fit.state.level + j as f64 * fit.state.trend,
            TrendKind::AdditiveDamped => fit.state.level + phi_sum * fit.state.trend,
            TrendKind::Multiplicative => fit.state.level * fit.state.trend.powi(j as i32),
            TrendKind::MultiplicativeDamped => fit.state.level * fit.state.trend.powf(phi_sum),
        };
        let value = match spec.seasonal {
            SeasonalKind::None => trend_part,
            SeasonalKind::Additive => trend_part + fit.state.seasonal[(fit.state.time + j - 1) % m],
            SeasonalKind::Multiplicative => {
                trend_part * fit.state.seasonal[(fit.state.time + j - 1) % m]
            }
        };
        out.push(value);
    }
    out
}

fn is_linear_class(spec: &EtsSpec) -> bool {
    spec.error == ErrorKind::Additive
        && matches!(
            spec.trend,
            TrendKind::None | TrendKind::Additive | TrendKind::AdditiveDamped
        )
        && matches!(spec.seasonal, SeasonalKind::None | SeasonalKind::Additive)
}

/// Number of simulated sample paths used for non-Gaussian forecast
/// distributions.
const SIM_PATHS: usize = 1000;

/// Quantile forecast for `horizon` steps ahead.
///
/// For the linear additive-error class the forecast distribution is
/// Gaussian with a closed-form variance
/// `v_h = sigma2 * (1 + sum_{j<h} c_j^2)`, `c_j = alpha + beta_term(j) +
/// gamma * [j % m == 0]`; quantiles come from the normal inverse CDF. All
/// other classes are simulated: one thousand seeded sample paths stepped
/// through the state recursion, reduced per step to the reporting grid.
pub fn ets_forecast(fit: &EtsFit, horizon: usize) -> Result<ForecastQuantiles, ForecastError> {
    if horizon == 0 {
        return Err(ForecastError::InvalidArgument(
            "forecast horizon must be at least 1".into(),
        ));
    }
    let means = ets_point_forecast(fit, horizon);
    if is_linear_class(&fit.spec) {
        let spec = &fit.spec;
        let phi = effective_phi(spec, fit.params.phi);
        let m = spec.season_length.max(1);
        let normal = Normal::standard();
        let mut rows = Vec::with_capacity(horizon);
        let mut sum_c2 = 0.0;
        let mut phi_sum = 0.0;
        for (h, &mu) in means.iter().enumerate().map(|(i, v)| (i + 1, v)) {
            // c_{h-1} joins the accumulated variance when h > 1.
            if h > 1 {
                let j = h - 1;
                phi_sum += phi.powi(j as i32);
                let trend_term = match spec.trend {
                    TrendKind::None => 0.0,
                    TrendKind::Additive => fit.params.beta * j as f64,
                    TrendKind::AdditiveDamped => fit.params.beta * phi_sum,
                    _ => unreachable!("linear class has no multiplicative trend"),
                };
                let seasonal_term = if spec.seasonal == SeasonalKind::Additive && j % m == 0 {
                    fit.params.gamma
                } else {
                    0.0
                };
                let c = fit.params.alpha + trend_term + seasonal_term;
                sum_c2 += c * c;
            }
            let sd = (fit.sigma2 * (1.0 + sum_c2)).sqrt();
            let mut row = [0.0; NUM_LEVELS];
            for (i, &q) in QUANTILE_LEVELS.iter().enumerate() {
                row[i] = mu + sd * normal.inverse_cdf(q);
            }
            rows.push(row);
        }
        return ForecastQuantiles::from_rows(rows);
    }

    // Simulated forecast distribution. Seed depends only on the fit, so
    // repeated calls agree.
    let seed = mix_seed(&[
        0x6574_735f_7369_6d,
        grid_index(&fit.spec),
        fit.n as u64,
        fit.sigma2.to_bits(),
    ]);
    let mut rng = RngStream::new(seed, 0).rng();
    let sigma = fit.sigma2.sqrt();
    let m = fit.spec.season_length.max(1);
    let phi = effective_phi(&fit.spec, fit.params.phi);
    let mult_error = fit.spec.error == ErrorKind::Multiplicative;
    let mut samples: Vec<Vec<f64>> = vec![Vec::with_capacity(SIM_PATHS); horizon];
    for _ in 0..SIM_PATHS {
        let mut level = fit.state.level;
        let mut trend = fit.state.trend;
        let mut seasonal = fit.state.seasonal.clone();
        for (j, step_samples) in samples.iter_mut().enumerate() {
            let pos = (fit.state.time + j) % m;
            let c = components_phi(&fit.spec, level, trend, &seasonal, pos, phi);
            let y = if mult_error {
                // Relative errors below -1 would flip the sign of a
                // positive process; redraw (the mass there is negligible
                // for any reasonable sigma) and clamp as a last resort.
                let mut eps: f64 = StandardNormal.sample(&mut rng);
                let mut tries = 0;
                while 1.0 + eps * sigma <= 1e-6 && tries < 100 {
                    eps = StandardNormal.sample(&mut rng);
                    tries += 1;
                }
                c.mu * (1.0 + eps * sigma).max(1e-6)
            } else {
                let eps: f64 = StandardNormal.sample(&mut rng);
                c.mu + eps * sigma
            };
            step_samples.push(y);

            let e = y - c.mu;
            let guard = |v: f64| if v.is_finite() { v } else { 0.0 };
            let mut new_level = guard(c.point + fit.params.alpha * e / c.d);
            let mut new_trend = match fit.spec.trend {
                TrendKind::None => trend,
                TrendKind::Additive | TrendKind::AdditiveDamped => {
                    guard(phi * trend + fit.params.beta * e / c.d)
                }
                TrendKind::Multiplicative | TrendKind::MultiplicativeDamped => {
                    guard(trend.powf(phi) + fit.params.beta * e / (c.d * level))
                }
            };
            // Keep simulated paths inside the domain of multiplicative
            // components rather than aborting the path.
            if fit.spec.has_multiplicative_trend() {
                new_level = new_level.max(1e-9);
                new_trend = new_trend.max(1e-9);
            }
            if fit.spec.has_seasonal() {
                let mut new_seasonal = match fit.spec.seasonal {
                    SeasonalKind::Additive => c.s_old + fit.params.gamma * e,
                    SeasonalKind::Multiplicative => {
                        c.s_old + fit.params.gamma * e / c.point.max(1e-9)
                    }
                    SeasonalKind::None => unreachable!(),
                };
                if fit.spec.seasonal == SeasonalKind::Multiplicative {
                    new_seasonal = new_seasonal.max(1e-9);
                }
                seasonal[pos] = guard(new_seasonal);
            }
            level = new_level;
            trend = new_trend;
        }
    }
    ForecastQuantiles::from_step_samples(&samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn spec_ann() -> EtsSpec {
        EtsSpec::non_seasonal(ErrorKind::Additive, TrendKind::None)
    }

    #[test]
    fn grid_has_thirty_members_with_canonical_order() {
        let grid = EtsSpec::grid(52);
        assert_eq!(grid.len(), 30);
        assert_eq!(grid[0], spec_ann());
        assert_eq!(
            grid[29],
            EtsSpec {
                error: ErrorKind::Multiplicative,
                trend: TrendKind::MultiplicativeDamped,
                seasonal: SeasonalKind::Multiplicative,
                season_length: 52,
            }
        );
        // Canonical order doubles as the tie-break order.
        for (i, spec) in grid.iter().enumerate() {
            assert_eq!(grid_index(spec), i as u64);
        }
    }

    #[test]
    fn non_seasonal_grid_drops_seasonal_variants() {
        let grid = EtsSpec::grid(1);
        assert_eq!(grid.len(), 10);
        assert!(grid.iter().all(|s| !s.has_seasonal()));
    }

    #[test]
    fn parameter_counts_match_hand_tallies() {
        // alpha + level + variance
        assert_eq!(spec_ann().param_count(), 3);
        // + beta + initial trend
        assert_eq!(
            EtsSpec::non_seasonal(ErrorKind::Additive, TrendKind::Additive).param_count(),
            5
        );
        // + phi
        assert_eq!(
            EtsSpec::non_seasonal(ErrorKind::Additive, TrendKind::AdditiveDamped).param_count(),
            6
        );
        // quarterly triple-additive: 3 smoothing + 2 initials + 3 free
        // seasonal initials + variance
        let aaa = EtsSpec {
            error: ErrorKind::Additive,
            trend: TrendKind::Additive,
            seasonal: SeasonalKind::Additive,
            season_length: 4,
        };
        assert_eq!(aaa.param_count(), 9);
    }

    #[test]
    fn unit_alpha_filter_tracks_the_series_exactly() {
        let series = [3.0, 7.0, 2.0, 9.0, 4.0];
        let params = EtsParams::level_only(1.0, 11.0);
        let out = ets_filter(&series, &spec_ann(), &params).unwrap();
        // With alpha = 1 the level snaps to each observation, so every
        // fitted value is the previous observation.
        assert_abs_diff_eq!(out.fitted[0], 11.0);
        for t in 1..series.len() {
            assert_abs_diff_eq!(out.fitted[t], series[t - 1]);
        }
        assert_abs_diff_eq!(out.state.level, 4.0);
    }

    #[test]
    fn multiplicative_specs_reject_non_positive_data() {
        let mut series = vec![5.0; 20];
        series[7] = 0.0;
        let spec = EtsSpec::non_seasonal(ErrorKind::Multiplicative, TrendKind::None);
        assert!(matches!(
            ets_fit(&series, &spec),
            Err(ForecastError::Infeasible(_))
        ));
    }

    #[test]
    fn short_series_report_the_required_length() {
        let spec = EtsSpec {
            error: ErrorKind::Additive,
            trend: TrendKind::None,
            seasonal: SeasonalKind::Additive,
            season_length: 12,
        };
        match ets_fit(&[1.0; 20], &spec) {
            Err(ForecastError::TooShort { needed, got }) => {
                assert_eq!(needed, 24);
                assert_eq!(got, 20);
            }
            other => panic!("expected TooShort, got {other:?}"),
        }
    }

    #[test]
    fn seasonal_heuristic_profiles_are_constrained() {
        let m = 4;
        let series: Vec<f64> = (0..24)
            .map(|t| 50.0 + [10.0, -5.0, 0.0, -5.0][t % 4] + 0.3 * t as f64)
            .collect();
        let add = EtsSpec {
            error: ErrorKind::Additive,
            trend: TrendKind::Additive,
            seasonal: SeasonalKind::Additive,
            season_length: m,
        };
        let (_, _, profile) = heuristic_initials(&series, &add).unwrap();
        assert_abs_diff_eq!(profile.iter().sum::<f64>(), 0.0, epsilon = 1e-9);

        let mult = EtsSpec {
            seasonal: SeasonalKind::Multiplicative,
            ..add
        };
        let (_, _, profile) = heuristic_initials(&series, &mult).unwrap();
        assert_abs_diff_eq!(mean(&profile), 1.0, epsilon = 1e-9);
        assert!(profile.iter().all(|&s| s > 0.0));
    }

    #[test]
    fn fixed_fit_reports_the_aic_identity() {
        let series: Vec<f64> = (0..30).map(|t| 10.0 + (t as f64 * 0.7).sin()).collect();
        let fit = ets_fit_fixed(&series, &spec_ann(), &EtsParams::level_only(0.5, 10.0)).unwrap();
        assert_abs_diff_eq!(
            fit.aic,
            2.0 * fit.param_count as f64 - 2.0 * fit.log_likelihood,
            epsilon = 1e-12
        );
        assert_eq!(fit.n, 30);
    }

    #[test]
    fn point_forecasts_extend_trend_components() {
        // Hand-built additive-trend fit: level 10, trend 2.
        let spec = EtsSpec::non_seasonal(ErrorKind::Additive, TrendKind::Additive);
        let fit = EtsFit {
            spec,
            params: EtsParams {
                alpha: 0.5,
                beta: 0.1,
                gamma: 0.0,
                phi: 1.0,
                level: 0.0,
                trend: 0.0,
                seasonal: Vec::new(),
            },
            state: EtsState {
                level: 10.0,
                trend: 2.0,
                seasonal: Vec::new(),
                time: 40,
            },
            sigma2: 1.0,
            log_likelihood: 0.0,
            aic: 0.0,
            param_count: 5,
            n: 40,
        };
        let f = ets_point_forecast(&fit, 3);
        assert_abs_diff_eq!(f[0], 12.0);
        assert_abs_diff_eq!(f[1], 14.0);
        assert_abs_diff_eq!(f[2], 16.0);
    }

    #[test]
    fn linear_class_intervals_widen_with_horizon() {
        let series: Vec<f64> = (0..60)
            .map(|t| 100.0 + 2.0 * t as f64 + ((t * 37 % 11) as f64 - 5.0))
            .collect();
        let spec = EtsSpec::non_seasonal(ErrorKind::Additive, TrendKind::Additive);
        let fit = ets_fit(&series, &spec).unwrap();
        let fq = ets_forecast(&fit, 8).unwrap();
        let spread = |h: usize| fq.value(h, NUM_LEVELS - 1) - fq.value(h, 0);
        for h in 1..8 {
            assert!(
                spread(h) >= spread(h - 1) - 1e-9,
                "interval narrowed between steps {} and {}",
                h - 1,
                h
            );
        }
        // Median of the Gaussian forecast is the point forecast.
        let means = ets_point_forecast(&fit, 8);
        for h in 0..8 {
            assert_abs_diff_eq!(fq.median(h), means[h], epsilon = 1e-9);
        }
    }

    #[test]
    fn simulated_intervals_are_reproducible_and_widen() {
        let series: Vec<f64> = (0..50)
            .map(|t| 80.0 * 1.02f64.powi(t) * (1.0 + 0.01 * ((t * 13 % 7) as f64 - 3.0)))
            .collect();
        let spec = EtsSpec::non_seasonal(ErrorKind::Multiplicative, TrendKind::Multiplicative);
        let fit = ets_fit(&series, &spec).unwrap();
        let a = ets_forecast(&fit, 8).unwrap();
        let b = ets_forecast(&fit, 8).unwrap();
        assert_eq!(a, b);
        let spread = |fq: &ForecastQuantiles, h: usize| fq.value(h, NUM_LEVELS - 1) - fq.value(h, 0);
        assert!(spread(&a, 7) > spread(&a, 0));
    }
}
