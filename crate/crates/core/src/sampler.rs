//! Scenario priors: draws complete, ready-to-run configurations for each
//! transmission mode. Draw order is fixed, so a seeded generator yields the
//! same configuration sequence everywhere.

use rand::Rng;
use rand_distr::{Beta, Distribution, Normal};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::demographics::DemographicsConfig;
use crate::draws::neg_binomial;
use crate::intervention::InterventionConfig;
use crate::observation::{
    DelayConfig, LabConfig, ObservationConfig, ReportingConfig, WeekdayConfig,
};
use crate::outcomes::{GammaDelay, OutcomeConfig};
use crate::params::{EpiParams, VectorParams, WaterParams};
use crate::scenario::{InitConfig, Mode, ScenarioConfig, WaterRouteConfig};
use crate::seasonality::{Harmonic, SeasonalityConfig};
use crate::superspread::SuperSpreadConfig;
use crate::waves::WaveSchedule;

/// Fixed scenario horizon in days.
pub const SIMULATION_DAYS: u32 = 2_000;

/// Delay support for clinical outcome draws (days after symptom onset or
/// admission).
pub const OUTCOME_MAX_DELAY: u32 = 60;

/// Relative mode frequencies for corpus generation; weights need not sum
/// to one. Order follows [`Mode::ALL`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeMix {
    pub weights: [f64; 3],
}

impl Default for ModeMix {
    fn default() -> Self {
        Self { weights: [1.0, 1.0, 1.0] }
    }
}

impl ModeMix {
    pub fn single(mode: Mode) -> Self {
        let mut weights = [0.0; 3];
        let idx = Mode::ALL.iter().position(|m| *m == mode).unwrap();
        weights[idx] = 1.0;
        Self { weights }
    }
}

/// Picks a transmission mode according to the mix. Nonpositive or non-finite
/// weights count as zero; an all-zero mix falls back to uniform.
pub fn sample_mode<R: Rng + ?Sized>(mix: &ModeMix, rng: &mut R) -> Mode {
    let cleaned: [f64; 3] = {
        let mut w = [0.0; 3];
        for (out, &raw) in w.iter_mut().zip(&mix.weights) {
            if raw.is_finite() && raw > 0.0 {
                *out = raw;
            }
        }
        w
    };
    let total: f64 = cleaned.iter().sum();
    if total <= 0.0 {
        return Mode::ALL[rng.random_range(0..3)];
    }
    let mut u = rng.random::<f64>() * total;
    for (mode, w) in Mode::ALL.iter().zip(&cleaned) {
        u -= w;
        if u < 0.0 {
            return *mode;
        }
    }
    Mode::Waterborne
}

/// Sampler switches outside the priors themselves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerOptions {
    /// When false, transmissibility and outcome schedules collapse to a
    /// single segment.
    pub multiwave: bool,
}

impl Default for SamplerOptions {
    fn default() -> Self {
        Self { multiwave: true }
    }
}

fn beta_draw<R: Rng + ?Sized>(a: f64, b: f64, rng: &mut R) -> f64 {
    Beta::new(a, b).expect("valid shape parameters").sample(rng)
}

fn log_uniform<R: Rng + ?Sized>(lo: f64, hi: f64, rng: &mut R) -> f64 {
    rng.random_range(lo.ln()..=hi.ln()).exp()
}

/// Distinct ordered change days on [50, 1800].
fn sample_change_days<R: Rng + ?Sized>(count: u32, rng: &mut R) -> Vec<u32> {
    let mut days = BTreeSet::new();
    while days.len() < count as usize {
        days.insert(rng.random_range(50..=1800u32));
    }
    days.into_iter().collect()
}

/// One value per segment over shared change days.
fn schedule_over<R: Rng + ?Sized>(
    change_days: &[u32],
    lo: f64,
    hi: f64,
    rng: &mut R,
) -> WaveSchedule {
    let values = (0..=change_days.len()).map(|_| rng.random_range(lo..=hi)).collect();
    WaveSchedule::new(change_days.to_vec(), values).expect("one value per segment")
}

fn sample_epi<R: Rng + ?Sized>(mode: Mode, rng: &mut R) -> EpiParams {
    let sigma = rng.random_range(0.2..=0.4);
    let gamma = rng.random_range(0.1..=0.33);
    let gamma_a = rng.random_range(0.1..=0.33);
    let omega = match mode {
        Mode::HumanToHuman => rng.random_range(0.001..=0.0075),
        Mode::VectorBorne => rng.random_range(0.003..=0.02),
        Mode::Waterborne => rng.random_range(0.001..=0.01),
    };
    let p_asymptomatic = beta_draw(3.0, 7.0, rng);
    let alpha = beta_draw(2.0, 5.0, rng);
    let has_latent = rng.random_bool(0.7);
    let has_asymptomatic = rng.random_bool(match mode {
        Mode::Waterborne => 0.6,
        _ => 0.5,
    });
    let has_waning = match mode {
        Mode::VectorBorne => true,
        _ => rng.random_bool(0.9),
    };
    EpiParams {
        sigma,
        gamma,
        gamma_a,
        omega,
        p_asymptomatic,
        alpha,
        has_latent,
        has_asymptomatic,
        has_waning,
    }
}

fn sample_vector_params<R: Rng + ?Sized>(rng: &mut R) -> VectorParams {
    VectorParams {
        ratio: rng.random_range(2.0..=10.0),
        mu_v: rng.random_range(0.03..=0.10),
        sigma_v: rng.random_range(0.15..=0.30),
        biting_rate: rng.random_range(0.40..=0.80),
        to_human: rng.random_range(0.35..=0.75),
        to_vector: rng.random_range(0.35..=0.75),
    }
}

fn sample_water_params<R: Rng + ?Sized>(rng: &mut R) -> WaterParams {
    WaterParams {
        shedding_rate: rng.random_range(0.001..=0.01),
        asym_shedding: beta_draw(2.0, 5.0, rng),
        decay_rate: rng.random_range(0.05..=0.3),
    }
}

fn sample_seasonality<R: Rng + ?Sized>(mode: Mode, rng: &mut R) -> SeasonalityConfig {
    let (enable_prob, baseline, amp_lo, amp_hi) = match mode {
        Mode::HumanToHuman => (0.8, 1.0, 0.1, 0.5),
        Mode::VectorBorne => (0.8, 1.2, 0.5, 1.25),
        Mode::Waterborne => (0.9, 1.0, 0.6, 1.5),
    };
    if !rng.random_bool(enable_prob) {
        return SeasonalityConfig::disabled(baseline);
    }
    let n_harmonics = rng.random_range(1..=4u32);
    let base_amplitude = rng.random_range(amp_lo..=amp_hi);
    let harmonics = (0..n_harmonics)
        .map(|_| {
            let amplitude = base_amplitude * rng.random_range(0.3..=1.0);
            let phase = rng.random_range(0.0..=365.0) + rng.random_range(-60.0..=60.0);
            let period = [365.0, 182.5, 91.25][rng.random_range(0..3)];
            Harmonic { amplitude, period, phase }
        })
        .collect();
    SeasonalityConfig {
        enabled: true,
        baseline,
        harmonics,
        annual_jitter_days: 30.0,
        daily_noise_sd: 0.05,
    }
}

fn sample_superspread<R: Rng + ?Sized>(mode: Mode, rng: &mut R) -> SuperSpreadConfig {
    let probability = match mode {
        Mode::HumanToHuman => rng.random_range(0.0005..=0.02),
        Mode::VectorBorne => return SuperSpreadConfig::disabled(),
        Mode::Waterborne => rng.random_range(0.0002..=0.02),
    };
    SuperSpreadConfig { probability, shape: 4.0, scale: 1.5 }
}

fn sample_intervention<R: Rng + ?Sized>(
    mode: Mode,
    population: u64,
    rng: &mut R,
) -> InterventionConfig {
    if !rng.random_bool(0.25) {
        return InterventionConfig::disabled();
    }
    let on_threshold = population as f64 * rng.random_range(1e-5..=1e-3);
    let off_threshold = on_threshold * rng.random_range(0.0..=1.0);
    let reduction = rng.random_range(0.2..=0.6);
    let water_reduction =
        (mode == Mode::Waterborne).then(|| rng.random_range(0.3..=0.7));
    InterventionConfig {
        enabled: true,
        on_threshold,
        off_threshold,
        reduction,
        water_reduction,
        trigger_delay: rng.random_range(0..=21),
        min_duration: rng.random_range(14..=35),
        max_duration: rng.random_bool(0.5).then(|| rng.random_range(60..=120)),
        consecutive_off_days: rng.random_range(1..=50),
    }
}

fn sample_demographics<R: Rng + ?Sized>(rng: &mut R) -> DemographicsConfig {
    if !rng.random_bool(0.8) {
        return DemographicsConfig::disabled();
    }
    let birth_rate = rng.random_range(2e-5..=1.2e-4);
    let death_rate = birth_rate * rng.random_range(0.8..=1.3);
    let importation_rate = log_uniform(0.01, 0.5, rng);
    DemographicsConfig { enabled: true, birth_rate, death_rate, importation_rate }
}

fn sample_init<R: Rng + ?Sized>(
    mode: Mode,
    population: u64,
    vector: Option<&VectorParams>,
    rng: &mut R,
) -> InitConfig {
    let n = population as f64;
    match mode {
        Mode::HumanToHuman => {
            let infectious = neg_binomial((n * 5e-6).max(1.0), 0.5, rng);
            InitConfig::seeded(infectious.min(population))
        }
        Mode::VectorBorne => {
            let immune = (rng.random_range(0.0..=0.7) * n).round() as u64;
            let infectious = neg_binomial((n * 5e-6).max(1.0), 0.5, rng);
            let n_vectors = (n * vector.expect("vector params precede init").ratio).round();
            let vector_exposed = neg_binomial((n_vectors * 1e-4).max(1.0), 0.3, rng);
            InitConfig {
                immune: immune.min(population),
                infectious,
                vector_exposed,
                initial_reservoir: 0.0,
            }
        }
        Mode::Waterborne => {
            // Endemic start: substantial standing immunity, no reservoir load.
            let immune = (beta_draw(10.0, 3.5, rng) * n).round() as u64;
            let infectious = neg_binomial(n * 1e-6, 0.5, rng);
            InitConfig {
                immune: immune.min(population),
                infectious,
                vector_exposed: 0,
                initial_reservoir: 0.0,
            }
        }
    }
}

fn sample_outcomes<R: Rng + ?Sized>(
    mode: Mode,
    change_days: &[u32],
    rng: &mut R,
) -> OutcomeConfig {
    let (ph_lo, ph_hi, pd_lo, pd_hi) = match mode {
        Mode::VectorBorne => (0.05, 0.20, 0.10, 0.40),
        _ => (0.02, 0.15, 0.05, 0.30),
    };
    // Severity is resampled per wave segment over the shared change days.
    let p_hospital = schedule_over(change_days, ph_lo, ph_hi, rng);
    let p_death = schedule_over(change_days, pd_lo, pd_hi, rng);
    let hospital_delay =
        GammaDelay { shape: rng.random_range(2.0..=4.0), scale: rng.random_range(1.0..=3.0) };
    let death_scale = match mode {
        Mode::HumanToHuman => rng.random_range(4.5..=8.5),
        _ => rng.random_range(2.0..=5.0),
    };
    let death_delay = GammaDelay { shape: rng.random_range(1.5..=2.5), scale: death_scale };
    OutcomeConfig {
        p_hospital,
        p_death,
        hospital_delay,
        death_delay,
        max_delay: OUTCOME_MAX_DELAY,
    }
}

fn sample_observation<R: Rng + ?Sized>(mode: Mode, rng: &mut R) -> ObservationConfig {
    let overdispersion = match mode {
        Mode::Waterborne => 100.0,
        _ => 1200.0,
    };

    let apply_reporting = rng.random_bool(0.8);
    let mut initial_rate = rng.random_range(0.05..=0.4);
    let mut max_rate = rng.random_range(0.25..=0.85);
    if max_rate < initial_rate {
        std::mem::swap(&mut initial_rate, &mut max_rate);
    }
    // Drawn regardless of the reporting flag: the delay ramp shares it.
    let days_to_max = rng.random_range(30.0..=365.0);
    let steepness = rng.random_range(4.0..=8.0);
    let reporting = apply_reporting.then_some(ReportingConfig {
        initial_rate,
        max_rate,
        days_to_max,
        steepness,
    });

    let weekday = if rng.random_bool(0.8) {
        let factor = |mean: f64, sd: f64, rng: &mut R| {
            Normal::new(mean, sd).expect("positive sd").sample(rng).clamp(0.05, 3.0)
        };
        let factors = [
            factor(1.2, 0.15, rng),
            factor(1.0, 0.1, rng),
            factor(1.0, 0.1, rng),
            factor(1.0, 0.1, rng),
            factor(0.9, 0.12, rng),
            factor(0.6, 0.2, rng),
            factor(0.4, 0.2, rng),
        ];
        Some(WeekdayConfig { factors, start_weekday: rng.random_range(0..=6u8) })
    } else {
        None
    };

    let lab = rng.random_bool(0.8).then_some(LabConfig {
        batch_mean: 100.0,
        bad_batch_rate: 0.005,
        accuracy_min: 0.7,
        accuracy_max: 0.85,
    });

    let delays = rng.random_bool(0.8).then(|| DelayConfig {
        initial_max_delay: rng.random_range(7..=21),
        final_max_delay: rng.random_range(2..=7),
        initial_alpha: 1.0,
        final_alpha: 4.0,
        ramp_days: days_to_max,
    });

    ObservationConfig { mult_noise_sd: 0.1, overdispersion, reporting, lab, delays, weekday }
}

/// Draws a complete scenario under default options.
pub fn sample_scenario<R: Rng + ?Sized>(mode: Mode, rng: &mut R) -> ScenarioConfig {
    sample_scenario_with(mode, SamplerOptions::default(), rng)
}

/// Draws a complete scenario. Every parameter comes from its mode's prior;
/// the returned configuration runs without further randomness decisions.
pub fn sample_scenario_with<R: Rng + ?Sized>(
    mode: Mode,
    options: SamplerOptions,
    rng: &mut R,
) -> ScenarioConfig {
    let seed: u64 = rng.random();
    let population = log_uniform(5e4, 4e7, rng).round() as u64;
    let epi = sample_epi(mode, rng);

    let wave_changes = if options.multiwave {
        let max = if mode == Mode::Waterborne { 7 } else { 4 };
        rng.random_range(0..=max)
    } else {
        0
    };
    let change_days = sample_change_days(wave_changes, rng);
    let beta = match mode {
        Mode::HumanToHuman => schedule_over(&change_days, 0.2, 0.235, rng),
        Mode::VectorBorne => schedule_over(&change_days, 0.5, 0.7, rng),
        Mode::Waterborne => schedule_over(&change_days, 0.0, 0.05, rng),
    };
    let vector = (mode == Mode::VectorBorne).then(|| sample_vector_params(rng));
    let water = (mode == Mode::Waterborne).then(|| WaterRouteConfig {
        delta: schedule_over(&change_days, 0.0005, 0.01, rng),
        params: sample_water_params(rng),
    });

    let seasonality = sample_seasonality(mode, rng);
    let superspread = sample_superspread(mode, rng);
    let intervention = sample_intervention(mode, population, rng);
    let demographics = sample_demographics(rng);
    let init = sample_init(mode, population, vector.as_ref(), rng);
    let outcomes = sample_outcomes(mode, &change_days, rng);
    let observation = sample_observation(mode, rng);

    ScenarioConfig {
        mode,
        seed,
        population,
        days: SIMULATION_DAYS,
        epi,
        beta,
        vector,
        water,
        seasonality,
        superspread,
        intervention,
        demographics,
        init,
        outcomes,
        observation,
    }
}
