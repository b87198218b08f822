//! Severity chain: symptomatic infections to hospital admissions to deaths,
//! each displaced by a discretized gamma delay.

use rand::Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Gamma};

use crate::draws::{binomial, multinomial_scatter};
use crate::trajectory::TrueTrajectory;
use crate::waves::WaveSchedule;

/// Gamma delay in days, scale parameterization (mean = shape * scale).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaDelay {
    pub shape: f64,
    pub scale: f64,
}

/// Outcome-generation configuration. The per-wave probability schedules
/// share the transmission schedule's change days.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutcomeConfig {
    /// Hospitalization probability per symptomatic infection, by wave.
    pub p_hospital: WaveSchedule,
    /// Death probability per hospitalization, keyed by the wave of the
    /// originating infection.
    pub p_death: WaveSchedule,
    pub hospital_delay: GammaDelay,
    pub death_delay: GammaDelay,
    /// Delay support is `0..=max_delay` days.
    pub max_delay: u32,
}

/// Discretized gamma delay distribution over integer days `0..=max_delay`.
///
/// Bin `d` carries the density mass of `[d, d+1)`; the truncated vector is
/// renormalized to sum to one.
pub fn gamma_delay_pmf(shape: f64, scale: f64, max_delay: u32) -> Vec<f64> {
    let gamma = Gamma::new(shape, 1.0 / scale).expect("positive gamma parameters");
    let mut pmf: Vec<f64> = (0..=max_delay)
        .map(|d| gamma.cdf(f64::from(d + 1)) - gamma.cdf(f64::from(d)))
        .collect();
    let total: f64 = pmf.iter().sum();
    if total > 0.0 {
        for p in &mut pmf {
            *p /= total;
        }
    } else {
        // Essentially no mass inside the horizon; degenerate to the last bin.
        *pmf.last_mut().expect("non-empty pmf") = 1.0;
    }
    pmf
}

/// Daily hospital admissions, with each day's total split by the wave of the
/// originating infection so the death stage can key fatality off it.
#[derive(Debug, Clone)]
pub struct HospitalStream {
    pub daily: Vec<u64>,
    by_origin_wave: Vec<u64>,
    waves: usize,
}

impl HospitalStream {
    /// Admissions on day `t` grouped by origin-wave index.
    pub fn origin_wave_counts(&self, t: usize) -> &[u64] {
        &self.by_origin_wave[t * self.waves..(t + 1) * self.waves]
    }
}

/// Hospital admissions over absolute days `[admit_start, admit_end)`, drawn
/// from onsets in `symptomatic`, whose first entry is absolute day
/// `slice_start`. Wave lookups use absolute days, so a slice of a longer
/// trajectory sees the same probability schedule the full pass would.
fn hospitalizations_window<R: Rng + ?Sized>(
    symptomatic: &[u64],
    slice_start: usize,
    admit_start: usize,
    admit_end: usize,
    config: &OutcomeConfig,
    rng: &mut R,
) -> HospitalStream {
    let waves = config.p_hospital.segment_count();
    let pmf = gamma_delay_pmf(config.hospital_delay.shape, config.hospital_delay.scale, config.max_delay);
    let len = admit_end - admit_start;
    let mut stream = HospitalStream {
        daily: vec![0; len],
        by_origin_wave: vec![0; len * waves],
        waves,
    };
    let onset_start = admit_start.saturating_sub(config.max_delay as usize).max(slice_start);
    for t in onset_start..admit_end {
        let count = symptomatic[t - slice_start];
        if count == 0 {
            continue;
        }
        let wave = config.p_hospital.segment_index(t as u32);
        let p = config.p_hospital.values()[wave].clamp(0.0, 1.0);
        let admitted = binomial(count, p, rng);
        if admitted == 0 {
            continue;
        }
        multinomial_scatter(admitted, &pmf, rng, |d, x| {
            let arrive = t + d;
            if (admit_start..admit_end).contains(&arrive) {
                let i = arrive - admit_start;
                stream.daily[i] += x;
                stream.by_origin_wave[i * waves + wave] += x;
            }
        });
    }
    stream
}

/// Deaths over absolute days `[emit_start, emit_end)` from a hospitalization
/// stream whose first entry is absolute day `admit_start`.
fn deaths_window<R: Rng + ?Sized>(
    hospitalizations: &HospitalStream,
    admit_start: usize,
    emit_start: usize,
    emit_end: usize,
    config: &OutcomeConfig,
    rng: &mut R,
) -> Vec<u64> {
    let pmf = gamma_delay_pmf(config.death_delay.shape, config.death_delay.scale, config.max_delay);
    let mut deaths = vec![0u64; emit_end - emit_start];
    for i in 0..hospitalizations.daily.len() {
        let t = admit_start + i;
        let mut dying = 0u64;
        for (wave, &admitted) in hospitalizations.origin_wave_counts(i).iter().enumerate() {
            if admitted == 0 {
                continue;
            }
            let p = config.p_death.values()[wave].clamp(0.0, 1.0);
            dying += binomial(admitted, p, rng);
        }
        if dying == 0 {
            continue;
        }
        multinomial_scatter(dying, &pmf, rng, |d, x| {
            let arrive = t + d;
            if (emit_start..emit_end).contains(&arrive) {
                deaths[arrive - emit_start] += x;
            }
        });
    }
    deaths
}

/// Draws hospital admissions from daily symptomatic counts.
///
/// Day `t` admits `Binomial(symptomatic[t], p_hospital(t))` people, each
/// displaced by the hospital delay; events past the end of the horizon are
/// dropped.
pub fn generate_hospitalizations<R: Rng + ?Sized>(
    symptomatic: &[u64],
    config: &OutcomeConfig,
    rng: &mut R,
) -> HospitalStream {
    hospitalizations_window(symptomatic, 0, 0, symptomatic.len(), config, rng)
}

/// Draws deaths from a tagged hospitalization stream.
///
/// Each admission dies with the death probability of its origin wave, then
/// is displaced by the death delay; events past the horizon are dropped.
pub fn generate_deaths<R: Rng + ?Sized>(
    hospitalizations: &HospitalStream,
    config: &OutcomeConfig,
    rng: &mut R,
) -> Vec<u64> {
    let days = hospitalizations.daily.len();
    deaths_window(hospitalizations, 0, 0, days, config, rng)
}

/// True hospitalization and death series for one trajectory.
#[derive(Debug, Clone)]
pub struct Outcomes {
    pub hospitalizations: Vec<u64>,
    pub deaths: Vec<u64>,
}

/// Severity chain restricted to absolute days `[emit_start,
/// emit_start + emit_len)`.
///
/// `symptomatic` covers absolute days `[slice_start, slice_start + len)` and
/// must reach back at least `2 * max_delay` days before `emit_start` (or to
/// day 0) so that every admission and death that can land in the emitted
/// range has its originating onset available. Emitted counts are
/// distributed exactly as the matching span of a full-series pass.
pub fn outcomes_window<R: Rng + ?Sized>(
    symptomatic: &[u64],
    slice_start: usize,
    emit_start: usize,
    emit_len: usize,
    config: &OutcomeConfig,
    rng: &mut R,
) -> Outcomes {
    let emit_end = emit_start + emit_len;
    assert!(emit_start >= slice_start, "emit range starts before the slice");
    assert!(
        emit_end <= slice_start + symptomatic.len(),
        "emit range runs past the slice"
    );
    let admit_start = emit_start.saturating_sub(config.max_delay as usize).max(slice_start);
    let stream = hospitalizations_window(symptomatic, slice_start, admit_start, emit_end, config, rng);
    let deaths = deaths_window(&stream, admit_start, emit_start, emit_end, config, rng);
    let hospitalizations = stream.daily[emit_start - admit_start..].to_vec();
    Outcomes { hospitalizations, deaths }
}

/// Runs the full severity chain off the symptomatic incidence series.
pub fn generate_outcomes<R: Rng + ?Sized>(
    trajectory: &TrueTrajectory,
    config: &OutcomeConfig,
    rng: &mut R,
) -> Outcomes {
    let days = trajectory.new_symptomatic.len();
    outcomes_window(&trajectory.new_symptomatic, 0, 0, days, config, rng)
}
