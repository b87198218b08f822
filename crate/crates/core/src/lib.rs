//! Stochastic epidemic scenario engine.
//!
//! Three daily-step transmission simulators (direct contact, vector-borne,
//! waterborne), a clinical outcome layer (hospitalizations and deaths with
//! gamma-distributed delays), a surveillance observation pipeline (noise,
//! underreporting, lab artifacts, reporting delays, weekday effects), and
//! the priors that draw complete scenario configurations.
//!
//! Everything is driven by addressed random streams: a scenario is fully
//! determined by its configuration, which carries its own seed. Truth,
//! outcomes, and observation each consume a dedicated stream under that
//! seed, so regenerating any part of a scenario is cheap and exact.

pub mod compartments;
pub mod demographics;
mod draws;
mod dynamics;
pub mod error;
pub mod h2h;
pub mod intervention;
pub mod observation;
pub mod outcomes;
pub mod params;
pub mod rng;
pub mod sampler;
pub mod scenario;
pub mod seasonality;
pub mod series;
pub mod superspread;
pub mod trajectory;
pub mod vector;
pub mod water;
pub mod waves;

pub use compartments::{Compartments, VectorCompartments};
pub use demographics::DemographicsConfig;
pub use error::CoreError;
pub use h2h::{force_of_infection_h2h, H2hSim};
pub use intervention::{InterventionConfig, InterventionState};
pub use observation::{
    observe, observe_window, DelayConfig, LabConfig, ObservationConfig, ReportingConfig,
    WeekdayConfig, WindowObservation,
};
pub use outcomes::{generate_outcomes, outcomes_window, GammaDelay, OutcomeConfig, Outcomes};
pub use params::{EpiParams, VectorParams, WaterParams};
pub use rng::{mix_seed, RngStream, SimRng};
pub use sampler::{
    sample_mode, sample_scenario, sample_scenario_with, ModeMix, SamplerOptions,
    OUTCOME_MAX_DELAY, SIMULATION_DAYS,
};
pub use scenario::{InitConfig, Mode, ScenarioConfig, WaterRouteConfig};
pub use seasonality::{Harmonic, SeasonalForcing, SeasonalityConfig};
pub use series::{ObservedSeries, Resolution};
pub use superspread::SuperSpreadConfig;
pub use trajectory::{DayEvents, TrueTrajectory};
pub use vector::{forces_of_infection_vector, VectorSim};
pub use water::{water_update, WaterSim};
pub use waves::WaveSchedule;

/// Stream ids under a scenario's seed.
pub const STREAM_TRUTH: u64 = 0;
pub const STREAM_OUTCOMES: u64 = 1;
pub const STREAM_OBSERVATION: u64 = 2;

/// Full output of one scenario: ground truth, clinical outcomes, and the
/// surveillance view of both.
#[derive(Debug, Clone)]
pub struct ScenarioRun {
    pub trajectory: TrueTrajectory,
    pub outcomes: Outcomes,
    pub observed: ObservedSeries,
}

/// Runs the transmission layer only, on the truth stream of `config.seed`.
pub fn run_truth(config: &ScenarioConfig) -> Result<TrueTrajectory, CoreError> {
    let rng = RngStream::new(config.seed, STREAM_TRUTH).rng();
    match config.mode {
        Mode::HumanToHuman => Ok(H2hSim::new(config, rng)?.run()),
        Mode::VectorBorne => Ok(VectorSim::new(config, rng)?.run()),
        Mode::Waterborne => Ok(WaterSim::new(config, rng)?.run()),
    }
}

/// Runs a scenario end to end: truth, then outcomes, then observation, each
/// on its own stream under the scenario seed.
pub fn run_scenario(config: &ScenarioConfig) -> Result<ScenarioRun, CoreError> {
    let trajectory = run_truth(config)?;
    let mut outcome_rng = RngStream::new(config.seed, STREAM_OUTCOMES).rng();
    let outcomes = generate_outcomes(&trajectory, &config.outcomes, &mut outcome_rng);
    let mut obs_rng = RngStream::new(config.seed, STREAM_OBSERVATION).rng();
    let observed = observe(&trajectory, &outcomes, &config.observation, &mut obs_rng);
    Ok(ScenarioRun { trajectory, outcomes, observed })
}

#[cfg(test)]
pub(crate) mod test_support {
    use crate::outcomes::{GammaDelay, OutcomeConfig};
    use crate::waves::WaveSchedule;

    /// Outcome layer that never admits anyone; keeps transmission tests free
    /// of clinical draws.
    pub(crate) fn outcome_config_off() -> OutcomeConfig {
        OutcomeConfig {
            p_hospital: WaveSchedule::constant(0.0),
            p_death: WaveSchedule::constant(0.0),
            hospital_delay: GammaDelay { shape: 2.0, scale: 1.0 },
            death_delay: GammaDelay { shape: 2.0, scale: 1.0 },
            max_delay: 14,
        }
    }
}
