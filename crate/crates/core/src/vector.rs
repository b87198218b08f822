//! Arthropod-vectored transmission: SEAIR humans coupled to an SEI vector
//! population with fast birth-death turnover.

use crate::compartments::{Compartments, VectorCompartments};
use crate::demographics::{demographic_step, DemographicsConfig};
use crate::draws::{binomial, poisson, prob_from_rate};
use crate::dynamics::human_day;
use crate::error::CoreError;
use crate::h2h::initial_compartments;
use crate::intervention::{InterventionConfig, InterventionState};
use crate::params::{EpiParams, VectorParams};
use crate::rng::SimRng;
use crate::scenario::{Mode, ScenarioConfig};
use crate::seasonality::SeasonalForcing;
use crate::trajectory::{DayEvents, TrueTrajectory};
use crate::waves::WaveSchedule;

/// Cross-species forces of infection `(human, vector)` for one day.
///
/// Human risk scales with the infectious vector fraction, vector risk with
/// the infectious human fraction; both share the biting rate, the seasonal
/// factor, the transmissibility schedule, and any intervention reduction.
pub fn forces_of_infection_vector(
    humans: &Compartments,
    vectors: &VectorCompartments,
    params: &VectorParams,
    alpha: f64,
    beta_eff: f64,
    seasonal: f64,
) -> Result<(f64, f64), CoreError> {
    let n_h = humans.total();
    if n_h == 0 {
        return Err(CoreError::EmptyPopulation);
    }
    let n_v = vectors.total();
    let infectious_vector_frac =
        if n_v == 0 { 0.0 } else { vectors.i as f64 / n_v as f64 };
    let infectious_human_frac = humans.infectious_load(alpha) / n_h as f64;
    let shared = params.biting_rate * beta_eff * seasonal;
    let to_humans = shared * params.to_human * infectious_vector_frac;
    let to_vectors = shared * params.to_vector * infectious_human_frac;
    Ok((to_humans, to_vectors))
}

/// Stepwise vector-borne simulator. Cloneable mid-run; see [`H2hSim`].
///
/// [`H2hSim`]: crate::h2h::H2hSim
#[derive(Debug, Clone)]
pub struct VectorSim {
    epi: EpiParams,
    params: VectorParams,
    beta: WaveSchedule,
    intervention: InterventionConfig,
    demographics: DemographicsConfig,
    forcing: SeasonalForcing,
    ctrl: InterventionState,
    humans: Compartments,
    vectors: VectorCompartments,
    day: u32,
    days: u32,
    rng: SimRng,
}

impl VectorSim {
    pub fn new(config: &ScenarioConfig, rng: SimRng) -> Result<Self, CoreError> {
        if config.mode != Mode::VectorBorne {
            return Err(CoreError::InvalidConfig(format!(
                "vector simulator given a {} configuration",
                config.mode
            )));
        }
        let params = config.vector.ok_or_else(|| {
            CoreError::InvalidConfig("vector-borne scenario without vector parameters".into())
        })?;
        if params.ratio <= 0.0 {
            return Err(CoreError::InvalidConfig("vector-to-host ratio must be positive".into()));
        }
        let humans = initial_compartments(config)?;
        let n_v = (config.population as f64 * params.ratio).round() as u64;
        let exposed = config.init.vector_exposed.min(n_v);
        let vectors = VectorCompartments { s: n_v - exposed, e: exposed, i: 0 };
        Ok(Self {
            epi: config.epi,
            params,
            beta: config.beta.clone(),
            intervention: config.intervention,
            demographics: config.demographics,
            forcing: SeasonalForcing::new(config.seasonality.clone()),
            ctrl: InterventionState::default(),
            humans,
            vectors,
            day: 0,
            days: config.days,
            rng,
        })
    }

    pub fn state(&self) -> Compartments {
        self.humans
    }

    pub fn vector_state(&self) -> VectorCompartments {
        self.vectors
    }

    pub fn day(&self) -> u32 {
        self.day
    }

    pub fn fork(&self, rng: SimRng) -> Self {
        let mut sim = self.clone();
        sim.rng = rng;
        sim
    }

    pub fn step(&mut self) -> DayEvents {
        let t = self.day;
        let seasonal = self.forcing.factor(t, &mut self.rng);
        let reduction = if self.ctrl.active() { self.intervention.reduction } else { 1.0 };
        let beta_eff = self.beta.value_at(t) * reduction;
        let (lambda_h, lambda_v) = forces_of_infection_vector(
            &self.humans,
            &self.vectors,
            &self.params,
            self.epi.alpha,
            beta_eff,
            seasonal,
        )
        .unwrap_or((0.0, 0.0));

        let mut events =
            human_day(&mut self.humans, &self.epi, prob_from_rate(lambda_h), &mut self.rng);

        // Vector transitions, also drawn from the start-of-day state.
        let v_exposures = binomial(self.vectors.s, prob_from_rate(lambda_v), &mut self.rng);
        let v_onsets = binomial(self.vectors.e, prob_from_rate(self.params.sigma_v), &mut self.rng);
        self.vectors.s -= v_exposures;
        self.vectors.e = self.vectors.e - v_onsets + v_exposures;
        self.vectors.i += v_onsets;

        // Turnover: mortality strikes the post-transition pools, replacement
        // births (all susceptible) balance the pre-mortality count in
        // expectation.
        let n_v = self.vectors.total();
        let mortality = self.params.mu_v.clamp(0.0, 1.0);
        self.vectors.s -= binomial(self.vectors.s, mortality, &mut self.rng);
        self.vectors.e -= binomial(self.vectors.e, mortality, &mut self.rng);
        self.vectors.i -= binomial(self.vectors.i, mortality, &mut self.rng);
        self.vectors.s += poisson(mortality * n_v as f64, &mut self.rng);

        let imports =
            demographic_step(&mut self.humans, self.epi.has_latent, &self.demographics, &mut self.rng);
        if !self.epi.has_latent {
            events.new_symptomatic += imports;
        }

        self.ctrl.step(events.new_symptomatic, &self.intervention);
        self.day += 1;
        events
    }

    /// Runs to the horizon (the remaining days, when resumed mid-run).
    pub fn run(mut self) -> TrueTrajectory {
        let remaining = self.days.saturating_sub(self.day) as usize;
        let mut traj = TrueTrajectory::with_capacity(self.humans.total(), self.humans, remaining);
        for _ in 0..remaining {
            let events = self.step();
            traj.push(events, self.humans);
        }
        traj
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::InitConfig;
    use rand::SeedableRng;

    fn base_config() -> ScenarioConfig {
        ScenarioConfig {
            mode: Mode::VectorBorne,
            seed: 0,
            population: 100_000,
            days: 730,
            epi: EpiParams {
                sigma: 0.2,
                gamma: 0.15,
                gamma_a: 0.15,
                omega: 0.01,
                p_asymptomatic: 0.3,
                alpha: 0.4,
                has_latent: true,
                has_asymptomatic: true,
                has_waning: true,
            },
            beta: WaveSchedule::constant(0.6),
            vector: Some(VectorParams {
                biting_rate: 0.6,
                to_human: 0.5,
                to_vector: 0.5,
                sigma_v: 0.2,
                mu_v: 0.05,
                ratio: 2.0,
            }),
            water: None,
            seasonality: crate::seasonality::SeasonalityConfig::disabled(1.2),
            superspread: crate::superspread::SuperSpreadConfig::disabled(),
            intervention: InterventionConfig::disabled(),
            demographics: DemographicsConfig::disabled(),
            init: InitConfig { immune: 0, infectious: 50, vector_exposed: 100, initial_reservoir: 0.0 },
            outcomes: crate::test_support::outcome_config_off(),
            observation: crate::observation::ObservationConfig::transparent(),
        }
    }

    #[test]
    fn requires_vector_parameters() {
        let mut config = base_config();
        config.vector = None;
        assert!(VectorSim::new(&config, SimRng::seed_from_u64(0)).is_err());
    }

    #[test]
    fn forces_match_hand_values() {
        let humans = Compartments { s: 8_000, e: 0, a: 500, i: 1_000, r: 500 };
        let vectors = VectorCompartments { s: 15_000, e: 2_000, i: 3_000 };
        let params = VectorParams {
            biting_rate: 0.5,
            to_human: 0.4,
            to_vector: 0.6,
            sigma_v: 0.1,
            mu_v: 0.05,
            ratio: 2.0,
        };
        let (lh, lv) =
            forces_of_infection_vector(&humans, &vectors, &params, 0.5, 0.8, 1.2).unwrap();
        let shared = 0.5 * 0.8 * 1.2;
        assert!((lh - shared * 0.4 * (3_000.0 / 20_000.0)).abs() < 1e-15);
        assert!((lv - shared * 0.6 * (1_250.0 / 10_000.0)).abs() < 1e-15);
    }

    #[test]
    fn vector_scaffold_is_sized_by_ratio() {
        let config = base_config();
        let sim = VectorSim::new(&config, SimRng::seed_from_u64(1)).unwrap();
        assert_eq!(sim.vector_state().total(), 200_000);
        assert_eq!(sim.vector_state().e, 100);
    }

    #[test]
    fn turnover_holds_vector_population_near_equilibrium() {
        let mut config = base_config();
        config.population = 50_000;
        config.init = InitConfig { immune: 0, infectious: 0, vector_exposed: 0, initial_reservoir: 0.0 };
        config.days = 2_000;
        let mut sim = VectorSim::new(&config, SimRng::seed_from_u64(9)).unwrap();
        let start = sim.vector_state().total();
        assert_eq!(start, 100_000);
        let mut running = 0u64;
        for _ in 0..config.days {
            sim.step();
            running += sim.vector_state().total();
        }
        let mean = running as f64 / config.days as f64;
        assert!(
            (mean - start as f64).abs() / (start as f64) < 0.05,
            "mean vector population {mean} vs start {start}"
        );
    }

    #[test]
    fn total_mortality_empties_vectors_before_rebirth() {
        let mut config = base_config();
        config.vector = Some(VectorParams { mu_v: 1.0, ..config.vector.unwrap() });
        config.init = InitConfig { immune: 0, infectious: 0, vector_exposed: 500, initial_reservoir: 0.0 };
        let mut sim = VectorSim::new(&config, SimRng::seed_from_u64(4)).unwrap();
        sim.step();
        let v = sim.vector_state();
        // Every carryover vector died; survivors are all newborn susceptibles.
        assert_eq!(v.e, 0);
        assert_eq!(v.i, 0);
        assert!(v.s > 0);
    }

    #[test]
    fn epidemic_propagates_through_the_vector_bridge() {
        let config = base_config();
        let traj = VectorSim::new(&config, SimRng::seed_from_u64(12)).unwrap().run();
        let total: u64 = traj.new_exposures.iter().sum();
        assert!(total > 5_000, "only {total} human exposures over two years");
        assert!(traj.compartments.iter().all(|c| c.total() == 100_000));
    }

    #[test]
    fn no_infection_means_quiet_humans_despite_vector_churn() {
        let mut config = base_config();
        config.init = InitConfig { immune: 0, infectious: 0, vector_exposed: 0, initial_reservoir: 0.0 };
        config.days = 200;
        let traj = VectorSim::new(&config, SimRng::seed_from_u64(2)).unwrap().run();
        assert!(traj.new_exposures.iter().all(|&x| x == 0));
        assert!(traj.compartments.iter().all(|c| c.s == 100_000));
    }
}
