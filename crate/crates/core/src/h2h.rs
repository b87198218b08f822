//! Direct contact transmission with optional latency, asymptomatic carriage,
//! waning, seasonality, superspreading, interventions, and vital dynamics.

use crate::compartments::Compartments;
use crate::demographics::{demographic_step, DemographicsConfig};
use crate::draws::prob_from_rate;
use crate::dynamics::human_day;
use crate::error::CoreError;
use crate::intervention::{InterventionConfig, InterventionState};
use crate::params::EpiParams;
use crate::rng::SimRng;
use crate::scenario::{Mode, ScenarioConfig};
use crate::seasonality::SeasonalForcing;
use crate::superspread::{superspread_multiplier, SuperSpreadConfig};
use crate::trajectory::{DayEvents, TrueTrajectory};
use crate::waves::WaveSchedule;

/// Contact-route force of infection on one day:
/// `beta_eff * seasonal * (I + alpha * A) / N * multiplier`.
///
/// `beta_eff` already carries any intervention reduction; `multiplier` is the
/// day's superspreading factor.
pub fn force_of_infection_h2h(
    comps: &Compartments,
    alpha: f64,
    beta_eff: f64,
    seasonal: f64,
    multiplier: f64,
) -> Result<f64, CoreError> {
    let n = comps.total();
    if n == 0 {
        return Err(CoreError::EmptyPopulation);
    }
    let load = comps.infectious_load(alpha) / n as f64;
    Ok(beta_eff * seasonal * load * multiplier)
}

pub(crate) fn initial_compartments(config: &ScenarioConfig) -> Result<Compartments, CoreError> {
    let n = config.population;
    if n == 0 {
        return Err(CoreError::EmptyPopulation);
    }
    let immune = config.init.immune.min(n);
    let infectious = config.init.infectious.min(n - immune);
    Ok(Compartments { s: n - immune - infectious, e: 0, a: 0, i: infectious, r: immune })
}

/// Stepwise contact-transmission simulator. Cloneable mid-run so conditional
/// futures can be drawn from a common past.
#[derive(Debug, Clone)]
pub struct H2hSim {
    epi: EpiParams,
    beta: WaveSchedule,
    superspread: SuperSpreadConfig,
    intervention: InterventionConfig,
    demographics: DemographicsConfig,
    forcing: SeasonalForcing,
    ctrl: InterventionState,
    comps: Compartments,
    day: u32,
    days: u32,
    rng: SimRng,
}

impl H2hSim {
    pub fn new(config: &ScenarioConfig, rng: SimRng) -> Result<Self, CoreError> {
        if config.mode != Mode::HumanToHuman {
            return Err(CoreError::InvalidConfig(format!(
                "contact simulator given a {} configuration",
                config.mode
            )));
        }
        Ok(Self {
            epi: config.epi,
            beta: config.beta.clone(),
            superspread: config.superspread,
            intervention: config.intervention,
            demographics: config.demographics,
            forcing: SeasonalForcing::new(config.seasonality.clone()),
            ctrl: InterventionState::default(),
            comps: initial_compartments(config)?,
            day: 0,
            days: config.days,
            rng,
        })
    }

    pub fn state(&self) -> Compartments {
        self.comps
    }

    pub fn day(&self) -> u32 {
        self.day
    }

    pub fn intervention_active(&self) -> bool {
        self.ctrl.active()
    }

    /// Replaces the random stream, keeping epidemic state. Pair with `clone`
    /// to branch divergent continuations from one trajectory prefix.
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
        let multiplier =
            superspread_multiplier(self.comps.i + self.comps.a, &self.superspread, &mut self.rng);
        let lambda =
            force_of_infection_h2h(&self.comps, self.epi.alpha, beta_eff, seasonal, multiplier)
                .unwrap_or(0.0);

        let mut events = human_day(&mut self.comps, &self.epi, prob_from_rate(lambda), &mut self.rng);

        let imports =
            demographic_step(&mut self.comps, self.epi.has_latent, &self.demographics, &mut self.rng);
        if !self.epi.has_latent {
            // Imported infections land straight in I, so surveillance sees them.
            events.new_symptomatic += imports;
        }

        self.ctrl.step(events.new_symptomatic, &self.intervention);
        self.day += 1;
        events
    }

    /// Runs to the horizon (the remaining days, when resumed mid-run).
    pub fn run(mut self) -> TrueTrajectory {
        let remaining = self.days.saturating_sub(self.day) as usize;
        let mut traj = TrueTrajectory::with_capacity(self.comps.total(), self.comps, remaining);
        for _ in 0..remaining {
            let events = self.step();
            traj.push(events, self.comps);
        }
        traj
    }
}
