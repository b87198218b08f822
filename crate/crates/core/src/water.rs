//! Waterborne transmission: direct contact plus an environmental reservoir
//! fed by shedding and drained by decay.

use crate::compartments::Compartments;
use crate::demographics::{demographic_step, DemographicsConfig};
use crate::draws::prob_from_rate;
use crate::dynamics::human_day;
use crate::error::CoreError;
use crate::h2h::{force_of_infection_h2h, initial_compartments};
use crate::intervention::{InterventionConfig, InterventionState};
use crate::params::{EpiParams, WaterParams};
use crate::rng::SimRng;
use crate::scenario::{Mode, ScenarioConfig, WaterRouteConfig};
use crate::seasonality::SeasonalForcing;
use crate::superspread::{superspread_multiplier, SuperSpreadConfig};
use crate::trajectory::{DayEvents, TrueTrajectory};
use crate::waves::WaveSchedule;

/// Deterministic end-of-day reservoir update: shedding from current
/// infectious counts (asymptomatic discounted) minus proportional decay,
/// floored at zero.
pub fn water_update(w: f64, infectious: u64, asymptomatic: u64, params: &WaterParams) -> f64 {
    let shed = params.shedding_rate
        * (infectious as f64 + params.asym_shedding * asymptomatic as f64);
    (w + shed - params.decay_rate * w).max(0.0)
}

/// Stepwise waterborne simulator with two infection routes. Cloneable
/// mid-run; see [`H2hSim`].
///
/// [`H2hSim`]: crate::h2h::H2hSim
#[derive(Debug, Clone)]
pub struct WaterSim {
    epi: EpiParams,
    beta: WaveSchedule,
    route: WaterRouteConfig,
    superspread: SuperSpreadConfig,
    intervention: InterventionConfig,
    demographics: DemographicsConfig,
    forcing: SeasonalForcing,
    ctrl: InterventionState,
    comps: Compartments,
    reservoir: f64,
    day: u32,
    days: u32,
    rng: SimRng,
}

impl WaterSim {
    pub fn new(config: &ScenarioConfig, rng: SimRng) -> Result<Self, CoreError> {
        if config.mode != Mode::Waterborne {
            return Err(CoreError::InvalidConfig(format!(
                "waterborne simulator given a {} configuration",
                config.mode
            )));
        }
        let route = config.water.clone().ok_or_else(|| {
            CoreError::InvalidConfig("waterborne scenario without reservoir parameters".into())
        })?;
        Ok(Self {
            epi: config.epi,
            beta: config.beta.clone(),
            route,
            superspread: config.superspread,
            intervention: config.intervention,
            demographics: config.demographics,
            forcing: SeasonalForcing::new(config.seasonality.clone()),
            ctrl: InterventionState::default(),
            comps: initial_compartments(config)?,
            reservoir: config.init.initial_reservoir.max(0.0),
            day: 0,
            days: config.days,
            rng,
        })
    }

    pub fn state(&self) -> Compartments {
        self.comps
    }

    pub fn reservoir(&self) -> f64 {
        self.reservoir
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
        let (contact_factor, water_factor) = if self.ctrl.active() {
            let w = self.intervention.water_reduction.unwrap_or(self.intervention.reduction);
            (self.intervention.reduction, w)
        } else {
            (1.0, 1.0)
        };
        let multiplier =
            superspread_multiplier(self.comps.i + self.comps.a, &self.superspread, &mut self.rng);
        let lambda_contact = force_of_infection_h2h(
            &self.comps,
            self.epi.alpha,
            self.beta.value_at(t) * contact_factor,
            seasonal,
            multiplier,
        )
        .unwrap_or(0.0);
        let lambda_water =
            self.route.delta.value_at(t) * water_factor * seasonal * self.reservoir;

        let mut events = human_day(
            &mut self.comps,
            &self.epi,
            prob_from_rate(lambda_contact + lambda_water),
            &mut self.rng,
        );

        let imports =
            demographic_step(&mut self.comps, self.epi.has_latent, &self.demographics, &mut self.rng);
        if !self.epi.has_latent {
            events.new_symptomatic += imports;
        }

        // Shedding reflects who is infectious at the end of the day.
        self.reservoir = water_update(self.reservoir, self.comps.i, self.comps.a, &self.route.params);

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
