//! Fully-specified scenario configuration.

use serde::{Deserialize, Serialize};

use crate::demographics::DemographicsConfig;
use crate::intervention::InterventionConfig;
use crate::observation::ObservationConfig;
use crate::outcomes::OutcomeConfig;
use crate::params::{EpiParams, VectorParams, WaterParams};
use crate::seasonality::SeasonalityConfig;
use crate::superspread::SuperSpreadConfig;
use crate::waves::WaveSchedule;

/// Transmission mode of a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    HumanToHuman,
    VectorBorne,
    Waterborne,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::HumanToHuman, Mode::VectorBorne, Mode::Waterborne];

    /// Short stable name used in manifests and CLI flags.
    pub fn name(&self) -> &'static str {
        match self {
            Mode::HumanToHuman => "h2h",
            Mode::VectorBorne => "vector",
            Mode::Waterborne => "water",
        }
    }

    pub fn parse(name: &str) -> Option<Mode> {
        match name {
            "h2h" => Some(Mode::HumanToHuman),
            "vector" => Some(Mode::VectorBorne),
            "water" => Some(Mode::Waterborne),
            _ => None,
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Resolved initial conditions; distributional draws happen at sampling time
/// so a run is fully determined by its configuration and stream.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InitConfig {
    /// People starting in R.
    pub immune: u64,
    /// People starting in I.
    pub infectious: u64,
    /// Vectors starting in E (vector mode only).
    pub vector_exposed: u64,
    /// Initial reservoir concentration (waterborne mode only).
    pub initial_reservoir: f64,
}

impl InitConfig {
    pub fn seeded(infectious: u64) -> Self {
        Self { immune: 0, infectious, vector_exposed: 0, initial_reservoir: 0.0 }
    }
}

/// Environmental route: reservoir infectivity schedule plus its dynamics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaterRouteConfig {
    /// Per-unit-reservoir infection rate by wave segment (shares the contact
    /// schedule's change days).
    pub delta: WaveSchedule,
    pub params: WaterParams,
}

/// Everything needed to run one scenario end to end.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub mode: Mode,
    /// Seed of the random streams that run this scenario (truth, outcomes,
    /// and observation each get their own stream under it).
    pub seed: u64,
    pub population: u64,
    /// Simulation horizon in days.
    pub days: u32,
    pub epi: EpiParams,
    /// Contact (or vector-coupling) transmissibility by wave segment.
    pub beta: WaveSchedule,
    pub vector: Option<VectorParams>,
    pub water: Option<WaterRouteConfig>,
    pub seasonality: SeasonalityConfig,
    pub superspread: SuperSpreadConfig,
    pub intervention: InterventionConfig,
    pub demographics: DemographicsConfig,
    pub init: InitConfig,
    pub outcomes: OutcomeConfig,
    pub observation: ObservationConfig,
}
