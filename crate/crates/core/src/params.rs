//! Natural-history and route-specific parameter blocks.

use serde::{Deserialize, Serialize};

/// Rates shared by every transmission mode. All rates are per day; daily
/// transition probabilities are `1 - exp(-rate)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpiParams {
    /// E -> infectious progression rate.
    pub sigma: f64,
    /// Symptomatic recovery rate.
    pub gamma: f64,
    /// Asymptomatic recovery rate.
    pub gamma_a: f64,
    /// R -> S waning rate.
    pub omega: f64,
    /// Probability a new infection is asymptomatic.
    pub p_asymptomatic: f64,
    /// Relative transmissibility of asymptomatic infections.
    pub alpha: f64,
    /// Whether infections pass through the exposed stage.
    pub has_latent: bool,
    /// Whether an asymptomatic branch exists.
    pub has_asymptomatic: bool,
    /// Whether immunity wanes back to susceptible.
    pub has_waning: bool,
}

/// Vector-borne coupling and vector life-cycle parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VectorParams {
    /// Daily bites per vector.
    pub biting_rate: f64,
    /// Vector-to-human transmission probability per bite.
    pub to_human: f64,
    /// Human-to-vector transmission probability per bite.
    pub to_vector: f64,
    /// Vector E -> I progression rate.
    pub sigma_v: f64,
    /// Daily vector mortality probability; also the per-capita birth rate,
    /// so the vector population is stationary in expectation.
    pub mu_v: f64,
    /// Vector-to-human population ratio.
    pub ratio: f64,
}

/// Environmental-reservoir parameters for the waterborne route.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaterParams {
    /// Reservoir units shed per symptomatic infectious person per day.
    pub shedding_rate: f64,
    /// Asymptomatic shedding relative to symptomatic.
    pub asym_shedding: f64,
    /// Daily reservoir decay fraction.
    pub decay_rate: f64,
}
