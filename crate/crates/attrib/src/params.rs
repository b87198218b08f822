//! Registry of interpretable generative parameters that attribution
//! reports on.
//!
//! Each entry knows how to pull its value out of a scenario
//! configuration. Extraction returns `None` when the parameter does not
//! apply to that scenario (wrong mode, mechanism disabled), which
//! downstream summaries surface as "n/a" rather than a number. Boolean
//! mechanism switches are their own entries encoded as 0/1 so they can
//! be compared by mismatch rate instead of distance.

use epiforge_core::scenario::ScenarioConfig;

/// One reportable parameter.
#[derive(Debug, Clone, Copy)]
pub struct ParamDef {
    pub name: &'static str,
    /// True for 0/1 mechanism switches; false for continuous values.
    pub is_flag: bool,
    extract: fn(&ScenarioConfig) -> Option<f64>,
}

impl ParamDef {
    /// The parameter's value in `config`, or `None` where it does not
    /// apply.
    pub fn extract(&self, config: &ScenarioConfig) -> Option<f64> {
        (self.extract)(config)
    }
}

fn beta_initial(c: &ScenarioConfig) -> Option<f64> {
    Some(c.beta.value_at(0))
}
fn log10_population(c: &ScenarioConfig) -> Option<f64> {
    Some((c.population as f64).log10())
}
fn init_infectious(c: &ScenarioConfig) -> Option<f64> {
    Some(c.init.infectious as f64)
}
fn sigma(c: &ScenarioConfig) -> Option<f64> {
    c.epi.has_latent.then_some(c.epi.sigma)
}
fn gamma(c: &ScenarioConfig) -> Option<f64> {
    Some(c.epi.gamma)
}
fn gamma_asymptomatic(c: &ScenarioConfig) -> Option<f64> {
    c.epi.has_asymptomatic.then_some(c.epi.gamma_a)
}
fn p_asymptomatic(c: &ScenarioConfig) -> Option<f64> {
    c.epi.has_asymptomatic.then_some(c.epi.p_asymptomatic)
}
fn asymptomatic_infectiousness(c: &ScenarioConfig) -> Option<f64> {
    c.epi.has_asymptomatic.then_some(c.epi.alpha)
}
fn waning_rate(c: &ScenarioConfig) -> Option<f64> {
    c.epi.has_waning.then_some(c.epi.omega)
}
fn seasonal_amplitude(c: &ScenarioConfig) -> Option<f64> {
    if c.seasonality.enabled {
        c.seasonality.harmonics.first().map(|h| h.amplitude)
    } else {
        None
    }
}
fn superspread_probability(c: &ScenarioConfig) -> Option<f64> {
    Some(c.superspread.probability)
}
fn superspread_shape(c: &ScenarioConfig) -> Option<f64> {
    (c.superspread.probability > 0.0).then_some(c.superspread.shape)
}
fn intervention_reduction(c: &ScenarioConfig) -> Option<f64> {
    c.intervention.enabled.then_some(c.intervention.reduction)
}
fn p_hospital_initial(c: &ScenarioConfig) -> Option<f64> {
    Some(c.outcomes.p_hospital.value_at(0))
}
fn p_death_initial(c: &ScenarioConfig) -> Option<f64> {
    Some(c.outcomes.p_death.value_at(0))
}
fn reporting_initial(c: &ScenarioConfig) -> Option<f64> {
    c.observation.reporting.as_ref().map(|r| r.initial_rate)
}
fn reporting_max(c: &ScenarioConfig) -> Option<f64> {
    c.observation.reporting.as_ref().map(|r| r.max_rate)
}
fn mult_noise_sd(c: &ScenarioConfig) -> Option<f64> {
    Some(c.observation.mult_noise_sd)
}
fn overdispersion(c: &ScenarioConfig) -> Option<f64> {
    Some(c.observation.overdispersion)
}
fn vector_biting_rate(c: &ScenarioConfig) -> Option<f64> {
    c.vector.as_ref().map(|v| v.biting_rate)
}
fn vector_to_human(c: &ScenarioConfig) -> Option<f64> {
    c.vector.as_ref().map(|v| v.to_human)
}
fn vector_to_vector(c: &ScenarioConfig) -> Option<f64> {
    c.vector.as_ref().map(|v| v.to_vector)
}
fn vector_incubation_rate(c: &ScenarioConfig) -> Option<f64> {
    c.vector.as_ref().map(|v| v.sigma_v)
}
fn vector_mortality(c: &ScenarioConfig) -> Option<f64> {
    c.vector.as_ref().map(|v| v.mu_v)
}
fn vector_ratio(c: &ScenarioConfig) -> Option<f64> {
    c.vector.as_ref().map(|v| v.ratio)
}
fn water_shedding_rate(c: &ScenarioConfig) -> Option<f64> {
    c.water.as_ref().map(|w| w.params.shedding_rate)
}
fn water_decay_rate(c: &ScenarioConfig) -> Option<f64> {
    c.water.as_ref().map(|w| w.params.decay_rate)
}
fn water_delta_initial(c: &ScenarioConfig) -> Option<f64> {
    c.water.as_ref().map(|w| w.delta.value_at(0))
}
fn flag_latent(c: &ScenarioConfig) -> Option<f64> {
    Some(c.epi.has_latent as u8 as f64)
}
fn flag_asymptomatic(c: &ScenarioConfig) -> Option<f64> {
    Some(c.epi.has_asymptomatic as u8 as f64)
}
fn flag_waning(c: &ScenarioConfig) -> Option<f64> {
    Some(c.epi.has_waning as u8 as f64)
}
fn flag_seasonality(c: &ScenarioConfig) -> Option<f64> {
    Some(c.seasonality.enabled as u8 as f64)
}
fn flag_intervention(c: &ScenarioConfig) -> Option<f64> {
    Some(c.intervention.enabled as u8 as f64)
}
fn flag_demographics(c: &ScenarioConfig) -> Option<f64> {
    Some(c.demographics.enabled as u8 as f64)
}

const REGISTRY: &[ParamDef] = &[
    ParamDef { name: "beta_initial", is_flag: false, extract: beta_initial },
    ParamDef { name: "log10_population", is_flag: false, extract: log10_population },
    ParamDef { name: "init_infectious", is_flag: false, extract: init_infectious },
    ParamDef { name: "sigma", is_flag: false, extract: sigma },
    ParamDef { name: "gamma", is_flag: false, extract: gamma },
    ParamDef { name: "gamma_asymptomatic", is_flag: false, extract: gamma_asymptomatic },
    ParamDef { name: "p_asymptomatic", is_flag: false, extract: p_asymptomatic },
    ParamDef { name: "asymptomatic_infectiousness", is_flag: false, extract: asymptomatic_infectiousness },
    ParamDef { name: "waning_rate", is_flag: false, extract: waning_rate },
    ParamDef { name: "seasonal_amplitude", is_flag: false, extract: seasonal_amplitude },
    ParamDef { name: "superspread_probability", is_flag: false, extract: superspread_probability },
    ParamDef { name: "superspread_shape", is_flag: false, extract: superspread_shape },
    ParamDef { name: "intervention_reduction", is_flag: false, extract: intervention_reduction },
    ParamDef { name: "p_hospital_initial", is_flag: false, extract: p_hospital_initial },
    ParamDef { name: "p_death_initial", is_flag: false, extract: p_death_initial },
    ParamDef { name: "reporting_initial", is_flag: false, extract: reporting_initial },
    ParamDef { name: "reporting_max", is_flag: false, extract: reporting_max },
    ParamDef { name: "mult_noise_sd", is_flag: false, extract: mult_noise_sd },
    ParamDef { name: "overdispersion", is_flag: false, extract: overdispersion },
    ParamDef { name: "vector_biting_rate", is_flag: false, extract: vector_biting_rate },
    ParamDef { name: "vector_to_human", is_flag: false, extract: vector_to_human },
    ParamDef { name: "vector_to_vector", is_flag: false, extract: vector_to_vector },
    ParamDef { name: "vector_incubation_rate", is_flag: false, extract: vector_incubation_rate },
    ParamDef { name: "vector_mortality", is_flag: false, extract: vector_mortality },
    ParamDef { name: "vector_ratio", is_flag: false, extract: vector_ratio },
    ParamDef { name: "water_shedding_rate", is_flag: false, extract: water_shedding_rate },
    ParamDef { name: "water_decay_rate", is_flag: false, extract: water_decay_rate },
    ParamDef { name: "water_delta_initial", is_flag: false, extract: water_delta_initial },
    ParamDef { name: "has_latent", is_flag: true, extract: flag_latent },
    ParamDef { name: "has_asymptomatic", is_flag: true, extract: flag_asymptomatic },
    ParamDef { name: "has_waning", is_flag: true, extract: flag_waning },
    ParamDef { name: "seasonality_enabled", is_flag: true, extract: flag_seasonality },
    ParamDef { name: "intervention_enabled", is_flag: true, extract: flag_intervention },
    ParamDef { name: "demographics_enabled", is_flag: true, extract: flag_demographics },
];

/// All reportable parameters, in fixed report order.
pub fn registry() -> &'static [ParamDef] {
    REGISTRY
}

/// Looks a parameter up by name.
pub fn find(name: &str) -> Option<&'static ParamDef> {
    REGISTRY.iter().find(|p| p.name == name)
}
