//! Vital dynamics and infection importation.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::compartments::Compartments;
use crate::draws::{binomial, poisson};

/// Birth/death/importation configuration. Rates are per capita per day;
/// importation is expected introductions per day.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DemographicsConfig {
    pub enabled: bool,
    pub birth_rate: f64,
    pub death_rate: f64,
    pub importation_rate: f64,
}

impl DemographicsConfig {
    pub const fn disabled() -> Self {
        Self { enabled: false, birth_rate: 0.0, death_rate: 0.0, importation_rate: 0.0 }
    }
}

/// One day of births, deaths, and importations applied in place.
///
/// Births (`Poisson(b * N)`) enter S, deaths thin every compartment with
/// probability `min(d, 1)`, and imported infections move susceptibles into
/// E — or straight into I when the scenario has no latent stage. Returns the
/// number of importations actually seated (capped by S).
pub fn demographic_step<R: Rng + ?Sized>(
    comps: &mut Compartments,
    has_latent: bool,
    config: &DemographicsConfig,
    rng: &mut R,
) -> u64 {
    if !config.enabled {
        return 0;
    }
    let n = comps.total();
    let births = poisson(config.birth_rate * n as f64, rng);
    let death_p = config.death_rate.clamp(0.0, 1.0);
    if death_p > 0.0 {
        for slot in [&mut comps.s, &mut comps.e, &mut comps.a, &mut comps.i, &mut comps.r] {
            *slot -= binomial(*slot, death_p, rng);
        }
    }
    comps.s += births;
    let imports = poisson(config.importation_rate, rng).min(comps.s);
    comps.s -= imports;
    if has_latent {
        comps.e += imports;
    } else {
        comps.i += imports;
    }
    imports
}
