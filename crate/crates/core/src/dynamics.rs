//! Daily human compartment transitions shared by all transmission modes.

use rand::Rng;

use crate::compartments::Compartments;
use crate::draws::{binomial, prob_from_rate};
use crate::params::EpiParams;
use crate::trajectory::DayEvents;

/// One day of human transitions under simultaneous-update semantics: every
/// draw comes from the start-of-day state, then all flows apply at once.
///
/// `exposure_prob` is the per-susceptible infection probability for the day.
/// Without a latent stage, exposures become infectious immediately; without
/// an asymptomatic branch, every new infection is symptomatic.
pub(crate) fn human_day<R: Rng + ?Sized>(
    comps: &mut Compartments,
    epi: &EpiParams,
    exposure_prob: f64,
    rng: &mut R,
) -> DayEvents {
    let exposures = binomial(comps.s, exposure_prob, rng);
    let new_infectious = if epi.has_latent {
        binomial(comps.e, prob_from_rate(epi.sigma), rng)
    } else {
        exposures
    };
    let new_asymptomatic = if epi.has_asymptomatic {
        binomial(new_infectious, epi.p_asymptomatic.clamp(0.0, 1.0), rng)
    } else {
        0
    };
    let new_symptomatic = new_infectious - new_asymptomatic;
    let recovered_i = binomial(comps.i, prob_from_rate(epi.gamma), rng);
    let recovered_a = binomial(comps.a, prob_from_rate(epi.gamma_a), rng);
    let waned = if epi.has_waning { binomial(comps.r, prob_from_rate(epi.omega), rng) } else { 0 };

    comps.s = comps.s - exposures + waned;
    if epi.has_latent {
        comps.e = comps.e - new_infectious + exposures;
    }
    comps.a = comps.a - recovered_a + new_asymptomatic;
    comps.i = comps.i - recovered_i + new_symptomatic;
    comps.r = comps.r - waned + recovered_i + recovered_a;

    DayEvents { new_exposures: exposures, new_symptomatic, new_asymptomatic }
}
