//! Day-level super-spreading multiplier.

use rand::Rng;
use rand_distr::{Distribution, Gamma};
use serde::{Deserialize, Serialize};

use crate::draws::binomial;

/// Super-spreading configuration: a Binomial subset of the infectious pool
/// transmits with a shared Gamma-distributed intensity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuperSpreadConfig {
    /// Per-infectious-person probability of super-spreading today.
    pub probability: f64,
    /// Gamma shape of the super-spreader intensity.
    pub shape: f64,
    /// Gamma scale of the super-spreader intensity.
    pub scale: f64,
}

impl SuperSpreadConfig {
    pub const fn disabled() -> Self {
        Self { probability: 0.0, shape: 4.0, scale: 1.5 }
    }
}

/// Transmission multiplier for a day with `n_infectious` infectious people.
///
/// With `n_ss ~ Binomial(n_infectious, p)` super-spreaders of shared
/// intensity `M ~ Gamma(shape, scale)`, the blended multiplier is
/// `(1 - f) + f * M` for subset fraction `f = n_ss / n_infectious`.
/// Returns exactly 1.0 when nobody is infectious or nobody super-spreads;
/// never returns a negative value.
pub fn superspread_multiplier<R: Rng + ?Sized>(
    n_infectious: u64,
    config: &SuperSpreadConfig,
    rng: &mut R,
) -> f64 {
    if n_infectious == 0 || config.probability <= 0.0 {
        return 1.0;
    }
    let n_ss = binomial(n_infectious, config.probability.min(1.0), rng);
    if n_ss == 0 {
        return 1.0;
    }
    let m = Gamma::new(config.shape, config.scale)
        .expect("positive gamma parameters")
        .sample(rng);
    let f = n_ss as f64 / n_infectious as f64;
    (1.0 - f) + f * m
}
