//! Held-out validation: does retrieval recover generative parameters
//! better than picking library members at random?
//!
//! For each held-out scenario we compare two candidate neighbor sets —
//! the retrieved top-k and a uniformly random k-subset — by the
//! standardized parameter-space distance between each set's centroid and
//! the held-out ground truth. The report counts wins and attaches a
//! two-sided sign-test p-value.

use epiforge_core::rng::{mix_seed, RngStream};
use epiforge_core::scenario::ScenarioConfig;
use statrs::distribution::{Binomial, DiscreteCDF};

use crate::embedding::TrajectoryEmbedding;
use crate::error::AttribError;
use crate::library::LibraryIndex;
use crate::params::{registry, ParamDef};

/// Outcome of a held-out comparison run.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub cases: usize,
    pub wins: usize,
    pub losses: usize,
    pub ties: usize,
    /// Two-sided sign-test p-value over decided cases (ties dropped).
    pub p_value: f64,
}

impl ValidationReport {
    /// Fraction of all cases the first method won outright.
    pub fn win_fraction(&self) -> f64 {
        self.wins as f64 / self.cases as f64
    }

    pub fn summary(&self) -> String {
        format!(
            "{} cases: {} wins, {} losses, {} ties \
             (win fraction {:.3}, sign test p = {:.3e})",
            self.cases,
            self.wins,
            self.losses,
            self.ties,
            self.win_fraction(),
            self.p_value
        )
    }
}

/// Per-parameter scale information frozen from the library, used to put
/// all parameters on comparable footing.
struct ParamScale {
    def: &'static ParamDef,
    /// Library mean over applicable values; fallback centroid when a
    /// candidate set has no applicable member.
    mean: f64,
    /// Library standard deviation; numeric parameters with negligible
    /// spread are skipped entirely.
    sd: f64,
    usable: bool,
}

fn build_scales(library: &LibraryIndex) -> Vec<ParamScale> {
    registry()
        .iter()
        .map(|def| {
            let values: Vec<f64> = library
                .entries()
                .iter()
                .filter_map(|e| def.extract(&e.config))
                .collect();
            if values.len() < 2 {
                return ParamScale { def, mean: 0.0, sd: 1.0, usable: false };
            }
            let n = values.len() as f64;
            let mean = values.iter().sum::<f64>() / n;
            let sd =
                (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n).sqrt();
            let usable = def.is_flag || sd >= 1e-12;
            ParamScale { def, mean, sd: sd.max(1e-12), usable }
        })
        .collect()
}

/// Distance from a candidate set's parameter centroid to the truth, over
/// the parameters the truth actually has. Numeric parameters are scaled
/// by the library standard deviation; flags contribute their raw
/// mismatch fraction. A candidate set with no applicable member falls
/// back to the library mean, i.e. it contributes prior-level ignorance
/// rather than silently dropping the dimension (which would otherwise
/// shrink distances for badly matched sets).
fn centroid_distance(
    scales: &[ParamScale],
    candidates: &[&ScenarioConfig],
    truth: &ScenarioConfig,
) -> f64 {
    let mut total = 0.0;
    for scale in scales.iter().filter(|s| s.usable) {
        let Some(truth_value) = scale.def.extract(truth) else {
            continue;
        };
        let values: Vec<f64> = candidates
            .iter()
            .filter_map(|c| scale.def.extract(c))
            .collect();
        let centroid = if values.is_empty() {
            scale.mean
        } else {
            values.iter().sum::<f64>() / values.len() as f64
        };
        let diff = if scale.def.is_flag {
            centroid - truth_value
        } else {
            (centroid - truth_value) / scale.sd
        };
        total += diff * diff;
    }
    total.sqrt()
}

fn random_subset<'a>(
    library: &'a LibraryIndex,
    k: usize,
    seed: u64,
) -> Vec<&'a ScenarioConfig> {
    let mut rng = RngStream::new(seed, 0).rng();
    rand::seq::index::sample(&mut rng, library.len(), k)
        .into_iter()
        .map(|i| &library.entries()[i].config)
        .collect()
}

fn sign_test_p(wins: usize, losses: usize) -> f64 {
    let n = wins + losses;
    if n == 0 {
        return 1.0;
    }
    let dist = Binomial::new(0.5, n as u64).expect("valid binomial");
    let w = wins as u64;
    let lower = dist.cdf(w);
    let upper = if w == 0 { 1.0 } else { 1.0 - dist.cdf(w - 1) };
    (2.0 * lower.min(upper)).min(1.0)
}

fn tally(distances: impl Iterator<Item = (f64, f64)>) -> ValidationReport {
    let mut wins = 0;
    let mut losses = 0;
    let mut ties = 0;
    for (first, second) in distances {
        if first < second {
            wins += 1;
        } else if first > second {
            losses += 1;
        } else {
            ties += 1;
        }
    }
    ValidationReport {
        cases: wins + losses + ties,
        wins,
        losses,
        ties,
        p_value: sign_test_p(wins, losses),
    }
}

/// Compares retrieval against uniformly random selection on held-out
/// scenarios. Requires `1 <= k <= library.len()`.
pub fn validate_attribution(
    held_out: &[(ScenarioConfig, TrajectoryEmbedding)],
    library: &LibraryIndex,
    k: usize,
    seed: u64,
) -> Result<ValidationReport, AttribError> {
    if held_out.is_empty() {
        return Err(AttribError::InvalidArgument("no held-out scenarios".into()));
    }
    if k == 0 || k > library.len() {
        return Err(AttribError::InvalidK { k, library: library.len() });
    }
    let scales = build_scales(library);
    let mut pairs = Vec::with_capacity(held_out.len());
    for (i, (truth, embedding)) in held_out.iter().enumerate() {
        let hits = library.retrieve(embedding, k)?;
        let retrieved: Vec<&ScenarioConfig> = hits
            .iter()
            .map(|&(id, _)| &library.entry(id).expect("retrieved id exists").config)
            .collect();
        let random = random_subset(library, k, mix_seed(&[seed, i as u64, 1]));
        pairs.push((
            centroid_distance(&scales, &retrieved, truth),
            centroid_distance(&scales, &random, truth),
        ));
    }
    Ok(tally(pairs.into_iter()))
}

/// Null calibration: both candidate sets drawn uniformly at random, so
/// the win fraction must hover around one half.
pub fn validate_null(
    held_out: &[ScenarioConfig],
    library: &LibraryIndex,
    k: usize,
    seed: u64,
) -> Result<ValidationReport, AttribError> {
    if held_out.is_empty() {
        return Err(AttribError::InvalidArgument("no held-out scenarios".into()));
    }
    if k == 0 || k > library.len() {
        return Err(AttribError::InvalidK { k, library: library.len() });
    }
    let scales = build_scales(library);
    let mut pairs = Vec::with_capacity(held_out.len());
    for (i, truth) in held_out.iter().enumerate() {
        let first = random_subset(library, k, mix_seed(&[seed, i as u64, 1]));
        let second = random_subset(library, k, mix_seed(&[seed, i as u64, 2]));
        pairs.push((
            centroid_distance(&scales, &first, truth),
            centroid_distance(&scales, &second, truth),
        ));
    }
    Ok(tally(pairs.into_iter()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn sign_test_matches_hand_values() {
        // 8 wins / 2 losses: p = 2 * P(W <= 2) for W ~ Bin(10, 1/2)
        //                      = 2 * (1 + 10 + 45) / 1024 = 112/1024.
        assert_abs_diff_eq!(sign_test_p(8, 2), 112.0 / 1024.0, epsilon = 1e-12);
        // Balanced outcomes are maximally unsurprising.
        assert_abs_diff_eq!(sign_test_p(5, 5), 1.0, epsilon = 1e-12);
        // Extreme splits are two-sided: 10/0 gives 2 * (1/1024).
        assert_abs_diff_eq!(sign_test_p(10, 0), 2.0 / 1024.0, epsilon = 1e-12);
        assert_abs_diff_eq!(sign_test_p(0, 10), 2.0 / 1024.0, epsilon = 1e-12);
        assert_eq!(sign_test_p(0, 0), 1.0);
    }

    #[test]
    fn tally_counts_and_win_fraction() {
        let report = tally(
            [(1.0, 2.0), (3.0, 1.0), (2.0, 2.0), (0.5, 0.9)]
                .into_iter(),
        );
        assert_eq!(report.cases, 4);
        assert_eq!(report.wins, 2);
        assert_eq!(report.losses, 1);
        assert_eq!(report.ties, 1);
        assert_abs_diff_eq!(report.win_fraction(), 0.5, epsilon = 1e-12);
    }
}
