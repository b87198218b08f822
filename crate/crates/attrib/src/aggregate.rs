//! Parameter aggregation over retrieved neighbors, contrasted against
//! fresh prior draws.

use std::fmt::Write as _;

use epiforge_core::rng::RngStream;
use epiforge_core::sampler::{sample_mode, sample_scenario_with, ModeMix, SamplerOptions};

use crate::error::AttribError;
use crate::library::LibraryIndex;
use crate::params::registry;

/// Order-statistic summary of a parameter's values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryStats {
    pub mean: f64,
    pub median: f64,
    pub q5: f64,
    pub q95: f64,
}

impl SummaryStats {
    /// Computes the summary from raw values. Returns `None` when empty.
    pub fn from_values(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite parameter values"));
        let mean = sorted.iter().sum::<f64>() / sorted.len() as f64;
        Some(Self {
            mean,
            median: quantile(&sorted, 0.5),
            q5: quantile(&sorted, 0.05),
            q95: quantile(&sorted, 0.95),
        })
    }
}

/// Interpolating quantile over a sorted slice (the convention every
/// summary in this crate shares). With a single value every quantile is
/// that value.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let h = (n - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// One parameter's posterior-vs-prior contrast.
#[derive(Debug, Clone)]
pub struct ParameterSummary {
    pub name: &'static str,
    pub is_flag: bool,
    /// Summary over the retrieved neighbors' ground truths; `None` when
    /// the parameter applied to none of them.
    pub retrieved: Option<SummaryStats>,
    /// Summary over fresh prior draws; `None` when it applied to none.
    pub prior: Option<SummaryStats>,
    /// How many retrieved neighbors the parameter applied to.
    pub applicable: usize,
}

/// How the prior contrast sample is drawn. The seed is explicit so the
/// same report is reproducible bit for bit.
#[derive(Debug, Clone, Copy)]
pub struct PriorOptions {
    pub seed: u64,
    pub draws: usize,
    pub mix: ModeMix,
    pub options: SamplerOptions,
}

impl Default for PriorOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            draws: 2000,
            mix: ModeMix::default(),
            options: SamplerOptions::default(),
        }
    }
}

/// Full attribution output for one query.
#[derive(Debug, Clone)]
pub struct AttributionResult {
    pub k: usize,
    /// `(scenario id, standardized distance)` ascending by distance.
    pub retrieved: Vec<(u64, f64)>,
    pub parameters: Vec<ParameterSummary>,
    pub prior_seed: u64,
    pub prior_draws: usize,
}

const NA: &str = "n/a";

fn push_stats(line: &mut String, stats: Option<&SummaryStats>) {
    match stats {
        Some(s) => {
            let _ = write!(line, ",{},{},{}", s.median, s.q5, s.q95);
        }
        None => {
            let _ = write!(line, ",{NA},{NA},{NA}");
        }
    }
}

impl AttributionResult {
    /// CSV table: one row per parameter, retrieved and prior
    /// median/q5/q95 side by side, `n/a` where a parameter does not
    /// apply.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from(
            "parameter,retrieved_median,retrieved_q5,retrieved_q95,\
             prior_median,prior_q5,prior_q95\n",
        );
        for p in &self.parameters {
            let mut line = p.name.to_string();
            push_stats(&mut line, p.retrieved.as_ref());
            push_stats(&mut line, p.prior.as_ref());
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    /// Human-readable report.
    pub fn summary(&self) -> String {
        let mut out = format!(
            "attribution over {} neighbors (prior contrast: {} draws, seed {})\n",
            self.k, self.prior_draws, self.prior_seed
        );
        let _ = writeln!(
            out,
            "{:<28} {:>12} {:>24} {:>12} {:>24}",
            "parameter", "retr med", "retr [q5, q95]", "prior med", "prior [q5, q95]"
        );
        for p in &self.parameters {
            let fmt_block = |s: Option<&SummaryStats>| match s {
                Some(s) => (
                    format!("{:.4}", s.median),
                    format!("[{:.4}, {:.4}]", s.q5, s.q95),
                ),
                None => (NA.to_string(), NA.to_string()),
            };
            let (rm, ri) = fmt_block(p.retrieved.as_ref());
            let (pm, pi) = fmt_block(p.prior.as_ref());
            let _ = writeln!(out, "{:<28} {rm:>12} {ri:>24} {pm:>12} {pi:>24}", p.name);
        }
        out
    }
}

/// Draws `prior.draws` configurations from the generative prior, one
/// dedicated substream per draw.
pub fn prior_sample(
    prior: &PriorOptions,
) -> Vec<epiforge_core::scenario::ScenarioConfig> {
    (0..prior.draws)
        .map(|i| {
            let mut rng = RngStream::new(prior.seed, i as u64).rng();
            let mode = sample_mode(&prior.mix, &mut rng);
            sample_scenario_with(mode, prior.options, &mut rng)
        })
        .collect()
}

fn summarize_values(
    extracted: impl Iterator<Item = Option<f64>>,
) -> (Option<SummaryStats>, usize) {
    let values: Vec<f64> = extracted.flatten().collect();
    (SummaryStats::from_values(&values), values.len())
}

/// Summarizes every registered parameter over the retrieved neighbors'
/// ground truths and contrasts each against fresh prior draws.
///
/// `retrieved` is the `(id, distance)` list from
/// [`LibraryIndex::retrieve`]; ids must exist in `library`.
pub fn aggregate_parameters(
    library: &LibraryIndex,
    retrieved: &[(u64, f64)],
    prior: &PriorOptions,
) -> Result<AttributionResult, AttribError> {
    if retrieved.is_empty() {
        return Err(AttribError::InvalidArgument(
            "cannot aggregate over zero retrieved neighbors".into(),
        ));
    }
    let mut configs = Vec::with_capacity(retrieved.len());
    for &(id, _) in retrieved {
        let entry = library.entry(id).ok_or_else(|| {
            AttribError::InvalidArgument(format!("retrieved id {id} not in library"))
        })?;
        configs.push(&entry.config);
    }
    let prior_configs = prior_sample(prior);
    let parameters = registry()
        .iter()
        .map(|def| {
            let (retrieved_stats, applicable) =
                summarize_values(configs.iter().map(|c| def.extract(c)));
            let (prior_stats, _) =
                summarize_values(prior_configs.iter().map(|c| def.extract(c)));
            ParameterSummary {
                name: def.name,
                is_flag: def.is_flag,
                retrieved: retrieved_stats,
                prior: prior_stats,
                applicable,
            }
        })
        .collect();
    Ok(AttributionResult {
        k: retrieved.len(),
        retrieved: retrieved.to_vec(),
        parameters,
        prior_seed: prior.seed,
        prior_draws: prior.draws,
    })
}
