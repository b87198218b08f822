//! `epiforge inspect`: dump one scenario's configuration and series
//! summaries. Output is derived entirely from corpus content, so
//! regenerating an identical corpus reproduces the dump byte for byte.

use std::fmt::Write as _;
use std::path::PathBuf;

use epiforge_data::ScenarioRecord;

use crate::config::Settings;
use crate::error::CliError;
use crate::input::{load_manifest, load_member};
use crate::output::CommandOutput;

pub struct InspectArgs {
    pub seed: Option<u64>,
    pub manifest: Option<PathBuf>,
    pub id: Option<u64>,
}

fn channel_summary(name: &str, values: &[u32]) -> String {
    let total: u64 = values.iter().map(|&v| v as u64).sum();
    let (peak_at, peak) = values
        .iter()
        .enumerate()
        .max_by_key(|&(i, &v)| (v, std::cmp::Reverse(i)))
        .map(|(i, &v)| (i, v))
        .unwrap_or((0, 0));
    let nonzero = values.iter().filter(|&&v| v > 0).count();
    format!(
        "  {name}: total {total}, peak {peak} at day {peak_at}, nonzero days {nonzero}/{}",
        values.len()
    )
}

fn dump(record: &ScenarioRecord, corpus_id: &str, master_seed: u64, id: u64) -> String {
    let config = &record.config;
    let mut out = String::new();
    let _ = writeln!(out, "corpus: {corpus_id}");
    let _ = writeln!(out, "master_seed: {master_seed}");
    let _ = writeln!(out, "scenario: {id}");
    let _ = writeln!(out, "mode: {}", config.mode);
    let _ = writeln!(out, "scenario_seed: {}", config.seed);
    let _ = writeln!(out, "population: {}", config.population);
    let _ = writeln!(out, "days: {}", config.days);
    let _ = writeln!(
        out,
        "mechanisms: latent={} asymptomatic={} waning={} seasonality={} intervention={} demographics={}",
        config.epi.has_latent,
        config.epi.has_asymptomatic,
        config.epi.has_waning,
        config.seasonality.enabled,
        config.intervention.enabled,
        config.demographics.enabled
    );
    let _ = writeln!(out, "channels:");
    for (name, values) in &record.channels {
        let _ = writeln!(out, "{}", channel_summary(name, values));
    }
    out
}

pub fn run(args: InspectArgs, settings: &Settings) -> Result<CommandOutput, CliError> {
    let seed = settings.resolve("seed", args.seed, 0)?;
    let manifest_path: PathBuf = settings
        .resolve_opt("manifest", args.manifest)?
        .ok_or_else(|| CliError::Invalid("inspect needs a corpus (--manifest PATH)".into()))?;
    let id = settings
        .resolve_opt("id", args.id)?
        .ok_or_else(|| CliError::Invalid("inspect needs a scenario id (--id N)".into()))?;
    let (dir, manifest) = load_manifest(&manifest_path)?;
    let record = load_member(&dir, &manifest, id)?;

    let mut stdout = format!("seed: {seed}\n");
    stdout.push_str(&dump(&record, &manifest.corpus_id, manifest.master_seed, id));
    Ok(CommandOutput { stdout, warnings: Vec::new() })
}
