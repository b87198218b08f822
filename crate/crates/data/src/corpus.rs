//! Corpus generation: sample scenarios, simulate them in parallel, and
//! write one record file per scenario plus a manifest.
//!
//! Each scenario index owns the random stream `(master_seed, index)`, and
//! every draw that shapes that scenario happens on streams derived from it.
//! Worker threads only decide *when* an index is processed, never *what* it
//! produces, so the emitted bytes are identical for any worker count.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use epiforge_core::{
    sample_mode, sample_scenario_with, ModeMix, RngStream, SamplerOptions, ScenarioConfig,
};
use rayon::prelude::*;

use crate::error::DataError;
use crate::manifest::{DatasetManifest, ManifestEntry, MANIFEST_VERSION};
use crate::record::{read_record, write_scenario, ScenarioRecord, OBS_CASES, OBS_DEATHS};

/// Instructions for building one corpus.
#[derive(Debug, Clone)]
pub struct GenerationSpec {
    pub corpus_id: String,
    pub master_seed: u64,
    /// Number of scenarios to generate.
    pub size: u32,
    /// Transmission-mode weights used when sampling each scenario.
    pub mix: ModeMix,
    pub options: SamplerOptions,
    pub out_dir: PathBuf,
    /// Worker threads for simulation; must be at least 1.
    pub workers: usize,
}

/// Throughput accounting for one generation run.
#[derive(Debug, Clone, Copy)]
pub struct GenerationReport {
    pub scenarios: u32,
    pub simulated_days: u64,
    pub person_days: u128,
    pub elapsed: Duration,
}

impl GenerationReport {
    pub fn days_per_second(&self) -> f64 {
        self.simulated_days as f64 / self.elapsed.as_secs_f64().max(1e-9)
    }

    pub fn person_days_per_second(&self) -> f64 {
        self.person_days as f64 / self.elapsed.as_secs_f64().max(1e-9)
    }
}

/// File name of a scenario record within its corpus directory.
pub fn scenario_filename(index: u32) -> String {
    format!("scenario_{index:06}.bin")
}

/// Conventional manifest location within a corpus directory.
pub fn manifest_path(dir: &Path) -> PathBuf {
    dir.join("manifest.tsv")
}

/// Samples the configuration owned by `index`. The scenario's own seed is
/// the first draw on stream `(master_seed, index)`, so reruns of a single
/// index reproduce the full corpus member exactly.
pub fn scenario_config_at(
    master_seed: u64,
    index: u32,
    mix: &ModeMix,
    options: &SamplerOptions,
) -> ScenarioConfig {
    let mut rng = RngStream::new(master_seed, index as u64).rng();
    let mode = sample_mode(mix, &mut rng);
    sample_scenario_with(mode, *options, &mut rng)
}

fn channel_total(record: &ScenarioRecord, name: &str) -> u64 {
    record
        .channel(name)
        .map(|values| values.iter().map(|&v| v as u64).sum())
        .unwrap_or(0)
}

fn channel_peak(record: &ScenarioRecord, name: &str) -> u64 {
    record
        .channel(name)
        .and_then(|values| values.iter().max())
        .map(|&v| v as u64)
        .unwrap_or(0)
}

fn generate_one(
    spec: &GenerationSpec,
    index: u32,
) -> Result<(ManifestEntry, u64, u128), DataError> {
    let config = scenario_config_at(spec.master_seed, index, &spec.mix, &spec.options);
    let run = epiforge_core::run_scenario(&config)?;
    let path = spec.out_dir.join(scenario_filename(index));
    write_scenario(&config, &run, &path)?;
    let record = ScenarioRecord::from_run(&config, &run)?;
    let entry = ManifestEntry {
        index: index as u64,
        mode: config.mode,
        seed: config.seed,
        path: scenario_filename(index),
        days: config.days,
        population: config.population,
        total_obs_cases: channel_total(&record, OBS_CASES),
        peak_obs_cases: channel_peak(&record, OBS_CASES),
        total_obs_deaths: channel_total(&record, OBS_DEATHS),
    };
    let days = config.days as u64;
    let person_days = days as u128 * config.population as u128;
    Ok((entry, days, person_days))
}

/// Generates the corpus described by `spec`: one record file per scenario
/// plus `manifest.tsv`, all under `spec.out_dir`.
pub fn generate_corpus(
    spec: &GenerationSpec,
) -> Result<(DatasetManifest, GenerationReport), DataError> {
    if spec.workers == 0 {
        return Err(DataError::Invalid("worker count must be at least 1".into()));
    }
    if spec.corpus_id.is_empty() || spec.corpus_id.contains(['\t', '\n']) {
        return Err(DataError::Invalid(format!("unusable corpus id {:?}", spec.corpus_id)));
    }
    std::fs::create_dir_all(&spec.out_dir).map_err(DataError::io(&spec.out_dir))?;

    let started = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.workers)
        .build()
        .map_err(|e| DataError::Invalid(format!("worker pool: {e}")))?;
    let results: Result<Vec<_>, DataError> = pool.install(|| {
        (0..spec.size)
            .into_par_iter()
            .map(|index| generate_one(spec, index))
            .collect()
    });
    let results = results?;
    let elapsed = started.elapsed();

    let mut entries = Vec::with_capacity(results.len());
    let mut simulated_days = 0u64;
    let mut person_days = 0u128;
    for (entry, days, persons) in results {
        entries.push(entry);
        simulated_days += days;
        person_days += persons;
    }
    let manifest = DatasetManifest {
        corpus_id: spec.corpus_id.clone(),
        master_seed: spec.master_seed,
        version: MANIFEST_VERSION,
        entries,
    };
    manifest.validate()?;
    manifest.write(&manifest_path(&spec.out_dir))?;
    let report = GenerationReport {
        scenarios: spec.size,
        simulated_days,
        person_days,
        elapsed,
    };
    Ok((manifest, report))
}

/// Reads one scenario record named by a manifest entry, resolving its
/// relative path against the corpus directory.
pub fn load_scenario(dir: &Path, entry: &ManifestEntry) -> Result<ScenarioRecord, DataError> {
    read_record(&dir.join(&entry.path))
}

/// Convenience: manifest plus every record it names, in index order.
pub fn load_corpus(dir: &Path) -> Result<(DatasetManifest, Vec<ScenarioRecord>), DataError> {
    let manifest = DatasetManifest::read(&manifest_path(dir))?;
    let records = manifest
        .entries
        .iter()
        .map(|entry| load_scenario(dir, entry))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((manifest, records))
}
