//! Shared input plumbing: series from CSV files or corpus members, and
//! weekly embedding inputs for attribution.

use std::path::{Path, PathBuf};

use epiforge_attrib::{embed, EmbeddingInput, TrajectoryEmbedding};
use epiforge_core::{ObservedSeries, Resolution};
use epiforge_data::{
    aggregate_weekly, import_csv, load_scenario, ColumnMap, DatasetManifest, ScenarioRecord,
    OBS_CASES, OBS_DEATHS, OBS_HOSPITALIZATIONS,
};

use crate::error::CliError;

/// Resolved CSV column names for series input.
pub struct CsvColumns {
    pub date: String,
    pub cases: String,
    pub hosp: Option<String>,
    pub deaths: Option<String>,
}

/// Imports a CSV series, returning a display id (the file stem) and the
/// series itself.
pub fn load_csv_series(
    path: &Path,
    columns: &CsvColumns,
    population: u64,
) -> Result<(String, ObservedSeries), CliError> {
    let map = ColumnMap {
        date: columns.date.clone(),
        cases: Some(columns.cases.clone()),
        hospitalizations: columns.hosp.clone(),
        deaths: columns.deaths.clone(),
    };
    let series = import_csv(path, &map, population)?;
    let id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "series".into());
    Ok((id, series))
}

/// Accepts either a corpus directory or a direct path to its
/// manifest.tsv; returns the corpus directory and the parsed manifest.
pub fn load_manifest(path: &Path) -> Result<(PathBuf, DatasetManifest), CliError> {
    let manifest_file = if path.is_dir() {
        epiforge_data::manifest_path(path)
    } else {
        path.to_path_buf()
    };
    let dir = manifest_file
        .parent()
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."));
    let manifest = DatasetManifest::read(&manifest_file)?;
    Ok((dir, manifest))
}

/// Loads the record for scenario `id`; an id outside the manifest is
/// invalid input.
pub fn load_member(
    dir: &Path,
    manifest: &DatasetManifest,
    id: u64,
) -> Result<ScenarioRecord, CliError> {
    let entry = manifest
        .entries
        .iter()
        .find(|e| e.index == id)
        .ok_or_else(|| {
            CliError::Invalid(format!(
                "unknown scenario id {id}: manifest {:?} holds indices 0..{}",
                manifest.corpus_id,
                manifest.entries.len()
            ))
        })?;
    Ok(load_scenario(dir, entry)?)
}

/// The surveillance view stored in a record, as a daily series.
pub fn record_series(record: &ScenarioRecord) -> Result<ObservedSeries, CliError> {
    let channel = |name: &str| record.channel_u64(name);
    let cases = channel(OBS_CASES).ok_or_else(|| {
        CliError::Invalid("record has no observed case channel".into())
    })?;
    Ok(ObservedSeries {
        resolution: record.resolution,
        population: record.config.population,
        cases: Some(cases),
        hospitalizations: channel(OBS_HOSPITALIZATIONS),
        deaths: channel(OBS_DEATHS),
        missing: None,
    })
}

/// Evaluation and attribution both run at weekly cadence: daily input is
/// summed into complete weeks, weekly input passes through.
pub fn to_weekly(series: ObservedSeries) -> Result<ObservedSeries, CliError> {
    match series.resolution {
        Resolution::Weekly => Ok(series),
        Resolution::Daily => Ok(aggregate_weekly(&series)?),
    }
}

/// Builds the attribution embedding from a weekly series. Requires a
/// known population (per-capita features) and a fully observed series.
pub fn embed_weekly_series(series: &ObservedSeries) -> Result<TrajectoryEmbedding, CliError> {
    if series.population == 0 {
        return Err(CliError::Invalid(
            "attribution needs the reporting-unit population (--population) for per-capita features"
                .into(),
        ));
    }
    if series
        .missing
        .as_ref()
        .is_some_and(|mask| mask.iter().any(|&m| m))
    {
        return Err(CliError::Invalid(
            "attribution needs a fully observed series (missing points present)".into(),
        ));
    }
    let to_f64 =
        |channel: &Option<Vec<u64>>| channel.as_ref().map(|v| v.iter().map(|&x| x as f64).collect::<Vec<f64>>());
    let cases = to_f64(&series.cases)
        .ok_or_else(|| CliError::Invalid("series has no case channel".into()))?;
    let hosp = to_f64(&series.hospitalizations);
    let deaths = to_f64(&series.deaths);
    Ok(embed(&EmbeddingInput {
        weekly_cases: &cases,
        weekly_hospitalizations: hosp.as_deref(),
        weekly_deaths: deaths.as_deref(),
        population: series.population as f64,
    })?)
}
