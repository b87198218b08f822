//! `epiforge attribute`: embed a query series, retrieve its nearest
//! library scenarios, and report aggregated parameters against the
//! prior.

use std::fmt::Write as _;
use std::path::PathBuf;

use epiforge_attrib::{
    aggregate_parameters, LibraryEntry, LibraryIndex, PriorOptions, TrajectoryEmbedding,
};
use epiforge_core::{ModeMix, SamplerOptions};

use crate::config::{parse_mode, parse_mode_mix, Settings};
use crate::error::CliError;
use crate::input::{
    embed_weekly_series, load_csv_series, load_manifest, load_member, record_series, to_weekly,
    CsvColumns,
};
use crate::output::CommandOutput;

pub struct AttributeArgs {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub series: Option<PathBuf>,
    pub manifest: Option<PathBuf>,
    pub id: Option<u64>,
    pub library: Option<PathBuf>,
    pub k: Option<usize>,
    pub prior_draws: Option<usize>,
    pub mode: Option<String>,
    pub mode_mix: Option<String>,
    pub date_column: Option<String>,
    pub cases_column: Option<String>,
    pub hosp_column: Option<String>,
    pub deaths_column: Option<String>,
    pub population: Option<u64>,
}

/// Loads a library corpus and embeds every member. Records are dropped
/// after embedding; only configs and feature vectors stay resident.
fn build_library(
    path: &PathBuf,
    mode_filter: Option<epiforge_core::Mode>,
) -> Result<LibraryIndex, CliError> {
    let (dir, manifest) = load_manifest(path)?;
    let mut entries = Vec::new();
    for entry in &manifest.entries {
        if mode_filter.is_some_and(|m| entry.mode != m) {
            continue;
        }
        let record = epiforge_data::load_scenario(&dir, entry)?;
        let weekly = to_weekly(record_series(&record)?)?;
        let embedding = embed_weekly_series(&weekly)?;
        entries.push(LibraryEntry {
            id: entry.index,
            config: record.config,
            embedding,
        });
    }
    if entries.is_empty() {
        return Err(CliError::Invalid(match mode_filter {
            Some(mode) => format!("library has no scenarios of mode {mode}"),
            None => "library is empty".into(),
        }));
    }
    Ok(LibraryIndex::build(entries)?)
}

pub fn run(args: AttributeArgs, settings: &Settings) -> Result<CommandOutput, CliError> {
    let seed = settings.resolve("seed", args.seed, 0)?;
    let requested_k = settings.resolve("k", args.k, 50)?;
    let prior_draws = settings.resolve("prior_draws", args.prior_draws, 2000)?;
    let out: PathBuf = settings.resolve("out", args.out, PathBuf::from("attribution.csv"))?;
    let mode_filter = settings
        .resolve_opt("mode", args.mode)?
        .map(|raw: String| parse_mode(&raw))
        .transpose()?;
    let mix = match settings.resolve_opt("mode_mix", args.mode_mix)? {
        Some(raw) => parse_mode_mix(&raw)?,
        None => ModeMix::default(),
    };
    if requested_k == 0 {
        return Err(CliError::Invalid("k must be at least 1".into()));
    }
    let library_path: PathBuf = settings
        .resolve_opt("library", args.library)?
        .ok_or_else(|| CliError::Invalid("attribute needs a library (--library DIR)".into()))?;

    let library = build_library(&library_path, mode_filter)?;
    let mut warnings = Vec::new();
    let k = if requested_k > library.len() {
        warnings.push(format!(
            "k={requested_k} exceeds the library size; clamping to {}",
            library.len()
        ));
        library.len()
    } else {
        requested_k
    };

    let series_path: Option<PathBuf> = settings.resolve_opt("series", args.series)?;
    let manifest_path: Option<PathBuf> = settings.resolve_opt("manifest", args.manifest)?;
    let id: Option<u64> = settings.resolve_opt("id", args.id)?;
    let (query_id, embedding): (String, TrajectoryEmbedding) = match (series_path, manifest_path)
    {
        (Some(path), None) => {
            let columns = CsvColumns {
                date: settings.resolve("date_column", args.date_column, "date".into())?,
                cases: settings.resolve("cases_column", args.cases_column, "cases".into())?,
                hosp: settings.resolve_opt("hosp_column", args.hosp_column)?,
                deaths: settings.resolve_opt("deaths_column", args.deaths_column)?,
            };
            let population = settings.resolve("population", args.population, 0)?;
            let (name, series) = load_csv_series(&path, &columns, population)?;
            let weekly = to_weekly(series)?;
            (name, embed_weekly_series(&weekly)?)
        }
        (None, Some(path)) => {
            let id = id.ok_or_else(|| {
                CliError::Invalid("corpus input needs a scenario id (--id)".into())
            })?;
            let (dir, manifest) = load_manifest(&path)?;
            let record = load_member(&dir, &manifest, id)?;
            let weekly = to_weekly(record_series(&record)?)?;
            (format!("scenario {id}"), embed_weekly_series(&weekly)?)
        }
        (Some(_), Some(_)) => {
            return Err(CliError::Invalid(
                "pass either --series or --manifest/--id, not both".into(),
            ))
        }
        (None, None) => {
            return Err(CliError::Invalid(
                "attribute needs a query: --series FILE or --manifest DIR --id N".into(),
            ))
        }
    };

    let hits = library.retrieve(&embedding, k)?;
    let prior = PriorOptions {
        seed,
        draws: prior_draws,
        mix,
        options: SamplerOptions::default(),
    };
    let result = aggregate_parameters(&library, &hits, &prior)?;
    std::fs::write(&out, result.to_csv_string())
        .map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;

    let mut stdout = String::new();
    let _ = writeln!(stdout, "seed: {seed}");
    let _ = writeln!(stdout, "query: {query_id}");
    let _ = writeln!(stdout, "library: {} scenarios, k = {k}", library.len());
    let _ = writeln!(stdout, "nearest:");
    for &(id, distance) in hits.iter().take(10) {
        let mode = library.entry(id).map(|e| e.config.mode.name()).unwrap_or("?");
        let _ = writeln!(stdout, "  scenario {id} ({mode}), distance {distance:.4}");
    }
    stdout.push_str(&result.summary());
    let _ = writeln!(stdout, "report: {}", out.display());
    Ok(CommandOutput { stdout, warnings })
}
