//! `epiforge evaluate`: rolling-origin forecast evaluation of one series.

use std::fmt::Write as _;
use std::path::PathBuf;

use epiforge_data::{preprocess_series, scenario_filename, Preprocessed};
use epiforge_forecast::{
    rolling_harness, EtsForecaster, Forecaster, HarnessOptions, PersistenceForecaster,
};

use crate::config::{parse_horizons, Settings};
use crate::error::CliError;
use crate::input::{load_csv_series, load_manifest, load_member, record_series, to_weekly, CsvColumns};
use crate::output::CommandOutput;

pub struct EvaluateArgs {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub series: Option<PathBuf>,
    pub manifest: Option<PathBuf>,
    pub id: Option<u64>,
    pub forecaster: Option<String>,
    pub horizons: Option<String>,
    pub context_cap: Option<usize>,
    pub stride: Option<usize>,
    pub date_column: Option<String>,
    pub cases_column: Option<String>,
    pub hosp_column: Option<String>,
    pub deaths_column: Option<String>,
    pub population: Option<u64>,
}

fn build_forecaster(name: &str) -> Result<Box<dyn Forecaster>, CliError> {
    match name {
        "persistence" => Ok(Box::new(PersistenceForecaster)),
        "ets" => Ok(Box::new(EtsForecaster::weekly())),
        other => Err(CliError::Invalid(format!(
            "unknown forecaster {other:?} (expected persistence or ets)"
        ))),
    }
}

pub fn run(args: EvaluateArgs, settings: &Settings) -> Result<CommandOutput, CliError> {
    let seed = settings.resolve("seed", args.seed, 0)?;
    let forecaster_name =
        settings.resolve("forecaster", args.forecaster, "persistence".into())?;
    let horizons_raw = settings.resolve("horizons", args.horizons, "2,4,6,8".into())?;
    let horizons = parse_horizons(&horizons_raw)?;
    let context_cap = settings.resolve("context_cap", args.context_cap, 112)?;
    let stride = settings.resolve("stride", args.stride, 1)?;
    let out: PathBuf = settings.resolve("out", args.out, PathBuf::from("eval_report.csv"))?;
    let mut forecaster = build_forecaster(&forecaster_name)?;

    let series_path: Option<PathBuf> = settings.resolve_opt("series", args.series)?;
    let manifest_path: Option<PathBuf> = settings.resolve_opt("manifest", args.manifest)?;
    let id: Option<u64> = settings.resolve_opt("id", args.id)?;
    let (series_id, raw_series) = match (series_path, manifest_path) {
        (Some(path), None) => {
            let columns = CsvColumns {
                date: settings.resolve("date_column", args.date_column, "date".into())?,
                cases: settings.resolve("cases_column", args.cases_column, "cases".into())?,
                hosp: settings.resolve_opt("hosp_column", args.hosp_column)?,
                deaths: settings.resolve_opt("deaths_column", args.deaths_column)?,
            };
            let population = settings.resolve("population", args.population, 0)?;
            load_csv_series(&path, &columns, population)?
        }
        (None, Some(path)) => {
            let id = id.ok_or_else(|| {
                CliError::Invalid("corpus input needs a scenario id (--id)".into())
            })?;
            let (dir, manifest) = load_manifest(&path)?;
            let record = load_member(&dir, &manifest, id)?;
            let name = scenario_filename(id as u32);
            (
                name.trim_end_matches(".bin").to_string(),
                record_series(&record)?,
            )
        }
        (Some(_), Some(_)) => {
            return Err(CliError::Invalid(
                "pass either --series or --manifest/--id, not both".into(),
            ))
        }
        (None, None) => {
            return Err(CliError::Invalid(
                "evaluate needs an input: --series FILE or --manifest DIR --id N".into(),
            ))
        }
    };

    let weekly = to_weekly(raw_series)?;
    let ready = match preprocess_series(&weekly) {
        Preprocessed::Ready(series) => series,
        Preprocessed::Excluded(rule) => return Err(CliError::Excluded(rule.to_string())),
    };
    let values: Vec<f64> = ready
        .cases
        .as_ref()
        .ok_or_else(|| CliError::Invalid("series has no case channel".into()))?
        .iter()
        .map(|&v| v as f64)
        .collect();

    let options = HarnessOptions { context_cap, horizons, stride };
    let report = rolling_harness(&series_id, &values, forecaster.as_mut(), &options)?;
    report.write_csv(&out)?;

    let mut stdout = String::new();
    let _ = writeln!(stdout, "seed: {seed}");
    let _ = writeln!(stdout, "series: {series_id} ({} weekly observations)", values.len());
    let _ = writeln!(
        stdout,
        "horizons: {}",
        options
            .horizons
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",")
    );
    stdout.push_str(&report.summary());
    let _ = writeln!(stdout, "report: {}", out.display());
    Ok(CommandOutput { stdout, warnings: Vec::new() })
}
