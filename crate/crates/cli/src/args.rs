//! Command-line surface. Every flag is optional here; effective values
//! come from flag → config file → default resolution in each command.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "epiforge",
    version,
    about = "Scenario simulation, forecast evaluation, and attribution",
    disable_help_subcommand = true
)]
pub struct Cli {
    /// Key=value config file; flags given here override its values.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Master random seed; echoed in every output.
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,

    /// Worker threads for corpus generation.
    #[arg(long, global = true, value_name = "N")]
    pub workers: Option<usize>,

    /// Output directory (generate) or report file (evaluate, attribute).
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample scenarios from the prior and simulate a corpus to disk.
    Generate {
        /// Number of scenarios.
        #[arg(long, value_name = "N")]
        size: Option<u32>,
        /// Transmission-mode weights as h2h,vector,water.
        #[arg(long, value_name = "W,W,W")]
        mode_mix: Option<String>,
        /// Corpus name recorded in the manifest.
        #[arg(long, value_name = "ID")]
        corpus_id: Option<String>,
        /// Allow multi-segment transmissibility and severity schedules.
        #[arg(long, value_name = "BOOL")]
        multiwave: Option<bool>,
    },
    /// Rolling-origin forecast evaluation of a series.
    Evaluate {
        /// CSV series to evaluate (alternative to --manifest/--id).
        #[arg(long, value_name = "FILE")]
        series: Option<PathBuf>,
        /// Corpus directory (or manifest.tsv) holding the series.
        #[arg(long, value_name = "PATH")]
        manifest: Option<PathBuf>,
        /// Scenario index within the manifest.
        #[arg(long, value_name = "N")]
        id: Option<u64>,
        /// Baseline forecaster: persistence | ets.
        #[arg(long, value_name = "NAME")]
        forecaster: Option<String>,
        /// Comma-separated forecast horizons in steps.
        #[arg(long, value_name = "H,H,...")]
        horizons: Option<String>,
        /// Most recent observations handed to the forecaster.
        #[arg(long, value_name = "N")]
        context_cap: Option<usize>,
        /// Origin step between evaluation windows.
        #[arg(long, value_name = "N")]
        stride: Option<usize>,
        /// CSV date column name.
        #[arg(long, value_name = "NAME")]
        date_column: Option<String>,
        /// CSV case-count column name.
        #[arg(long, value_name = "NAME")]
        cases_column: Option<String>,
        /// CSV hospitalization column name.
        #[arg(long, value_name = "NAME")]
        hosp_column: Option<String>,
        /// CSV death column name.
        #[arg(long, value_name = "NAME")]
        deaths_column: Option<String>,
        /// Reporting-unit population for CSV inputs.
        #[arg(long, value_name = "N")]
        population: Option<u64>,
    },
    /// Embed a series, retrieve its nearest library scenarios, and
    /// aggregate their generative parameters.
    Attribute {
        /// CSV series to attribute (alternative to --manifest/--id).
        #[arg(long, value_name = "FILE")]
        series: Option<PathBuf>,
        /// Corpus directory (or manifest.tsv) holding the query scenario.
        #[arg(long, value_name = "PATH")]
        manifest: Option<PathBuf>,
        /// Scenario index within the manifest.
        #[arg(long, value_name = "N")]
        id: Option<u64>,
        /// Corpus directory used as the scenario library.
        #[arg(long, value_name = "PATH")]
        library: Option<PathBuf>,
        /// Neighbors to retrieve (clamped to the library size).
        #[arg(long, value_name = "N")]
        k: Option<usize>,
        /// Prior-contrast sample size.
        #[arg(long, value_name = "N")]
        prior_draws: Option<usize>,
        /// Restrict the library to one transmission mode.
        #[arg(long, value_name = "MODE")]
        mode: Option<String>,
        /// Transmission-mode weights for the prior contrast.
        #[arg(long, value_name = "W,W,W")]
        mode_mix: Option<String>,
        /// CSV date column name.
        #[arg(long, value_name = "NAME")]
        date_column: Option<String>,
        /// CSV case-count column name.
        #[arg(long, value_name = "NAME")]
        cases_column: Option<String>,
        /// CSV hospitalization column name.
        #[arg(long, value_name = "NAME")]
        hosp_column: Option<String>,
        /// CSV death column name.
        #[arg(long, value_name = "NAME")]
        deaths_column: Option<String>,
        /// Reporting-unit population for CSV inputs (required).
        #[arg(long, value_name = "N")]
        population: Option<u64>,
    },
    /// Print one scenario's configuration and series summary.
    Inspect {
        /// Corpus directory (or manifest.tsv).
        #[arg(long, value_name = "PATH")]
        manifest: Option<PathBuf>,
        /// Scenario index within the manifest.
        #[arg(long, value_name = "N")]
        id: Option<u64>,
    },
    /// Print the config-file schema.
    Schema,
}
