//! Command-line front end for the simulation, evaluation, and
//! attribution pipeline.
//!
//! [`run`] executes one invocation and returns either the text output or
//! a classified error; the binary in `main.rs` only prints and maps the
//! result to a process exit code. Exit codes are stable:
//! 0 success, 2 invalid input, 3 preprocessing exclusion, 4 I/O failure.

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

pub mod args;
pub mod attribute;
pub mod config;
pub mod error;
pub mod evaluate;
pub mod generate;
pub mod input;
pub mod inspect;
pub mod output;

pub use config::{schema_text, Settings};
pub use error::{CliError, EXIT_EXCLUDED, EXIT_INVALID, EXIT_IO, EXIT_OK};
pub use output::CommandOutput;

use args::{Cli, Command};

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Result<CommandOutput, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err)
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) =>
        {
            return Ok(CommandOutput {
                stdout: err.to_string(),
                warnings: Vec::new(),
            })
        }
        Err(err) => return Err(CliError::Invalid(err.to_string())),
    };
    let settings = Settings::load(cli.config.as_deref())?;
    match cli.command {
        Command::Generate { size, mode_mix, corpus_id, multiwave } => generate::run(
            generate::GenerateArgs {
                seed: cli.seed,
                workers: cli.workers,
                out: cli.out,
                size,
                mode_mix,
                corpus_id,
                multiwave,
            },
            &settings,
        ),
        Command::Evaluate {
            series,
            manifest,
            id,
            forecaster,
            horizons,
            context_cap,
            stride,
            date_column,
            cases_column,
            hosp_column,
            deaths_column,
            population,
        } => evaluate::run(
            evaluate::EvaluateArgs {
                seed: cli.seed,
                out: cli.out,
                series,
                manifest,
                id,
                forecaster,
                horizons,
                context_cap,
                stride,
                date_column,
                cases_column,
                hosp_column,
                deaths_column,
                population,
            },
            &settings,
        ),
        Command::Attribute {
            series,
            manifest,
            id,
            library,
            k,
            prior_draws,
            mode,
            mode_mix,
            date_column,
            cases_column,
            hosp_column,
            deaths_column,
            population,
        } => attribute::run(
            attribute::AttributeArgs {
                seed: cli.seed,
                out: cli.out,
                series,
                manifest,
                id,
                library,
                k,
                prior_draws,
                mode,
                mode_mix,
                date_column,
                cases_column,
                hosp_column,
                deaths_column,
                population,
            },
            &settings,
        ),
        Command::Inspect { manifest, id } => inspect::run(
            inspect::InspectArgs { seed: cli.seed, manifest, id },
            &settings,
        ),
        Command::Schema => Ok(CommandOutput {
            stdout: schema_text(),
            warnings: Vec::new(),
        }),
    }
}
