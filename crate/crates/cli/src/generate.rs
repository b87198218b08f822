//! `epiforge generate`: sample, simulate, and write a corpus.

use std::fmt::Write as _;
use std::path::PathBuf;

use epiforge_core::SamplerOptions;
use epiforge_data::{generate_corpus, manifest_path, GenerationSpec};

use crate::config::{parse_mode_mix, Settings};
use crate::error::CliError;
use crate::output::CommandOutput;

pub struct GenerateArgs {
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub out: Option<PathBuf>,
    pub size: Option<u32>,
    pub mode_mix: Option<String>,
    pub corpus_id: Option<String>,
    pub multiwave: Option<bool>,
}

pub fn run(args: GenerateArgs, settings: &Settings) -> Result<CommandOutput, CliError> {
    let seed = settings.resolve("seed", args.seed, 0)?;
    let workers = settings.resolve("workers", args.workers, 1)?;
    let size = settings.resolve("size", args.size, 100)?;
    let out_dir: Option<PathBuf> = settings.resolve_opt("out", args.out)?;
    let out_dir = out_dir.ok_or_else(|| {
        CliError::Invalid("generate needs an output directory (--out)".into())
    })?;
    let mix_raw = settings.resolve("mode_mix", args.mode_mix, "1,1,1".into())?;
    let mix = parse_mode_mix(&mix_raw)?;
    let corpus_id = settings.resolve("corpus_id", args.corpus_id, "corpus".into())?;
    let multiwave = settings.resolve("multiwave", args.multiwave, true)?;
    if size == 0 {
        return Err(CliError::Invalid("corpus size must be at least 1".into()));
    }
    if workers == 0 {
        return Err(CliError::Invalid("worker count must be at least 1".into()));
    }

    let spec = GenerationSpec {
        corpus_id,
        master_seed: seed,
        size,
        mix,
        options: SamplerOptions { multiwave },
        out_dir: out_dir.clone(),
        workers,
    };
    let (manifest, report) = generate_corpus(&spec)?;

    let mut stdout = String::new();
    let _ = writeln!(stdout, "seed: {seed}");
    let _ = writeln!(stdout, "scenarios: {}", manifest.entries.len());
    let _ = writeln!(stdout, "simulated_days: {}", report.simulated_days);
    let _ = writeln!(stdout, "person_days: {}", report.person_days);
    let _ = writeln!(
        stdout,
        "throughput: {:.0} days/sec, {:.3e} person-days/sec",
        report.days_per_second(),
        report.person_days_per_second()
    );
    let _ = writeln!(stdout, "manifest: {}", manifest_path(&out_dir).display());
    Ok(CommandOutput { stdout, warnings: Vec::new() })
}
