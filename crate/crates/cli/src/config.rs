//! Key=value config files. Every command-line flag has a file key; flags
//! win when both are present, so a checked-in config pins a pipeline and
//! the command line stays free for exploration.

use std::collections::HashMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use epiforge_core::{Mode, ModeMix};

use crate::error::CliError;

/// Every key a config file may define, with its documentation. Printed
/// by `epiforge schema` and embedded in the README.
pub const SCHEMA: &[(&str, &str)] = &[
    ("seed", "master random seed; echoed in all outputs (default 0)"),
    ("workers", "worker threads for generation (default 1)"),
    ("out", "output directory (generate) or report file (evaluate, attribute)"),
    ("size", "scenarios to generate (default 100)"),
    ("mode_mix", "transmission-mode weights as h2h,vector,water (default 1,1,1)"),
    ("corpus_id", "name stored in the generated manifest (default \"corpus\")"),
    ("multiwave", "allow multi-segment transmissibility and severity (default true)"),
    ("series", "CSV series path for evaluate/attribute queries"),
    ("manifest", "corpus directory (or manifest.tsv path) for corpus inputs"),
    ("id", "scenario index within the manifest"),
    ("forecaster", "evaluation baseline: persistence | ets (default persistence)"),
    ("horizons", "comma-separated forecast horizons in steps (default 2,4,6,8)"),
    ("context_cap", "most recent observations handed to the forecaster (default 112)"),
    ("stride", "origin step between evaluation windows (default 1)"),
    ("date_column", "CSV date column name (default \"date\")"),
    ("cases_column", "CSV case-count column name (default \"cases\")"),
    ("hosp_column", "CSV hospitalization column name (default: channel absent)"),
    ("deaths_column", "CSV death column name (default: channel absent)"),
    ("population", "reporting-unit population for CSV inputs (required by attribute)"),
    ("library", "corpus directory used as the attribution library"),
    ("k", "neighbors to retrieve (default 50; clamped to library size)"),
    ("prior_draws", "prior-contrast sample size for attribution (default 2000)"),
    ("mode", "attribution library filter: h2h | vector | water (default: off)"),
];

/// Renders the schema as help text.
pub fn schema_text() -> String {
    let mut out = String::from(
        "config file format: one `key = value` per line; `#` starts a comment.\n\
         command-line flags override file values.\n\nkeys:\n",
    );
    for (key, doc) in SCHEMA {
        out.push_str(&format!("  {key:<14} {doc}\n"));
    }
    out
}

/// Values loaded from a config file (possibly empty).
#[derive(Debug, Default)]
pub struct Settings {
    values: HashMap<String, String>,
}

impl Settings {
    /// Loads `path` when given; an absent file is an I/O error, an
    /// unknown key is invalid input.
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let mut values = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Invalid(format!(
                    "{}:{}: expected `key = value`, got {raw:?}",
                    path.display(),
                    lineno + 1
                )));
            };
            let key = key.trim().to_string();
            if !SCHEMA.iter().any(|(k, _)| *k == key) {
                return Err(CliError::Invalid(format!(
                    "{}:{}: unknown config key {key:?} (see `epiforge schema`)",
                    path.display(),
                    lineno + 1
                )));
            }
            if values.insert(key.clone(), value.trim().to_string()).is_some() {
                return Err(CliError::Invalid(format!(
                    "{}:{}: duplicate config key {key:?}",
                    path.display(),
                    lineno + 1
                )));
            }
        }
        Ok(Self { values })
    }

    fn parse_value<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: Display,
    {
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse::<T>().map(Some).map_err(|e| {
                CliError::Invalid(format!("config key {key}: unusable value {raw:?}: {e}"))
            }),
        }
    }

    /// Flag value, else file value, else default.
    pub fn resolve<T: FromStr>(
        &self,
        key: &str,
        flag: Option<T>,
        default: T,
    ) -> Result<T, CliError>
    where
        T::Err: Display,
    {
        Ok(self.resolve_opt(key, flag)?.unwrap_or(default))
    }

    /// Flag value, else file value, else `None`.
    pub fn resolve_opt<T: FromStr>(
        &self,
        key: &str,
        flag: Option<T>,
    ) -> Result<Option<T>, CliError>
    where
        T::Err: Display,
    {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.parse_value(key),
        }
    }
}

/// Parses `h2h,vector,water` weights into a mode mix.
pub fn parse_mode_mix(raw: &str) -> Result<ModeMix, CliError> {
    let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(CliError::Invalid(format!(
            "mode mix needs exactly three comma-separated weights (h2h,vector,water), got {raw:?}"
        )));
    }
    let mut weights = [0.0f64; 3];
    for (slot, part) in weights.iter_mut().zip(&parts) {
        *slot = part.parse().map_err(|e| {
            CliError::Invalid(format!("mode mix weight {part:?}: {e}"))
        })?;
        if !slot.is_finite() || *slot < 0.0 {
            return Err(CliError::Invalid(format!(
                "mode mix weights must be finite and non-negative, got {part}"
            )));
        }
    }
    if weights.iter().sum::<f64>() <= 0.0 {
        return Err(CliError::Invalid(
            "mode mix weights must not all be zero".into(),
        ));
    }
    Ok(ModeMix { weights })
}

/// Parses a comma-separated, strictly increasing horizon list.
pub fn parse_horizons(raw: &str) -> Result<Vec<usize>, CliError> {
    let mut horizons = Vec::new();
    for part in raw.split(',').map(str::trim) {
        let h: usize = part
            .parse()
            .map_err(|e| CliError::Invalid(format!("horizon {part:?}: {e}")))?;
        if h == 0 {
            return Err(CliError::Invalid("horizons must be at least 1".into()));
        }
        if horizons.last().is_some_and(|&last| h <= last) {
            return Err(CliError::Invalid(format!(
                "horizons must be strictly increasing, got {raw:?}"
            )));
        }
        horizons.push(h);
    }
    if horizons.is_empty() {
        return Err(CliError::Invalid("at least one horizon is required".into()));
    }
    Ok(horizons)
}

/// Parses a transmission-mode name.
pub fn parse_mode(raw: &str) -> Result<Mode, CliError> {
    Mode::parse(raw).ok_or_else(|| {
        CliError::Invalid(format!(
            "unknown mode {raw:?} (expected h2h, vector, or water)"
        ))
    })
}
