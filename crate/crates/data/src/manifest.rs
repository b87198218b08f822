//! Line-oriented corpus manifest: a few header lines, one tab-separated row
//! per scenario.

use std::fs;
use std::path::Path;

use epiforge_core::Mode;

use crate::error::DataError;

pub const MANIFEST_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub index: u64,
    pub mode: Mode,
    /// The scenario's own seed (carried in its config as well).
    pub seed: u64,
    /// Record path relative to the manifest's directory.
    pub path: String,
    pub days: u32,
    pub population: u64,
    pub total_obs_cases: u64,
    pub peak_obs_cases: u64,
    pub total_obs_deaths: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetManifest {
    pub corpus_id: String,
    pub master_seed: u64,
    pub version: u32,
    pub entries: Vec<ManifestEntry>,
}

impl DatasetManifest {
    /// Indices must be exactly 0..n in order.
    pub fn validate(&self) -> Result<(), DataError> {
        for (expected, entry) in self.entries.iter().enumerate() {
            if entry.index != expected as u64 {
                return Err(DataError::Invalid(format!(
                    "manifest indices not dense: expected {expected}, found {}",
                    entry.index
                )));
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("#corpus\t{}\n", self.corpus_id));
        out.push_str(&format!("#master_seed\t{}\n", self.master_seed));
        out.push_str(&format!("#version\t{}\n", self.version));
        out.push_str(
            "index\tmode\tseed\tpath\tdays\tpopulation\ttotal_obs_cases\tpeak_obs_cases\ttotal_obs_deaths\n",
        );
        for e in &self.entries {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                e.index,
                e.mode,
                e.seed,
                e.path,
                e.days,
                e.population,
                e.total_obs_cases,
                e.peak_obs_cases,
                e.total_obs_deaths
            ));
        }
        out
    }

    pub fn write(&self, path: &Path) -> Result<(), DataError> {
        fs::write(path, self.to_text()).map_err(DataError::io(path))
    }

    pub fn from_text(text: &str, path: &Path) -> Result<Self, DataError> {
        let mut corpus_id = None;
        let mut master_seed = None;
        let mut version = None;
        let mut entries = Vec::new();
        let mut saw_columns = false;
        for (lineno, line) in text.lines().enumerate() {
            let row = lineno + 1;
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let mut parts = rest.splitn(2, '\t');
                let key = parts.next().unwrap_or("");
                let value = parts.next().ok_or_else(|| {
                    DataError::parse(path, format!("line {row}: header without value"))
                })?;
                match key {
                    "corpus" => corpus_id = Some(value.to_string()),
                    "master_seed" => {
                        master_seed = Some(value.parse().map_err(|_| {
                            DataError::parse(path, format!("line {row}: bad master_seed"))
                        })?)
                    }
                    "version" => {
                        version = Some(value.parse().map_err(|_| {
                            DataError::parse(path, format!("line {row}: bad version"))
                        })?)
                    }
                    other => {
                        return Err(DataError::parse(
                            path,
                            format!("line {row}: unknown header {other}"),
                        ))
                    }
                }
                continue;
            }
            if !saw_columns {
                // Column-name row; fixed schema, presence checked loosely.
                if !line.starts_with("index\t") {
                    return Err(DataError::parse(
                        path,
                        format!("line {row}: expected column header, found {line:?}"),
                    ));
                }
                saw_columns = true;
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 9 {
                return Err(DataError::parse(
                    path,
                    format!("line {row}: expected 9 fields, found {}", fields.len()),
                ));
            }
            let field = |i: usize, what: &str| -> Result<u64, DataError> {
                fields[i]
                    .parse()
                    .map_err(|_| DataError::parse(path, format!("line {row}: bad {what}")))
            };
            entries.push(ManifestEntry {
                index: field(0, "index")?,
                mode: Mode::parse(fields[1]).ok_or_else(|| {
                    DataError::parse(path, format!("line {row}: unknown mode {}", fields[1]))
                })?,
                seed: field(2, "seed")?,
                path: fields[3].to_string(),
                days: field(4, "days")? as u32,
                population: field(5, "population")?,
                total_obs_cases: field(6, "total_obs_cases")?,
                peak_obs_cases: field(7, "peak_obs_cases")?,
                total_obs_deaths: field(8, "total_obs_deaths")?,
            });
        }
        let manifest = DatasetManifest {
            corpus_id: corpus_id
                .ok_or_else(|| DataError::parse(path, "missing #corpus header"))?,
            master_seed: master_seed
                .ok_or_else(|| DataError::parse(path, "missing #master_seed header"))?,
            version: version.ok_or_else(|| DataError::parse(path, "missing #version header"))?,
            entries,
        };
        manifest.validate()?;
        Ok(manifest)
    }

    pub fn read(path: &Path) -> Result<Self, DataError> {
        let text = fs::read_to_string(path).map_err(DataError::io(path))?;
        Self::from_text(&text, path)
    }
}
