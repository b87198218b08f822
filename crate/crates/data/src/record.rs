//! Self-describing binary scenario records.
//!
//! Layout (all integers little-endian):
//! magic `EPIFREC\0` · version u32 · config-JSON length u32 · config JSON ·
//! resolution u8 (0 daily, 1 weekly) · channel count u8 · per channel:
//! name length u8, name bytes, element count u32, elements as u32.
//!
//! The encoding has no timestamps or map iteration anywhere, so identical
//! inputs always produce identical bytes.

use std::fs;
use std::path::{Path, PathBuf};

use epiforge_core::{Resolution, ScenarioConfig, ScenarioRun};

use crate::error::DataError;

const MAGIC: &[u8; 8] = b"EPIFREC\0";
pub const FORMAT_VERSION: u32 = 1;

pub const TRUE_CASES: &str = "true_cases";
pub const TRUE_HOSPITALIZATIONS: &str = "true_hospitalizations";
pub const TRUE_DEATHS: &str = "true_deaths";
pub const OBS_CASES: &str = "obs_cases";
pub const OBS_HOSPITALIZATIONS: &str = "obs_hospitalizations";
pub const OBS_DEATHS: &str = "obs_deaths";

/// One stored scenario: its full generative configuration plus named count
/// channels at a single resolution.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioRecord {
    pub config: ScenarioConfig,
    pub resolution: Resolution,
    pub channels: Vec<(String, Vec<u32>)>,
}

impl ScenarioRecord {
    /// Builds the standard six-channel daily record from a finished run.
    pub fn from_run(config: &ScenarioConfig, run: &ScenarioRun) -> Result<Self, DataError> {
        let mut channels = Vec::with_capacity(6);
        let mut push = |name: &str, data: &[u64]| -> Result<(), DataError> {
            channels.push((name.to_string(), narrow(name, data)?));
            Ok(())
        };
        push(TRUE_CASES, run.trajectory.true_cases())?;
        push(TRUE_HOSPITALIZATIONS, &run.outcomes.hospitalizations)?;
        push(TRUE_DEATHS, &run.outcomes.deaths)?;
        if let Some(cases) = &run.observed.cases {
            push(OBS_CASES, cases)?;
        }
        if let Some(hosp) = &run.observed.hospitalizations {
            push(OBS_HOSPITALIZATIONS, hosp)?;
        }
        if let Some(deaths) = &run.observed.deaths {
            push(OBS_DEATHS, deaths)?;
        }
        Ok(Self { config: config.clone(), resolution: Resolution::Daily, channels })
    }

    pub fn channel(&self, name: &str) -> Option<&[u32]> {
        self.channels.iter().find(|(n, _)| n == name).map(|(_, d)| d.as_slice())
    }

    pub fn channel_u64(&self, name: &str) -> Option<Vec<u64>> {
        self.channel(name).map(|d| d.iter().map(|&x| x as u64).collect())
    }
}

fn narrow(name: &str, data: &[u64]) -> Result<Vec<u32>, DataError> {
    data.iter()
        .map(|&x| {
            u32::try_from(x).map_err(|_| {
                DataError::Invalid(format!("channel {name}: count {x} exceeds 32-bit storage"))
            })
        })
        .collect()
}

pub fn encode_record(record: &ScenarioRecord) -> Result<Vec<u8>, DataError> {
    let config = serde_json::to_vec(&record.config)
        .map_err(|e| DataError::Invalid(format!("unencodable config: {e}")))?;
    if record.channels.len() > u8::MAX as usize {
        return Err(DataError::Invalid("too many channels".into()));
    }
    let mut out = Vec::with_capacity(
        MAGIC.len() + 10 + config.len()
            + record.channels.iter().map(|(n, d)| n.len() + 5 + 4 * d.len()).sum::<usize>(),
    );
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.extend_from_slice(&(config.len() as u32).to_le_bytes());
    out.extend_from_slice(&config);
    out.push(match record.resolution {
        Resolution::Daily => 0,
        Resolution::Weekly => 1,
    });
    out.push(record.channels.len() as u8);
    for (name, data) in &record.channels {
        let bytes = name.as_bytes();
        if bytes.len() > u8::MAX as usize {
            return Err(DataError::Invalid(format!("channel name too long: {name}")));
        }
        out.push(bytes.len() as u8);
        out.extend_from_slice(bytes);
        out.extend_from_slice(&(data.len() as u32).to_le_bytes());
        for value in data {
            out.extend_from_slice(&value.to_le_bytes());
        }
    }
    Ok(out)
}

pub fn write_record(record: &ScenarioRecord, path: &Path) -> Result<(), DataError> {
    let bytes = encode_record(record)?;
    fs::write(path, bytes).map_err(DataError::io(path))
}

/// Byte reader that names the field a truncation lands in.
struct Cursor<'a> {
    bytes: &'a [u8],
    offset: usize,
    path: &'a Path,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize, field: &str) -> Result<&'a [u8], DataError> {
        let end = self.offset.checked_add(n).ok_or_else(|| {
            DataError::parse(self.path, format!("{field}: length overflows"))
        })?;
        if end > self.bytes.len() {
            return Err(DataError::parse(
                self.path,
                format!(
                    "truncated {field}: need {n} bytes at offset {}, {} available",
                    self.offset,
                    self.bytes.len() - self.offset
                ),
            ));
        }
        let slice = &self.bytes[self.offset..end];
        self.offset = end;
        Ok(slice)
    }

    fn u8(&mut self, field: &str) -> Result<u8, DataError> {
        Ok(self.take(1, field)?[0])
    }

    fn u32(&mut self, field: &str) -> Result<u32, DataError> {
        let b = self.take(4, field)?;
        Ok(u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
    }
}

pub fn decode_record(bytes: &[u8], path: &Path) -> Result<ScenarioRecord, DataError> {
    let mut cur = Cursor { bytes, offset: 0, path };
    let magic = cur.take(MAGIC.len(), "magic")?;
    if magic != MAGIC {
        return Err(DataError::parse(path, "bad magic: not a scenario record"));
    }
    let version = cur.u32("version")?;
    if version != FORMAT_VERSION {
        return Err(DataError::parse(path, format!("unsupported record version {version}")));
    }
    let config_len = cur.u32("config length")? as usize;
    let config_bytes = cur.take(config_len, "config block")?;
    let config: ScenarioConfig = serde_json::from_slice(config_bytes)
        .map_err(|e| DataError::parse(path, format!("config block: {e}")))?;
    let resolution = match cur.u8("resolution tag")? {
        0 => Resolution::Daily,
        1 => Resolution::Weekly,
        other => {
            return Err(DataError::parse(path, format!("unknown resolution tag {other}")));
        }
    };
    let channel_count = cur.u8("channel count")?;
    let mut channels = Vec::with_capacity(channel_count as usize);
    for i in 0..channel_count {
        let name_len = cur.u8(&format!("channel {i} name length"))? as usize;
        let name_bytes = cur.take(name_len, &format!("channel {i} name"))?;
        let name = std::str::from_utf8(name_bytes)
            .map_err(|_| DataError::parse(path, format!("channel {i} name: invalid utf-8")))?
            .to_string();
        let count = cur.u32(&format!("channel {name} length header"))? as usize;
        let raw = cur.take(4 * count, &format!("channel {name} data"))?;
        let data = raw
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]]))
            .collect();
        channels.push((name, data));
    }
    if cur.offset != bytes.len() {
        return Err(DataError::parse(
            path,
            format!("{} trailing bytes after last channel", bytes.len() - cur.offset),
        ));
    }
    Ok(ScenarioRecord { config, resolution, channels })
}

pub fn read_record(path: &Path) -> Result<ScenarioRecord, DataError> {
    let bytes = fs::read(path).map_err(DataError::io(path))?;
    decode_record(&bytes, path)
}

/// Locator returned by [`write_scenario`]: where the record landed and how
/// big it is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordLocator {
    pub path: PathBuf,
    pub bytes: u64,
}

/// Writes the standard record for a finished run.
pub fn write_scenario(
    config: &ScenarioConfig,
    run: &ScenarioRun,
    path: &Path,
) -> Result<RecordLocator, DataError> {
    let record = ScenarioRecord::from_run(config, run)?;
    let bytes = encode_record(&record)?;
    fs::write(path, &bytes).map_err(DataError::io(path))?;
    Ok(RecordLocator { path: path.to_path_buf(), bytes: bytes.len() as u64 })
}
