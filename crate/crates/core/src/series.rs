//! Surveillance-style count series.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Resolution {
    Daily,
    Weekly,
}

impl std::fmt::Display for Resolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Resolution::Daily => "daily",
            Resolution::Weekly => "weekly",
        })
    }
}

/// Count series over one or more channels, at daily or weekly cadence.
///
/// All present channels (and the missing mask, if any) have equal length.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservedSeries {
    pub resolution: Resolution,
    /// Population of the reporting unit; 0 when unknown.
    pub population: u64,
    pub cases: Option<Vec<u64>>,
    pub hospitalizations: Option<Vec<u64>>,
    pub deaths: Option<Vec<u64>>,
    /// True where a position was never reported (imported data); `None`
    /// means fully observed.
    pub missing: Option<Vec<bool>>,
}

impl ObservedSeries {
    /// Length shared by the present channels, or 0 when empty.
    pub fn len(&self) -> usize {
        self.cases
            .as_ref()
            .or(self.hospitalizations.as_ref())
            .or(self.deaths.as_ref())
            .map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Checks channel and mask lengths agree.
    pub fn validate(&self) -> Result<(), String> {
        let len = self.len();
        for (name, channel) in [
            ("cases", &self.cases),
            ("hospitalizations", &self.hospitalizations),
            ("deaths", &self.deaths),
        ] {
            if let Some(values) = channel {
                if values.len() != len {
                    return Err(format!("channel {name} has length {} != {len}", values.len()));
                }
            }
        }
        if let Some(mask) = &self.missing {
            if mask.len() != len {
                return Err(format!("missing mask has length {} != {len}", mask.len()));
            }
        }
        if len == 0 {
            return Err("series has no channels".into());
        }
        Ok(())
    }
}
