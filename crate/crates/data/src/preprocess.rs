//! Evaluation-series gatekeeping: exclusion rules run on the raw missing
//! mask, then isolated gaps are repaired by linear interpolation.

use epiforge_core::ObservedSeries;

/// Why a series cannot enter evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum ExclusionRule {
    /// ≥ 10% of points missing.
    ExcessMissing { missing: usize, total: usize },
    /// ≤ 52 observations.
    TooShort { observations: usize },
    /// Gaps of two or more consecutive points (or edge gaps) survive
    /// interpolation.
    UnresolvedGaps { longest_run: usize },
}

impl std::fmt::Display for ExclusionRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExclusionRule::ExcessMissing { missing, total } => {
                write!(f, "excluded: {missing}/{total} points missing (>= 10%)")
            }
            ExclusionRule::TooShort { observations } => {
                write!(f, "excluded: only {observations} observations (<= 52)")
            }
            ExclusionRule::UnresolvedGaps { longest_run } => {
                write!(f, "excluded: unresolvable gap of {longest_run} consecutive points")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Preprocessed {
    Ready(ObservedSeries),
    Excluded(ExclusionRule),
}

impl Preprocessed {
    pub fn ready(self) -> Option<ObservedSeries> {
        match self {
            Preprocessed::Ready(series) => Some(series),
            Preprocessed::Excluded(_) => None,
        }
    }
}

/// Interpolates one channel at `idx` from its immediate neighbors.
fn midpoint(channel: &mut [u64], idx: usize) {
    let fill = (channel[idx - 1] as f64 + channel[idx + 1] as f64) / 2.0;
    channel[idx] = fill.round() as u64;
}

/// Applies the evaluation-entry rules. Exclusions fire on the raw series;
/// interpolation never bridges two or more consecutive missing points.
pub fn preprocess_series(series: &ObservedSeries) -> Preprocessed {
    let total = series.len();
    let mask = series.missing.clone().unwrap_or_else(|| vec![false; total]);
    let missing = mask.iter().filter(|&&m| m).count();

    if total > 0 && (missing as f64) / (total as f64) >= 0.10 {
        return Preprocessed::Excluded(ExclusionRule::ExcessMissing { missing, total });
    }
    if total <= 52 {
        return Preprocessed::Excluded(ExclusionRule::TooShort { observations: total });
    }

    let mut repaired = series.clone();
    let mut out_mask = mask.clone();
    for idx in 0..total {
        let isolated = mask[idx]
            && idx > 0
            && idx + 1 < total
            && !mask[idx - 1]
            && !mask[idx + 1];
        if isolated {
            for channel in [
                repaired.cases.as_deref_mut(),
                repaired.hospitalizations.as_deref_mut(),
                repaired.deaths.as_deref_mut(),
            ]
            .into_iter()
            .flatten()
            {
                midpoint(channel, idx);
            }
            out_mask[idx] = false;
        }
    }

    if out_mask.iter().any(|&m| m) {
        let mut longest = 0;
        let mut run = 0;
        for &m in &out_mask {
            run = if m { run + 1 } else { 0 };
            longest = longest.max(run);
        }
        return Preprocessed::Excluded(ExclusionRule::UnresolvedGaps { longest_run: longest });
    }

    repaired.missing = None;
    Preprocessed::Ready(repaired)
}
