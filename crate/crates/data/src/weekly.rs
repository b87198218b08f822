//! Daily → weekly aggregation: 7-day blocks from the series start, trailing
//! partial week dropped. Simulated series have no calendar, so no alignment.

use epiforge_core::{ObservedSeries, Resolution};

use crate::error::DataError;

/// Sums of complete 7-day blocks.
pub fn weekly_sums(daily: &[u64]) -> Vec<u64> {
    daily.chunks_exact(7).map(|week| week.iter().sum()).collect()
}

/// Aggregates every channel; a week is marked missing when any of its days
/// is missing.
pub fn aggregate_weekly(series: &ObservedSeries) -> Result<ObservedSeries, DataError> {
    if series.resolution != Resolution::Daily {
        return Err(DataError::Invalid("aggregate_weekly needs a daily series".into()));
    }
    let weekly_mask = series.missing.as_ref().map(|mask| {
        mask.chunks_exact(7).map(|week| week.iter().any(|&m| m)).collect::<Vec<bool>>()
    });
    Ok(ObservedSeries {
        resolution: Resolution::Weekly,
        population: series.population,
        cases: series.cases.as_deref().map(weekly_sums),
        hospitalizations: series.hospitalizations.as_deref().map(weekly_sums),
        deaths: series.deaths.as_deref().map(weekly_sums),
        missing: weekly_mask,
    })
}
