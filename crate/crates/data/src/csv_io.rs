//! CSV interchange: import real-world surveillance series (dated rows),
//! export any series' channels for external analysis.

use std::path::Path;

use chrono::NaiveDate;
use epiforge_core::{ObservedSeries, Resolution};

use crate::error::DataError;

/// Column names to read from an imported file. Channels set to `None` are
/// not looked for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnMap {
    pub date: String,
    pub cases: Option<String>,
    pub hospitalizations: Option<String>,
    pub deaths: Option<String>,
}

impl Default for ColumnMap {
    fn default() -> Self {
        Self {
            date: "date".into(),
            cases: Some("cases".into()),
            hospitalizations: None,
            deaths: None,
        }
    }
}

fn is_missing_token(field: &str) -> bool {
    matches!(field.trim(), "" | "NA" | "na" | "NaN" | "nan" | "null" | "NULL")
}

struct RawRow {
    line: usize,
    date: NaiveDate,
    values: Vec<Option<u64>>,
}

/// Parses a dated CSV into a series. Rows must be date-sorted without
/// duplicates; the cadence (daily or weekly) is inferred, and skipped steps
/// become masked missing points.
pub fn import_csv(
    path: &Path,
    map: &ColumnMap,
    population: u64,
) -> Result<ObservedSeries, DataError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| DataError::Invalid(format!("{}: {e}", path.display())))?;
    let headers = reader
        .headers()
        .map_err(|e| DataError::Invalid(format!("{}: {e}", path.display())))?
        .clone();
    let column = |name: &str| headers.iter().position(|h| h == name);
    let date_col = column(&map.date).ok_or_else(|| {
        DataError::Invalid(format!("{}: no column named {:?}", path.display(), map.date))
    })?;
    let wanted: Vec<(usize, usize)> = [&map.cases, &map.hospitalizations, &map.deaths]
        .into_iter()
        .enumerate()
        .filter_map(|(slot, name)| name.as_ref().map(|n| (slot, n)))
        .map(|(slot, name)| {
            column(name)
                .map(|col| (slot, col))
                .ok_or_else(|| {
                    DataError::Invalid(format!("{}: no column named {name:?}", path.display()))
                })
        })
        .collect::<Result<_, _>>()?;
    if wanted.is_empty() {
        return Err(DataError::Invalid(format!("{}: no channels requested", path.display())));
    }

    let mut rows: Vec<RawRow> = Vec::new();
    for (i, result) in reader.records().enumerate() {
        let record = result.map_err(|e| DataError::Csv {
            row: i + 2,
            detail: e.to_string(),
        })?;
        let line = record.position().map(|p| p.line() as usize).unwrap_or(i + 2);
        let date_text = record.get(date_col).unwrap_or("");
        let date = NaiveDate::parse_from_str(date_text, "%Y-%m-%d").map_err(|_| {
            DataError::Csv { row: line, detail: format!("malformed date {date_text:?}") }
        })?;
        if let Some(prev) = rows.last() {
            if date <= prev.date {
                return Err(DataError::Csv {
                    row: line,
                    detail: format!("date {date} not after previous row ({})", prev.date),
                });
            }
        }
        let mut values = vec![None; 3];
        for &(slot, col) in &wanted {
            let field = record.get(col).unwrap_or("");
            if !is_missing_token(field) {
                let value = field.parse::<u64>().map_err(|_| DataError::Csv {
                    row: line,
                    detail: format!("non-count value {field:?}"),
                })?;
                values[slot] = Some(value);
            }
        }
        rows.push(RawRow { line, date, values });
    }
    if rows.len() < 2 {
        return Err(DataError::Invalid(format!(
            "{}: need at least two dated rows to infer cadence",
            path.display()
        )));
    }

    let step = rows
        .windows(2)
        .map(|w| (w[1].date - w[0].date).num_days())
        .min()
        .unwrap();
    let resolution = match step {
        1 => Resolution::Daily,
        7 => Resolution::Weekly,
        other => {
            return Err(DataError::Invalid(format!(
                "{}: unsupported cadence of {other} days",
                path.display()
            )))
        }
    };

    let mut channels: Vec<Vec<u64>> = vec![Vec::new(); 3];
    let mut mask = Vec::new();
    let mut expected = rows[0].date;
    for row in &rows {
        let gap = (row.date - expected).num_days();
        if gap % step != 0 {
            return Err(DataError::Csv {
                row: row.line,
                detail: format!(
                    "date {} breaks the {step}-day cadence established earlier",
                    row.date
                ),
            });
        }
        for _ in 0..gap / step {
            for channel in channels.iter_mut() {
                channel.push(0);
            }
            mask.push(true);
        }
        let row_missing = wanted.iter().any(|&(slot, _)| row.values[slot].is_none());
        for (slot, channel) in channels.iter_mut().enumerate() {
            channel.push(row.values[slot].unwrap_or(0));
        }
        mask.push(row_missing);
        expected = row.date + chrono::Duration::days(gap + step);
    }

    let used = |slot: usize| wanted.iter().any(|&(s, _)| s == slot);
    let any_missing = mask.iter().any(|&m| m);
    let series = ObservedSeries {
        resolution,
        population,
        cases: used(0).then(|| channels[0].clone()),
        hospitalizations: used(1).then(|| channels[1].clone()),
        deaths: used(2).then(|| channels[2].clone()),
        missing: any_missing.then_some(mask),
    };
    series.validate().map_err(DataError::Invalid)?;
    Ok(series)
}

/// Writes every present channel as a column, with a step index and (when a
/// mask exists) a 0/1 missing flag.
pub fn export_csv(series: &ObservedSeries, path: &Path) -> Result<(), DataError> {
    let mut writer =
        csv::Writer::from_path(path).map_err(|e| DataError::Invalid(e.to_string()))?;
    let step_name = match series.resolution {
        Resolution::Daily => "day",
        Resolution::Weekly => "week",
    };
    let mut header = vec![step_name.to_string()];
    for (name, channel) in [
        ("cases", &series.cases),
        ("hospitalizations", &series.hospitalizations),
        ("deaths", &series.deaths),
    ] {
        if channel.is_some() {
            header.push(name.to_string());
        }
    }
    if series.missing.is_some() {
        header.push("missing".to_string());
    }
    writer.write_record(&header).map_err(|e| DataError::Invalid(e.to_string()))?;
    for t in 0..series.len() {
        let mut row = vec![t.to_string()];
        for channel in [&series.cases, &series.hospitalizations, &series.deaths]
            .into_iter()
            .flatten()
        {
            row.push(channel[t].to_string());
        }
        if let Some(mask) = &series.missing {
            row.push(u8::from(mask[t]).to_string());
        }
        writer.write_record(&row).map_err(|e| DataError::Invalid(e.to_string()))?;
    }
    writer.flush().map_err(DataError::io(path))?;
    Ok(())
}
