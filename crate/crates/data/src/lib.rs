//! Dataset layer: binary scenario records, corpus manifests, parallel
//! corpus generation, CSV import/export of surveillance series, weekly
//! aggregation, and the preprocessing gate applied before evaluation.

mod corpus;
mod csv_io;
mod error;
mod manifest;
mod preprocess;
mod record;
mod weekly;

pub use corpus::{
    generate_corpus, load_corpus, load_scenario, manifest_path, scenario_config_at,
    scenario_filename, GenerationReport, GenerationSpec,
};
pub use csv_io::{export_csv, import_csv, ColumnMap};
pub use error::DataError;
pub use manifest::{DatasetManifest, ManifestEntry, MANIFEST_VERSION};
pub use preprocess::{preprocess_series, ExclusionRule, Preprocessed};
pub use record::{
    read_record, write_record, write_scenario, RecordLocator, ScenarioRecord, FORMAT_VERSION,
    OBS_CASES, OBS_DEATHS, OBS_HOSPITALIZATIONS, TRUE_CASES, TRUE_DEATHS, TRUE_HOSPITALIZATIONS,
};
pub use weekly::{aggregate_weekly, weekly_sums};
