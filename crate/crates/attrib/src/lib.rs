//! Scenario attribution: map an observed epidemic trajectory back to the
//! generative parameters that plausibly produced it.
//!
//! The pipeline has three stages:
//!
//! 1. [`embed`] turns weekly surveillance series into a fixed-length,
//!    deterministic feature vector that is invariant to population size
//!    (everything is per capita).
//! 2. [`LibraryIndex`] holds a corpus of simulated scenarios with known
//!    ground truth and retrieves nearest neighbors in standardized
//!    feature space.
//! 3. [`aggregate_parameters`] summarizes the neighbors' ground-truth
//!    parameters with order statistics and contrasts them against fresh
//!    prior draws, so sharpening relative to the prior is visible.
//!
//! [`validate_attribution`] checks the whole chain on held-out
//! scenarios: retrieval should land closer to the truth in parameter
//! space than picking library members at random.

pub mod aggregate;
pub mod embedding;
pub mod error;
pub mod library;
pub mod params;
pub mod validate;

pub use aggregate::{
    aggregate_parameters, prior_sample, AttributionResult, ParameterSummary, PriorOptions,
    SummaryStats,
};
pub use embedding::{embed, EmbeddingInput, TrajectoryEmbedding, EMBEDDING_DIM, MIN_WEEKS};
pub use error::AttribError;
pub use library::{LibraryEntry, LibraryIndex};
pub use params::{find as find_param, registry as param_registry, ParamDef};
pub use validate::{validate_attribution, validate_null, ValidationReport};
