use thiserror::Error;

/// Errors surfaced by the attribution pipeline.
#[derive(Debug, Error)]
pub enum AttribError {
    /// The query series is shorter than the embedding needs.
    #[error("series too short to embed: need at least {needed} weeks, got {got}")]
    TooShort { needed: usize, got: usize },

    /// Paired channels disagree on length.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// An argument is outside its documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A library operation needs at least one entry.
    #[error("scenario library is empty")]
    EmptyLibrary,

    /// `k` is zero or exceeds the library size.
    #[error("invalid retrieval size k={k}: library holds {library} scenarios")]
    InvalidK { k: usize, library: usize },
}
