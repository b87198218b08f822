//! Immutable scenario library with standardized nearest-neighbor
//! retrieval.

use epiforge_core::scenario::ScenarioConfig;

use crate::embedding::{TrajectoryEmbedding, EMBEDDING_DIM};
use crate::error::AttribError;

/// One library member: its manifest id, full generative ground truth, and
/// raw embedding.
#[derive(Debug, Clone)]
pub struct LibraryEntry {
    pub id: u64,
    pub config: ScenarioConfig,
    pub embedding: TrajectoryEmbedding,
}

/// Searchable library. Feature means and standard deviations are frozen
/// at build time; all distances are Euclidean in the standardized feature
/// space. The index is immutable after construction, so concurrent
/// queries need no synchronization.
#[derive(Debug, Clone)]
pub struct LibraryIndex {
    entries: Vec<LibraryEntry>,
    standardized: Vec<[f64; EMBEDDING_DIM]>,
    means: [f64; EMBEDDING_DIM],
    sds: [f64; EMBEDDING_DIM],
}

impl LibraryIndex {
    /// Builds the index, computing per-feature standardization from the
    /// entries themselves. Entries are sorted by id; duplicate ids are
    /// rejected. A constant feature gets unit scale, which leaves it
    /// inert (every standardized value is zero).
    pub fn build(mut entries: Vec<LibraryEntry>) -> Result<Self, AttribError> {
        if entries.is_empty() {
            return Err(AttribError::EmptyLibrary);
        }
        entries.sort_by_key(|e| e.id);
        if entries.windows(2).any(|w| w[0].id == w[1].id) {
            return Err(AttribError::InvalidArgument(
                "duplicate scenario ids in library".into(),
            ));
        }
        let n = entries.len() as f64;
        let mut means = [0.0; EMBEDDING_DIM];
        for e in &entries {
            for (m, v) in means.iter_mut().zip(e.embedding.features.iter()) {
                *m += v / n;
            }
        }
        let mut sds = [0.0; EMBEDDING_DIM];
        for e in &entries {
            for (s, (v, m)) in sds
                .iter_mut()
                .zip(e.embedding.features.iter().zip(means.iter()))
            {
                *s += (v - m) * (v - m) / n;
            }
        }
        for s in &mut sds {
            *s = s.sqrt();
            if *s < 1e-12 {
                *s = 1.0;
            }
        }
        let standardized = entries
            .iter()
            .map(|e| standardize_with(&e.embedding, &means, &sds))
            .collect();
        Ok(Self {
            entries,
            standardized,
            means,
            sds,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[LibraryEntry] {
        &self.entries
    }

    /// Entry by manifest id.
    pub fn entry(&self, id: u64) -> Option<&LibraryEntry> {
        self.entries
            .binary_search_by_key(&id, |e| e.id)
            .ok()
            .map(|i| &self.entries[i])
    }

    /// Projects an embedding into the library's standardized feature
    /// space.
    pub fn standardize(&self, embedding: &TrajectoryEmbedding) -> [f64; EMBEDDING_DIM] {
        standardize_with(embedding, &self.means, &self.sds)
    }

    /// Euclidean distance between two embeddings in standardized space.
    pub fn distance(&self, a: &TrajectoryEmbedding, b: &TrajectoryEmbedding) -> f64 {
        euclidean(&self.standardize(a), &self.standardize(b))
    }

    /// The `k` nearest entries to `query`, as `(id, distance)` ascending
    /// by distance with exact ties broken by id. Requires
    /// `1 <= k <= len()`.
    pub fn retrieve(
        &self,
        query: &TrajectoryEmbedding,
        k: usize,
    ) -> Result<Vec<(u64, f64)>, AttribError> {
        if k == 0 || k > self.entries.len() {
            return Err(AttribError::InvalidK {
                k,
                library: self.entries.len(),
            });
        }
        let q = self.standardize(query);
        let mut scored: Vec<(u64, f64)> = self
            .entries
            .iter()
            .zip(self.standardized.iter())
            .map(|(e, s)| (e.id, euclidean(&q, s)))
            .collect();
        scored.sort_by(|a, b| {
            a.1.partial_cmp(&b.1)
                .expect("finite distances")
                .then(a.0.cmp(&b.0))
        });
        scored.truncate(k);
        Ok(scored)
    }
}

fn standardize_with(
    embedding: &TrajectoryEmbedding,
    means: &[f64; EMBEDDING_DIM],
    sds: &[f64; EMBEDDING_DIM],
) -> [f64; EMBEDDING_DIM] {
    let mut out = [0.0; EMBEDDING_DIM];
    for i in 0..EMBEDDING_DIM {
        out[i] = (embedding.features[i] - means[i]) / sds[i];
    }
    out
}

fn euclidean(a: &[f64; EMBEDDING_DIM], b: &[f64; EMBEDDING_DIM]) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use epiforge_core::rng::RngStream;
    use epiforge_core::sampler::{sample_mode, sample_scenario_with, ModeMix, SamplerOptions};

    fn synthetic_entry(id: u64, shift: f64) -> LibraryEntry {
        let mut rng = RngStream::new(900 + id, 0).rng();
        let mix = ModeMix::default();
        let mode = sample_mode(&mix, &mut rng);
        let config = sample_scenario_with(mode, SamplerOptions::default(), &mut rng);
        let mut features = [0.0; EMBEDDING_DIM];
        for (i, f) in features.iter_mut().enumerate() {
            *f = shift + (id as f64 * 0.37 + i as f64 * 0.11).sin();
        }
        LibraryEntry {
            id,
            config,
            embedding: TrajectoryEmbedding { features },
        }
    }

    #[test]
    fn empty_library_is_rejected() {
        assert!(matches!(
            LibraryIndex::build(Vec::new()),
            Err(AttribError::EmptyLibrary)
        ));
    }

    #[test]
    fn self_query_returns_itself_at_distance_zero() {
        let entries: Vec<LibraryEntry> = (0..20).map(|i| synthetic_entry(i, 0.0)).collect();
        let probe = entries[7].embedding.clone();
        let index = LibraryIndex::build(entries).unwrap();
        let hits = index.retrieve(&probe, 3).unwrap();
        assert_eq!(hits[0].0, 7);
        assert_eq!(hits[0].1, 0.0);
    }

    #[test]
    fn k_equal_to_library_size_returns_everything_sorted() {
        let entries: Vec<LibraryEntry> = (0..15).map(|i| synthetic_entry(i, 0.0)).collect();
        let probe = entries[0].embedding.clone();
        let index = LibraryIndex::build(entries).unwrap();
        let hits = index.retrieve(&probe, 15).unwrap();
        assert_eq!(hits.len(), 15);
        for w in hits.windows(2) {
            assert!(w[0].1 <= w[1].1, "distances must be non-decreasing");
        }
    }

    #[test]
    fn exact_ties_resolve_by_scenario_id() {
        // Two entries with identical features; a query equidistant from
        // both must list the smaller id first.
        let mut a = synthetic_entry(11, 0.0);
        let mut b = synthetic_entry(4, 0.0);
        b.embedding = a.embedding.clone();
        a.embedding.features[0] = 1.0;
        b.embedding.features[0] = 1.0;
        let filler: Vec<LibraryEntry> = (20..30).map(|i| synthetic_entry(i, 5.0)).collect();
        let mut entries = vec![a, b];
        entries.extend(filler);
        let probe = entries[0].embedding.clone();
        let index = LibraryIndex::build(entries).unwrap();
        let hits = index.retrieve(&probe, 2).unwrap();
        assert_eq!(hits[0].1, hits[1].1);
        assert_eq!(hits[0].0, 4);
        assert_eq!(hits[1].0, 11);
    }

    #[test]
    fn invalid_k_is_rejected_with_sizes() {
        let entries: Vec<LibraryEntry> = (0..5).map(|i| synthetic_entry(i, 0.0)).collect();
        let probe = entries[0].embedding.clone();
        let index = LibraryIndex::build(entries).unwrap();
        assert!(matches!(
            index.retrieve(&probe, 0),
            Err(AttribError::InvalidK { k: 0, library: 5 })
        ));
        assert!(matches!(
            index.retrieve(&probe, 6),
            Err(AttribError::InvalidK { k: 6, library: 5 })
        ));
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        let a = synthetic_entry(3, 0.0);
        let b = synthetic_entry(3, 1.0);
        assert!(LibraryIndex::build(vec![a, b]).is_err());
    }
}
