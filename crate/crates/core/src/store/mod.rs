//! Ingestion, pseudonymization, sampling and the JSON snapshot store.

mod ingest;
mod pseudonym;
mod sample;
mod snapshot;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use ingest::{ingest_essays, ingest_tweets, EssayIngest, IngestIssue, TweetIngest, TweetRecord};
pub use pseudonym::{pseudonymize, PseudonymKey, KEY_ENV_VAR, MIN_KEY_LEN};
pub use sample::{chronological_prefix, derive_seed, draw_sample, subsample};
pub use snapshot::{load_snapshot, save_snapshot, Snapshot, SCHEMA_VERSION};

use crate::document::Document;

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error("file not found: {0}")]
    FileMissing(PathBuf),
    #[error("cannot read {path}: {reason}")]
    FileUnreadable { path: PathBuf, reason: String },
    #[error("no .txt files in {0}")]
    EmptyDirectory(PathBuf),
    #[error("every line of {0} is malformed")]
    AllLinesMalformed(PathBuf),
    #[error("pseudonymization key must be at least {MIN_KEY_LEN} bytes (got {0})")]
    WeakKey(usize),
    #[error("cannot pseudonymize an empty handle")]
    EmptyHandle,
    #[error("snapshot schema version {found} is not supported (expected {expected})")]
    SchemaMismatch { found: u64, expected: u64 },
    #[error("corrupt snapshot {path}: {reason}")]
    CorruptSnapshot { path: PathBuf, reason: String },
    #[error("cannot write {path}: {source}")]
    Unwritable { path: PathBuf, source: io::Error },
    #[error("I/O error on {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

impl StoreError {
    pub(crate) fn io(path: &Path, e: io::Error) -> Self {
        match e.kind() {
            io::ErrorKind::NotFound => StoreError::FileMissing(path.to_path_buf()),
            _ => StoreError::Io { path: path.to_path_buf(), source: e },
        }
    }
}

/// A pseudonymous author and the documents they contributed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UserRecord {
    pub pseudonym: String,
    pub doc_ids: Vec<String>,
}

/// Group documents by author; doc ids sorted, users sorted by pseudonym.
pub fn users_of(docs: &[Document]) -> Vec<UserRecord> {
    let mut by_author: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    for d in docs {
        by_author.entry(&d.author).or_default().push(d.doc_id.clone());
    }
    by_author
        .into_iter()
        .map(|(p, mut ids)| {
            ids.sort();
            UserRecord { pseudonym: p.to_string(), doc_ids: ids }
        })
        .collect()
}

/// How a sample of size n is drawn from the collected posts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SamplingStrategy {
    /// Seeded uniform sample without replacement.
    #[default]
    Uniform,
    /// The n earliest posts by `collected_at` (then doc id), as if the
    /// collection window were grown until n posts had been gathered.
    Chronological,
}

impl fmt::Display for SamplingStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SamplingStrategy::Uniform => "uniform",
            SamplingStrategy::Chronological => "chronological",
        })
    }
}

impl FromStr for SamplingStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform" => Ok(SamplingStrategy::Uniform),
            "chronological" => Ok(SamplingStrategy::Chronological),
            other => Err(format!("unknown sampling '{other}' (expected uniform or chronological)")),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum HarvestConfigError {
    #[error("at least one seed hashtag is required")]
    NoSeeds,
    #[error("sample sizes must be positive and strictly increasing")]
    BadSampleSizes,
}

/// Collection settings: which hashtags select posts and which sample sizes
/// the sweep evaluates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarvestConfig {
    seed_hashtags: BTreeSet<String>,
    sample_sizes: Vec<usize>,
    pub rng_seed: u64,
    pub sampling: SamplingStrategy,
}

pub const DEFAULT_SEED_HASHTAGS: [&str; 3] = ["depression", "depressed", "feelingdown"];
pub const DEFAULT_SAMPLE_SIZES: [usize; 4] = [100, 200, 500, 1000];

impl Default for HarvestConfig {
    fn default() -> Self {
        HarvestConfig {
            seed_hashtags: DEFAULT_SEED_HASHTAGS.iter().map(|s| s.to_string()).collect(),
            sample_sizes: DEFAULT_SAMPLE_SIZES.to_vec(),
            rng_seed: 0,
            sampling: SamplingStrategy::Uniform,
        }
    }
}

impl HarvestConfig {
    pub fn new<I, T>(seed_hashtags: I, sample_sizes: Vec<usize>, rng_seed: u64) -> Result<Self, HarvestConfigError>
    where
        I: IntoIterator<Item = T>,
        T: AsRef<str>,
    {
        let seeds: BTreeSet<String> =
            seed_hashtags.into_iter().map(|s| s.as_ref().trim().trim_start_matches('#').to_lowercase()).filter(|s| !s.is_empty()).collect();
        if seeds.is_empty() {
            return Err(HarvestConfigError::NoSeeds);
        }
        if sample_sizes.is_empty() || sample_sizes[0] == 0 || sample_sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(HarvestConfigError::BadSampleSizes);
        }
        Ok(HarvestConfig { seed_hashtags: seeds, sample_sizes, rng_seed, sampling: SamplingStrategy::Uniform })
    }

    pub fn with_sampling(mut self, sampling: SamplingStrategy) -> Self {
        self.sampling = sampling;
        self
    }

    pub fn seed_hashtags(&self) -> &BTreeSet<String> {
        &self.seed_hashtags
    }

    pub fn sample_sizes(&self) -> &[usize] {
        &self.sample_sizes
    }

    /// True when the document carries at least one seed hashtag.
    pub fn matches(&self, doc: &Document) -> bool {
        doc.hashtags.iter().any(|h| self.seed_hashtags.contains(h))
    }

    /// Keep only documents selected by the seed hashtags.
    pub fn filter(&self, docs: Vec<Document>) -> Vec<Document> {
        docs.into_iter().filter(|d| self.matches(d)).collect()
    }
}
