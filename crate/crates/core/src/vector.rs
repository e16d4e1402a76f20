//! Sparse term-weight vectors and ranked keyword lists.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// How a term's weight is derived from corpus statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeightingMode {
    /// Collection count.
    RawCount,
    /// Collection count divided by the corpus token total.
    RelFreq,
    /// Collection count times `ln(N / df)`.
    TfIdf,
}

impl WeightingMode {
    pub fn as_str(self) -> &'static str {
        match self {
            WeightingMode::RawCount => "raw",
            WeightingMode::RelFreq => "relfreq",
            WeightingMode::TfIdf => "tfidf",
        }
    }
}

impl fmt::Display for WeightingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WeightingMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "raw" => Ok(WeightingMode::RawCount),
            "relfreq" => Ok(WeightingMode::RelFreq),
            "tfidf" => Ok(WeightingMode::TfIdf),
            other => Err(format!("unknown weighting '{other}' (expected raw, relfreq or tfidf)")),
        }
    }
}

/// Sparse map from term to a non-negative weight.
///
/// Vectors produced by [`CorpusIndex::corpus_vector`](crate::index::CorpusIndex::corpus_vector)
/// in `RelFreq` mode sum to one; sub-vectors (splits, exclusions) keep the
/// parent's weights unchanged.
#[derive(Debug, Clone, PartialEq)]
pub struct TermVector<S: Scalar = f64> {
    entries: BTreeMap<String, S>,
    mode: WeightingMode,
}

impl<S: Scalar> TermVector<S> {
    pub fn new(mode: WeightingMode) -> Self {
        TermVector { entries: BTreeMap::new(), mode }
    }

    /// Panics if any weight is negative or NaN.
    pub fn from_entries<I, T>(mode: WeightingMode, entries: I) -> Self
    where
        I: IntoIterator<Item = (T, S)>,
        T: Into<String>,
    {
        let mut v = TermVector::new(mode);
        for (t, w) in entries {
            v.insert(t, w);
        }
        v
    }

    pub fn insert(&mut self, term: impl Into<String>, weight: S) {
        assert!(weight >= S::zero(), "term weights must be non-negative");
        self.entries.insert(term.into(), weight);
    }

    pub fn mode(&self) -> WeightingMode {
        self.mode
    }

    pub fn get(&self, term: &str) -> Option<S> {
        self.entries.get(term).copied()
    }

    pub fn contains(&self, term: &str) -> bool {
        self.entries.contains_key(term)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in ascending term order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, S)> + '_ {
        self.entries.iter().map(|(t, w)| (t.as_str(), *w))
    }

    pub fn terms(&self) -> impl Iterator<Item = &str> + '_ {
        self.entries.keys().map(String::as_str)
    }

    pub fn total(&self) -> S {
        self.entries.values().copied().sum()
    }

    /// Copy without the given terms.
    pub fn without(&self, exclude: &BTreeSet<String>) -> Self {
        TermVector {
            entries: self.entries.iter().filter(|(t, _)| !exclude.contains(*t)).map(|(t, w)| (t.clone(), *w)).collect(),
            mode: self.mode,
        }
    }

    /// Split into (matching, rest) by a term predicate; weights are kept.
    pub fn partition(&self, mut pred: impl FnMut(&str) -> bool) -> (Self, Self) {
        let mut yes = TermVector::new(self.mode);
        let mut no = TermVector::new(self.mode);
        for (t, w) in &self.entries {
            if pred(t) {
                yes.entries.insert(t.clone(), *w);
            } else {
                no.entries.insert(t.clone(), *w);
            }
        }
        (yes, no)
    }

    /// Union of entries; on a shared term the weight from `other` wins.
    pub fn merged(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.entries.extend(other.entries.iter().map(|(t, w)| (t.clone(), *w)));
        out
    }

    pub fn scaled(&self, factor: S) -> Self {
        TermVector { entries: self.entries.iter().map(|(t, w)| (t.clone(), *w * factor)).collect(), mode: self.mode }
    }

    /// All terms by descending weight, ties broken by ascending term.
    pub fn ranked(&self) -> Vec<(String, S)> {
        let mut all: Vec<(String, S)> = self.entries.iter().map(|(t, w)| (t.clone(), *w)).collect();
        all.sort_by(|a, b| b.1.partial_cmp(&a.1).expect("weights are never NaN").then_with(|| a.0.cmp(&b.0)));
        all
    }

    pub fn top_k(&self, k: usize) -> RankedKeywords<S> {
        let mut entries = self.ranked();
        entries.truncate(k);
        RankedKeywords { entries, k }
    }

    /// 1-based position of `term` in [`ranked`](Self::ranked) order.
    pub fn rank_of(&self, term: &str) -> Option<usize> {
        let w = self.get(term)?;
        let ahead = self.entries.iter().filter(|(t, x)| **x > w || (**x == w && t.as_str() < term)).count();
        Some(ahead + 1)
    }
}

/// The `k` highest-weighted terms, descending, lexicographic tie-break.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedKeywords<S: Scalar = f64> {
    pub entries: Vec<(String, S)>,
    pub k: usize,
}

impl<S: Scalar> RankedKeywords<S> {
    pub fn terms(&self) -> Vec<&str> {
        self.entries.iter().map(|(t, _)| t.as_str()).collect()
    }

    pub fn term_set(&self) -> BTreeSet<String> {
        self.entries.iter().map(|(t, _)| t.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
