//! Corpus term statistics and the tf / idf / tf-idf vectors derived from them.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::document::Document;
use crate::scalar::Scalar;
use crate::vector::{RankedKeywords, TermVector, WeightingMode};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum IndexError {
    #[error("duplicate document id '{0}'")]
    DuplicateDocId(String),
    #[error("term '{0}' does not occur in the corpus")]
    UnknownTerm(String),
    #[error("corpus has no documents")]
    EmptyCorpus,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermStats {
    /// Occurrences across the whole corpus.
    pub collection_count: u64,
    /// Number of documents containing the term.
    pub doc_freq: u64,
    /// Occurrences contributed by each author pseudonym.
    pub per_user_count: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexedDoc {
    pub author: String,
    pub term_counts: BTreeMap<String, u64>,
}

/// How [`CorpusIndex::leave_user_out`] treats the removed user's words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LeaveOutMode {
    /// Subtract the user's occurrences; equivalent to re-indexing without
    /// their documents.
    #[default]
    SubtractCounts,
    /// Additionally delete every term type the user used, from all documents.
    DropTypes,
}

/// Term statistics for one corpus. Immutable once built; every ordered map
/// keeps serialization and iteration deterministic.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusIndex {
    doc_count: u64,
    term_stats: BTreeMap<String, TermStats>,
    doc_term_counts: BTreeMap<String, IndexedDoc>,
}

/// Build an index over already-normalized documents.
pub fn build_index(docs: &[Document]) -> Result<CorpusIndex, IndexError> {
    let mut index = CorpusIndex::default();
    for doc in docs {
        if index.doc_term_counts.contains_key(&doc.doc_id) {
            return Err(IndexError::DuplicateDocId(doc.doc_id.clone()));
        }
        let mut counts: BTreeMap<String, u64> = BTreeMap::new();
        for term in doc.terms() {
            *counts.entry(term.to_string()).or_default() += 1;
        }
        for (term, &c) in &counts {
            let stats = index.term_stats.entry(term.clone()).or_default();
            stats.collection_count += c;
            stats.doc_freq += 1;
            *stats.per_user_count.entry(doc.author.clone()).or_default() += c;
        }
        index.doc_term_counts.insert(doc.doc_id.clone(), IndexedDoc { author: doc.author.clone(), term_counts: counts });
        index.doc_count += 1;
    }
    Ok(index)
}

impl CorpusIndex {
    /// N, the number of documents.
    pub fn doc_count(&self) -> u64 {
        self.doc_count
    }

    pub fn is_empty(&self) -> bool {
        self.doc_count == 0
    }

    pub fn term_count(&self) -> usize {
        self.term_stats.len()
    }

    pub fn stats(&self, term: &str) -> Option<&TermStats> {
        self.term_stats.get(term)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&str, &TermStats)> + '_ {
        self.term_stats.iter().map(|(t, s)| (t.as_str(), s))
    }

    pub fn documents(&self) -> impl Iterator<Item = (&str, &IndexedDoc)> + '_ {
        self.doc_term_counts.iter().map(|(d, e)| (d.as_str(), e))
    }

    pub fn document(&self, doc_id: &str) -> Option<&IndexedDoc> {
        self.doc_term_counts.get(doc_id)
    }

    /// Total token count across the corpus.
    pub fn total_tokens(&self) -> u64 {
        self.term_stats.values().map(|s| s.collection_count).sum()
    }

    /// Author pseudonyms with at least one document.
    pub fn authors(&self) -> BTreeSet<&str> {
        self.doc_term_counts.values().map(|d| d.author.as_str()).collect()
    }

    pub fn has_author(&self, pseudonym: &str) -> bool {
        self.doc_term_counts.values().any(|d| d.author == pseudonym)
    }

    /// `ln(N / df)`, unsmoothed.
    pub fn idf<S: Scalar>(&self, term: &str) -> Result<S, IndexError> {
        if self.doc_count == 0 {
            return Err(IndexError::EmptyCorpus);
        }
        let df = self.term_stats.get(term).map_or(0, |s| s.doc_freq);
        if df == 0 {
            return Err(IndexError::UnknownTerm(term.to_string()));
        }
        Ok((S::from_count(self.doc_count) / S::from_count(df)).ln())
    }

    /// Corpus-wide vector over every indexed term.
    pub fn corpus_vector<S: Scalar>(&self, mode: WeightingMode) -> Result<TermVector<S>, IndexError> {
        if self.doc_count == 0 {
            return Err(IndexError::EmptyCorpus);
        }
        let total = S::from_count(self.total_tokens());
        let mut v = TermVector::new(mode);
        for (term, stats) in &self.term_stats {
            let cc = S::from_count(stats.collection_count);
            let w = match mode {
                WeightingMode::RawCount => cc,
                WeightingMode::RelFreq => cc / total,
                WeightingMode::TfIdf => cc * self.idf::<S>(term)?,
            };
            v.insert(term.clone(), w);
        }
        Ok(v)
    }

    /// The `k` highest-weighted terms not in `exclude`.
    pub fn top_k<S: Scalar>(&self, k: usize, mode: WeightingMode, exclude: &BTreeSet<String>) -> Result<RankedKeywords<S>, IndexError> {
        if k == 0 {
            return Ok(RankedKeywords { entries: Vec::new(), k });
        }
        Ok(self.corpus_vector::<S>(mode)?.without(exclude).top_k(k))
    }

    /// Copy of the index with one author's documents taken out. An unknown
    /// pseudonym yields an unchanged copy.
    pub fn leave_user_out(&self, pseudonym: &str, mode: LeaveOutMode) -> CorpusIndex {
        let mut out = self.clone();
        let removed: Vec<String> = self.doc_term_counts.iter().filter(|(_, d)| d.author == pseudonym).map(|(id, _)| id.clone()).collect();
        if removed.is_empty() {
            log::warn!("leave_user_out: author has no documents in this index; returning it unchanged");
            return out;
        }
        let mut used = BTreeSet::new();
        for id in &removed {
            let doc = out.doc_term_counts.remove(id).expect("listed above");
            out.doc_count -= 1;
            for (term, c) in doc.term_counts {
                let stats = out.term_stats.get_mut(&term).expect("indexed term");
                stats.collection_count -= c;
                stats.doc_freq -= 1;
                let mine = stats.per_user_count.get_mut(pseudonym).expect("author counted");
                *mine -= c;
                if *mine == 0 {
                    stats.per_user_count.remove(pseudonym);
                }
                if stats.collection_count == 0 {
                    out.term_stats.remove(&term);
                }
                used.insert(term);
            }
        }
        if mode == LeaveOutMode::DropTypes {
            for term in &used {
                out.term_stats.remove(term);
            }
            for doc in out.doc_term_counts.values_mut() {
                doc.term_counts.retain(|t, _| !used.contains(t));
            }
        }
        out
    }

    /// Check every structural invariant; returns a description of the first
    /// violation.
    pub fn check_invariants(&self) -> Result<(), String> {
        if self.doc_count != self.doc_term_counts.len() as u64 {
            return Err(format!("doc_count {} but {} documents", self.doc_count, self.doc_term_counts.len()));
        }
        let mut recount: BTreeMap<&str, (u64, u64, BTreeMap<&str, u64>)> = BTreeMap::new();
        for doc in self.doc_term_counts.values() {
            for (t, &c) in &doc.term_counts {
                if c == 0 {
                    return Err(format!("zero count for '{t}'"));
                }
                let e = recount.entry(t).or_default();
                e.0 += c;
                e.1 += 1;
                *e.2.entry(doc.author.as_str()).or_default() += c;
            }
        }
        if recount.len() != self.term_stats.len() {
            return Err("term set differs from document term counts".into());
        }
        for (t, s) in &self.term_stats {
            let Some((cc, df, users)) = recount.get(t.as_str()) else {
                return Err(format!("term '{t}' has no documents"));
            };
            if s.doc_freq < 1 || s.doc_freq > self.doc_count || s.collection_count < s.doc_freq {
                return Err(format!("term '{t}' violates 1 <= df <= N, cc >= df"));
            }
            if *cc != s.collection_count || *df != s.doc_freq {
                return Err(format!("term '{t}' counts disagree with documents"));
            }
            let stored: BTreeMap<&str, u64> = s.per_user_count.iter().map(|(u, c)| (u.as_str(), *c)).collect();
            if &stored != users {
                return Err(format!("term '{t}' per-user counts disagree with documents"));
            }
        }
        Ok(())
    }
}
