use std::collections::BTreeSet;

use super::{align, overlap_and_jaccard, stats, AlignmentMode, ValidateError};
use crate::index::{CorpusIndex, LeaveOutMode};
use crate::lexicon::{split_vector_by_vocab, Dictionary};
use crate::scalar::Scalar;
use crate::store::DEFAULT_SEED_HASHTAGS;
use crate::vector::{TermVector, WeightingMode};

pub const DEFAULT_K: usize = 16;

/// Knobs shared by comparison, sweep and screening.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompareOptions {
    pub k: usize,
    pub weighting: WeightingMode,
    pub alignment: AlignmentMode,
    /// Terms removed from both sides before ranking and alignment.
    pub exclude: BTreeSet<String>,
    pub leave_out: LeaveOutMode,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions {
            k: DEFAULT_K,
            weighting: WeightingMode::RelFreq,
            alignment: AlignmentMode::IntersectionDictWords,
            exclude: DEFAULT_SEED_HASHTAGS.iter().map(|s| s.to_string()).collect(),
            leave_out: LeaveOutMode::SubtractCounts,
        }
    }
}

impl CompareOptions {
    pub fn keep_all_terms(mut self) -> Self {
        self.exclude.clear();
        self
    }
}

/// One keyword's weight on each side of a comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct KeywordComparison<S: Scalar = f64> {
    pub term: String,
    pub standard: S,
    pub social: S,
}

/// Outcome of comparing a social corpus with the standard one. Coefficients
/// are `None` when they could not be computed; the reason is in `notes`.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport<S: Scalar = f64> {
    pub pearson_r: Option<S>,
    pub spearman_rho: Option<S>,
    pub overlap_at_k: S,
    pub jaccard_top_k: S,
    pub k: usize,
    /// Number of social documents compared.
    pub sample_size: usize,
    pub alignment_mode: AlignmentMode,
    pub weighting_mode: WeightingMode,
    pub aligned_terms: usize,
    pub dictionary: String,
    /// Standard top-k keywords with their weight in both corpora.
    pub keywords: Vec<KeywordComparison<S>>,
    pub notes: Vec<String>,
}

fn vocab_note<S: Scalar>(label: &str, v: &TermVector<S>, dict: &Dictionary) -> String {
    let (std, oov) = split_vector_by_vocab(v, dict);
    format!("{label} vocabulary: {} standard / {} oov terms", std.len(), oov.len())
}

pub fn compare_corpora<S: Scalar>(
    standard: &CorpusIndex,
    social: &CorpusIndex,
    dict: &Dictionary,
    opts: &CompareOptions,
) -> Result<ValidationReport<S>, ValidateError> {
    if opts.k == 0 {
        return Err(ValidateError::InvalidK);
    }
    let sv = standard.corpus_vector::<S>(opts.weighting).map_err(|_| ValidateError::EmptyCorpus("standard"))?.without(&opts.exclude);
    let tv = social.corpus_vector::<S>(opts.weighting).map_err(|_| ValidateError::EmptyCorpus("social"))?.without(&opts.exclude);
    Ok(compare_vectors(&sv, &tv, social.doc_count() as usize, dict, opts))
}

/// Comparison over already-built vectors (both in `opts.weighting`).
pub(crate) fn compare_vectors<S: Scalar>(
    sv: &TermVector<S>,
    tv: &TermVector<S>,
    sample_size: usize,
    dict: &Dictionary,
    opts: &CompareOptions,
) -> ValidationReport<S> {
    let mut notes = vec![format!("dictionary: {}", dict.name()), vocab_note("standard", sv, dict), vocab_note("social", tv, dict)];
    if !opts.exclude.is_empty() {
        notes.push(format!("excluded terms: {}", opts.exclude.iter().cloned().collect::<Vec<_>>().join(" ")));
    }

    let (mut pearson_r, mut spearman_rho, mut aligned_terms) = (None, None, 0);
    match align(sv, tv, dict, opts.alignment) {
        Ok(av) => {
            aligned_terms = av.len();
            match stats::pearson(&av) {
                Ok(r) => pearson_r = Some(r),
                Err(e) => notes.push(format!("pearson unavailable: {e}")),
            }
            match stats::spearman(&av) {
                Ok(r) => spearman_rho = Some(r),
                Err(e) => notes.push(format!("spearman unavailable: {e}")),
            }
        }
        Err(e) => notes.push(format!("no correlation: {e}")),
    }

    let (top_s, top_t) = (sv.top_k(opts.k), tv.top_k(opts.k));
    let (overlap_at_k, jaccard_top_k) = overlap_and_jaccard(&top_s.term_set(), &top_t.term_set(), opts.k);
    let keywords = top_s
        .entries
        .iter()
        .map(|(t, w)| KeywordComparison { term: t.clone(), standard: *w, social: tv.get(t).unwrap_or_else(S::zero) })
        .collect();

    ValidationReport {
        pearson_r,
        spearman_rho,
        overlap_at_k,
        jaccard_top_k,
        k: opts.k,
        sample_size,
        alignment_mode: opts.alignment,
        weighting_mode: opts.weighting,
        aligned_terms,
        dictionary: dict.name().to_string(),
        keywords,
        notes,
    }
}
