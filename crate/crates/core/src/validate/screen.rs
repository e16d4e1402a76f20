use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{align, overlap_and_jaccard, stats, AlignmentMode, CompareOptions, ValidateError};
use crate::document::Document;
use crate::index::CorpusIndex;
use crate::lexicon::{split_vector_by_vocab, Dictionary};
use crate::scalar::Scalar;
use crate::store::UserRecord;
use crate::vector::{TermVector, WeightingMode};

/// Which corpus a user was compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusMode {
    Full,
    /// The user's own documents were taken out first.
    LeaveUserOut,
}

impl fmt::Display for CorpusMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CorpusMode::Full => "full",
            CorpusMode::LeaveUserOut => "leave-user-out",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScreeningReport<S: Scalar = f64> {
    pub pseudonym: String,
    pub user_doc_count: usize,
    /// Distinct terms in the user's vector after exclusions.
    pub user_vector_size: usize,
    pub k: usize,
    pub overlap_at_k: S,
    pub cosine_similarity: S,
    pub pearson_r: Option<S>,
    pub corpus_mode_used: CorpusMode,
    pub oov_terms: usize,
    pub notes: Vec<String>,
}

/// The user's own term vector. Tf-idf borrows idf from `corpus`; terms the
/// corpus lacks weigh zero.
fn user_vector<S: Scalar>(docs: &[&Document], corpus: &CorpusIndex, mode: WeightingMode) -> TermVector<S> {
    let mut counts: BTreeMap<&str, u64> = BTreeMap::new();
    for d in docs {
        for t in d.terms() {
            *counts.entry(t).or_default() += 1;
        }
    }
    let total: u64 = counts.values().sum();
    let mut v = TermVector::new(mode);
    for (t, c) in counts {
        let w = match mode {
            WeightingMode::RawCount => S::from_count(c),
            WeightingMode::RelFreq => S::from_count(c) / S::from_count(total),
            WeightingMode::TfIdf => S::from_count(c) * corpus.idf::<S>(t).unwrap_or_else(|_| S::zero()),
        };
        v.insert(t, w);
    }
    v
}

/// Screen one user's posts against the social corpus. When the user
/// contributed to `corpus`, their documents are left out before comparing.
pub fn screen_user<S: Scalar>(
    user: &UserRecord,
    docs: &[Document],
    corpus: &CorpusIndex,
    dict: &Dictionary,
    opts: &CompareOptions,
) -> Result<ScreeningReport<S>, ValidateError> {
    if opts.k == 0 {
        return Err(ValidateError::InvalidK);
    }
    let wanted: BTreeSet<&str> = user.doc_ids.iter().map(String::as_str).collect();
    let mine: Vec<&Document> = docs.iter().filter(|d| d.author == user.pseudonym && wanted.contains(d.doc_id.as_str())).collect();
    if mine.is_empty() {
        return Err(ValidateError::NoUserDocuments(user.pseudonym.clone()));
    }

    let (reference, corpus_mode_used) = if corpus.has_author(&user.pseudonym) {
        (corpus.leave_user_out(&user.pseudonym, opts.leave_out), CorpusMode::LeaveUserOut)
    } else {
        (corpus.clone(), CorpusMode::Full)
    };
    let mut notes = vec![format!("weighting: {}", opts.weighting)];
    if corpus_mode_used == CorpusMode::LeaveUserOut {
        notes.push(format!("compared against corpus without this user ({} documents)", reference.doc_count()));
    }

    let uv = user_vector::<S>(&mine, &reference, opts.weighting).without(&opts.exclude);
    let (_, oov) = split_vector_by_vocab(&uv, dict);
    let mut report = ScreeningReport {
        pseudonym: user.pseudonym.clone(),
        user_doc_count: mine.len(),
        user_vector_size: uv.len(),
        k: opts.k,
        overlap_at_k: S::zero(),
        cosine_similarity: S::zero(),
        pearson_r: None,
        corpus_mode_used,
        oov_terms: oov.len(),
        notes,
    };

    let cv = match reference.corpus_vector::<S>(opts.weighting) {
        Ok(v) => v.without(&opts.exclude),
        Err(_) => {
            report.notes.push("reference corpus is empty".into());
            return Ok(report);
        }
    };
    (report.overlap_at_k, _) = overlap_and_jaccard::<S>(&uv.top_k(opts.k).term_set(), &cv.top_k(opts.k).term_set(), opts.k);
    match align(&uv, &cv, dict, AlignmentMode::UnionAll) {
        Ok(av) => {
            report.cosine_similarity = stats::cosine(&av);
            match stats::pearson(&av) {
                Ok(r) => report.pearson_r = Some(r),
                Err(e) => report.notes.push(format!("pearson unavailable: {e}")),
            }
        }
        Err(e) => report.notes.push(format!("no comparison: {e}")),
    }
    Ok(report)
}
