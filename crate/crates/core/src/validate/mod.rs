//! Cross-corpus validation: vocabulary alignment, correlation, sample-size
//! sweeps, per-user screening and report files.

mod compare;
mod report;
mod screen;
pub mod stats;
mod sweep;

use std::collections::BTreeSet;
use std::fmt;
use std::io;
use std::path::PathBuf;
use std::str::FromStr;

pub use compare::{compare_corpora, CompareOptions, KeywordComparison, ValidationReport, DEFAULT_K};
pub use report::{emit_report, emit_screening_csv, emit_trajectories_csv, render_csv, render_svg, ReportFormat};
pub use screen::{screen_user, CorpusMode, ScreeningReport};
pub use stats::{cosine, pearson, spearman};
pub use sweep::{sweep, SweepOutcome, TermTrajectory, TrajectoryPoint};

use crate::lexicon::Dictionary;
use crate::scalar::Scalar;
use crate::vector::{TermVector, WeightingMode};

#[derive(Debug, thiserror::Error)]
pub enum ValidateError {
    #[error("vectors use different weightings ({0} vs {1})")]
    ModeMismatch(WeightingMode, WeightingMode),
    #[error("aligned vocabulary is empty")]
    EmptyAlignment,
    #[error("degenerate vector: {0}")]
    DegenerateVector(String),
    #[error("user {0} has no documents")]
    NoUserDocuments(String),
    #[error("{0} corpus has no documents")]
    EmptyCorpus(&'static str),
    #[error("k must be at least 1")]
    InvalidK,
    #[error("no reports to write")]
    NoReports,
    #[error("cannot write {path}: {source}")]
    UnwritablePath { path: PathBuf, source: io::Error },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AlignmentMode {
    /// Dictionary words present in both vectors.
    #[default]
    IntersectionDictWords,
    /// Every term of either vector; a missing side weighs zero.
    UnionAll,
}

impl AlignmentMode {
    pub fn as_str(self) -> &'static str {
        match self {
            AlignmentMode::IntersectionDictWords => "dict-intersection",
            AlignmentMode::UnionAll => "union",
        }
    }
}

impl fmt::Display for AlignmentMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlignmentMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dict-intersection" => Ok(AlignmentMode::IntersectionDictWords),
            "union" => Ok(AlignmentMode::UnionAll),
            other => Err(format!("unknown alignment '{other}' (expected dict-intersection or union)")),
        }
    }
}

/// Two weight arrays over a shared, lexicographically ordered vocabulary.
#[derive(Debug, Clone, PartialEq)]
pub struct AlignedVectors<S: Scalar = f64> {
    pub vocabulary: Vec<String>,
    pub a_weights: Vec<S>,
    pub b_weights: Vec<S>,
    pub alignment_mode: AlignmentMode,
}

impl<S: Scalar> AlignedVectors<S> {
    pub fn len(&self) -> usize {
        self.vocabulary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vocabulary.is_empty()
    }
}

pub fn align<S: Scalar>(
    a: &TermVector<S>,
    b: &TermVector<S>,
    dict: &Dictionary,
    mode: AlignmentMode,
) -> Result<AlignedVectors<S>, ValidateError> {
    if a.mode() != b.mode() {
        return Err(ValidateError::ModeMismatch(a.mode(), b.mode()));
    }
    let vocabulary: Vec<String> = match mode {
        AlignmentMode::IntersectionDictWords => a.terms().filter(|t| b.contains(t) && dict.contains(t)).map(str::to_string).collect(),
        AlignmentMode::UnionAll => a.terms().chain(b.terms()).map(str::to_string).collect::<BTreeSet<_>>().into_iter().collect(),
    };
    if vocabulary.is_empty() {
        return Err(ValidateError::EmptyAlignment);
    }
    let weights = |v: &TermVector<S>| vocabulary.iter().map(|t| v.get(t).unwrap_or_else(S::zero)).collect();
    Ok(AlignedVectors { a_weights: weights(a), b_weights: weights(b), vocabulary, alignment_mode: mode })
}

/// `|A ∩ B| / k` and `|A ∩ B| / |A ∪ B|` for two top-k term sets.
pub(crate) fn overlap_and_jaccard<S: Scalar>(a: &BTreeSet<String>, b: &BTreeSet<String>, k: usize) -> (S, S) {
    let inter = a.intersection(b).count() as u64;
    let union = a.union(b).count() as u64;
    let overlap = S::from_count(inter) / S::from_count(k as u64);
    let jaccard = if union == 0 { S::zero() } else { S::from_count(inter) / S::from_count(union) };
    (overlap, jaccard)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dict() -> Dictionary {
        Dictionary::from_words("test", ["sleep", "mood", "life"]).unwrap()
    }

    fn tv(entries: &[(&str, f64)]) -> TermVector<f64> {
        TermVector::from_entries(WeightingMode::RawCount, entries.iter().map(|(t, w)| (*t, *w)))
    }

    #[test]
    fn intersection_keeps_shared_dictionary_words() {
        let av = align(
            &tv(&[("sleep", 3.0), ("whazzup", 2.0)]),
            &tv(&[("sleep", 5.0), ("mood", 1.0)]),
            &dict(),
            AlignmentMode::IntersectionDictWords,
        )
        .unwrap();
        assert_eq!(av.vocabulary, ["sleep"]);
        assert_eq!((av.a_weights, av.b_weights), (vec![3.0], vec![5.0]));
    }

    #[test]
    fn union_of_identical_vectors() {
        let v = tv(&[("sleep", 3.0), ("zz", 1.0)]);
        let av = align(&v, &v, &dict(), AlignmentMode::UnionAll).unwrap();
        assert_eq!(av.a_weights, av.b_weights);
        assert_eq!(av.vocabulary, ["sleep", "zz"]);
    }

    #[test]
    fn union_fills_zeros() {
        let av = align(&tv(&[("a", 1.0)]), &tv(&[("b", 2.0)]), &dict(), AlignmentMode::UnionAll).unwrap();
        assert_eq!((av.a_weights, av.b_weights), (vec![1.0, 0.0], vec![0.0, 2.0]));
    }

    #[test]
    fn disjoint_intersection_is_an_error() {
        let err = align(&tv(&[("sleep", 1.0)]), &tv(&[("mood", 1.0)]), &dict(), AlignmentMode::IntersectionDictWords).unwrap_err();
        assert!(matches!(err, ValidateError::EmptyAlignment));
    }

    #[test]
    fn mode_mismatch() {
        let rel = TermVector::<f64>::from_entries(WeightingMode::RelFreq, [("sleep", 1.0)]);
        assert!(matches!(align(&tv(&[("sleep", 1.0)]), &rel, &dict(), AlignmentMode::UnionAll), Err(ValidateError::ModeMismatch(..))));
    }

    #[test]
    fn parse_alignment() {
        assert_eq!("union".parse::<AlignmentMode>().unwrap(), AlignmentMode::UnionAll);
        assert!("both".parse::<AlignmentMode>().is_err());
    }
}
