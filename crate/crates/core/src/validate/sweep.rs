use std::collections::BTreeSet;

use rayon::prelude::*;

use super::compare::compare_vectors;
use super::{CompareOptions, ValidateError, ValidationReport};
use crate::document::Document;
use crate::index::{build_index, CorpusIndex};
use crate::lexicon::Dictionary;
use crate::scalar::Scalar;
use crate::store::{draw_sample, HarvestConfig};
use crate::vector::TermVector;

/// A term's rank (1-based, `None` when absent) and weight in one sample.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryPoint<S: Scalar = f64> {
    pub sample_size: usize,
    pub rank: Option<usize>,
    pub weight: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TermTrajectory<S: Scalar = f64> {
    pub term: String,
    pub points: Vec<TrajectoryPoint<S>>,
}

impl<S: Scalar> TermTrajectory<S> {
    pub fn ranks(&self) -> Vec<Option<usize>> {
        self.points.iter().map(|p| p.rank).collect()
    }

    pub fn weights(&self) -> Vec<S> {
        self.points.iter().map(|p| p.weight).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome<S: Scalar = f64> {
    /// One report per effective sample size, in ascending size order.
    pub reports: Vec<ValidationReport<S>>,
    /// Sorted by term.
    pub trajectories: Vec<TermTrajectory<S>>,
}

impl<S: Scalar> SweepOutcome<S> {
    pub fn trajectory(&self, term: &str) -> Option<&TermTrajectory<S>> {
        self.trajectories.iter().find(|t| t.term == term)
    }
}

/// Compare the standard corpus against social samples of each configured size.
///
/// Sizes larger than the available tweets are cut to the tweet count; later
/// sizes would repeat the same sample and are dropped.
pub fn sweep<S: Scalar>(
    standard: &CorpusIndex,
    tweets: &[Document],
    cfg: &HarvestConfig,
    dict: &Dictionary,
    opts: &CompareOptions,
    track: &[String],
) -> Result<SweepOutcome<S>, ValidateError> {
    if opts.k == 0 {
        return Err(ValidateError::InvalidK);
    }
    if tweets.is_empty() {
        return Err(ValidateError::EmptyCorpus("social"));
    }
    let sv = standard.corpus_vector::<S>(opts.weighting).map_err(|_| ValidateError::EmptyCorpus("standard"))?.without(&opts.exclude);

    let mut sizes: Vec<(usize, Option<String>)> = Vec::new();
    let mut requested: Vec<usize> = cfg.sample_sizes().to_vec();
    requested.sort_unstable();
    requested.dedup();
    for n in requested {
        if n <= tweets.len() {
            sizes.push((n, None));
        } else {
            sizes.push((tweets.len(), Some(format!("requested sample size {n} truncated to {} available tweets", tweets.len()))));
            break;
        }
    }
    if sizes.len() > 1 && sizes[sizes.len() - 1].0 == sizes[sizes.len() - 2].0 {
        let (_, note) = sizes.pop().unwrap();
        sizes.last_mut().unwrap().1 = note;
    }

    let per_size: Vec<(ValidationReport<S>, TermVector<S>)> = sizes
        .par_iter()
        .map(|(n, note)| {
            let sample = draw_sample(tweets, *n, cfg.sampling, cfg.rng_seed);
            let ix = build_index(&sample).expect("sampled documents have unique ids");
            let tv = ix.corpus_vector::<S>(opts.weighting).expect("non-empty sample").without(&opts.exclude);
            let mut report = compare_vectors(&sv, &tv, *n, dict, opts);
            report.notes.push(format!("sampling: {} (seed {})", cfg.sampling, cfg.rng_seed));
            report.notes.extend(note.clone());
            (report, tv)
        })
        .collect();

    let mut tracked: BTreeSet<String> = track.iter().cloned().collect();
    tracked.extend(sv.top_k(opts.k).term_set());
    for (_, tv) in &per_size {
        tracked.extend(tv.top_k(opts.k).term_set());
    }
    let trajectories = tracked
        .into_iter()
        .map(|term| {
            let points = per_size
                .iter()
                .map(|(r, tv)| TrajectoryPoint {
                    sample_size: r.sample_size,
                    rank: tv.rank_of(&term),
                    weight: tv.get(&term).unwrap_or_else(S::zero),
                })
                .collect();
            TermTrajectory { term, points }
        })
        .collect();

    Ok(SweepOutcome { reports: per_size.into_iter().map(|(r, _)| r).collect(), trajectories })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalize::Token;
    use crate::store::SamplingStrategy;

    fn tweets(n: usize) -> Vec<Document> {
        (0..n)
            .map(|i| {
                let words = if i % 2 == 0 { vec!["sleep", "mood"] } else { vec!["sleep", "therapy", "whazzup"] };
                Document::tweet(format!("t{i:04}"), format!("u:{:016x}", i % 7), "", words.into_iter().map(Token::word).collect())
            })
            .collect()
    }

    fn standard() -> CorpusIndex {
        let toks = ["sleep", "sleep", "mood", "therapy", "life"].into_iter().map(Token::word).collect();
        build_index(&[Document::essay("e", "", toks)]).unwrap()
    }

    fn dict() -> Dictionary {
        Dictionary::from_words("t", ["sleep", "mood", "therapy", "life"]).unwrap()
    }

    #[test]
    fn sizes_truncate_with_note() {
        let cfg = HarvestConfig::new(["depression"], vec![10, 40, 100, 200], 7).unwrap();
        let out = sweep::<f64>(&standard(), &tweets(50), &cfg, &dict(), &CompareOptions::default(), &[]).unwrap();
        let sizes: Vec<usize> = out.reports.iter().map(|r| r.sample_size).collect();
        assert_eq!(sizes, [10, 40, 50]);
        assert!(out.reports[2].notes.iter().any(|n| n.contains("truncated")));
    }

    #[test]
    fn exact_size_is_not_duplicated() {
        let cfg = HarvestConfig::new(["depression"], vec![20, 50, 80], 7).unwrap();
        let out = sweep::<f64>(&standard(), &tweets(50), &cfg, &dict(), &CompareOptions::default(), &[]).unwrap();
        let sizes: Vec<usize> = out.reports.iter().map(|r| r.sample_size).collect();
        assert_eq!(sizes, [20, 50]);
        assert!(out.reports[1].notes.iter().any(|n| n.contains("truncated")));
    }

    #[test]
    fn deterministic_and_tracks_terms() {
        let cfg = HarvestConfig::new(["depression"], vec![10, 30], 99).unwrap();
        let track = vec!["nosuchterm".to_string()];
        let a = sweep::<f64>(&standard(), &tweets(40), &cfg, &dict(), &CompareOptions::default(), &track).unwrap();
        let b = sweep::<f64>(&standard(), &tweets(40), &cfg, &dict(), &CompareOptions::default(), &track).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.trajectory("nosuchterm").unwrap().ranks(), [None, None]);
        assert_eq!(a.trajectory("sleep").unwrap().ranks(), [Some(1), Some(1)]);
    }

    #[test]
    fn chronological_uses_prefix() {
        let cfg = HarvestConfig::new(["depression"], vec![1], 0).unwrap().with_sampling(SamplingStrategy::Chronological);
        let out = sweep::<f64>(&standard(), &tweets(5), &cfg, &dict(), &CompareOptions::default(), &[]).unwrap();
        // undated tweets fall back to id order; t0000 has no whazzup
        assert_eq!(out.trajectory("whazzup").map(|t| t.ranks()), None);
        assert_eq!(out.trajectory("mood").unwrap().ranks(), [Some(1)]);
    }
}
