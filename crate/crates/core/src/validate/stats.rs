//! Correlation and similarity coefficients over aligned vectors.

use super::{AlignedVectors, ValidateError};
use crate::scalar::{clamp, Scalar};

fn mean<S: Scalar>(xs: &[S]) -> S {
    xs.iter().copied().sum::<S>() / S::from_count(xs.len() as u64)
}

/// Pearson product-moment correlation of two equal-length slices.
pub fn pearson_slices<S: Scalar>(a: &[S], b: &[S]) -> Result<S, ValidateError> {
    assert_eq!(a.len(), b.len(), "aligned arrays must have equal length");
    if a.len() < 2 {
        return Err(ValidateError::DegenerateVector("fewer than two aligned terms".into()));
    }
    let (ma, mb) = (mean(a), mean(b));
    let (mut sab, mut saa, mut sbb) = (S::zero(), S::zero(), S::zero());
    for (&x, &y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        sab = sab + dx * dy;
        saa = saa + dx * dx;
        sbb = sbb + dy * dy;
    }
    if saa == S::zero() || sbb == S::zero() {
        return Err(ValidateError::DegenerateVector("zero variance".into()));
    }
    let r = sab / (saa.sqrt() * sbb.sqrt());
    Ok(clamp(r, -S::one(), S::one()))
}

/// 1-based ranks, ties sharing the average of the positions they span.
pub fn average_ranks<S: Scalar>(xs: &[S]) -> Vec<S> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&i, &j| xs[i].partial_cmp(&xs[j]).expect("no NaN weights"));
    let mut ranks = vec![S::zero(); xs.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && xs[order[end]] == xs[order[start]] {
            end += 1;
        }
        // positions start+1 ..= end share their mean
        let avg = S::from_count((start + 1 + end) as u64) / S::from_count(2);
        for &i in &order[start..end] {
            ranks[i] = avg;
        }
        start = end;
    }
    ranks
}

pub fn spearman_slices<S: Scalar>(a: &[S], b: &[S]) -> Result<S, ValidateError> {
    pearson_slices(&average_ranks(a), &average_ranks(b))
}

pub fn pearson<S: Scalar>(av: &AlignedVectors<S>) -> Result<S, ValidateError> {
    pearson_slices(&av.a_weights, &av.b_weights)
}

/// Spearman's rho: Pearson on average ranks.
pub fn spearman<S: Scalar>(av: &AlignedVectors<S>) -> Result<S, ValidateError> {
    spearman_slices(&av.a_weights, &av.b_weights)
}

/// Cosine similarity; zero when either side has zero norm.
pub fn cosine<S: Scalar>(av: &AlignedVectors<S>) -> S {
    let (mut dot, mut na, mut nb) = (S::zero(), S::zero(), S::zero());
    for (&x, &y) in av.a_weights.iter().zip(&av.b_weights) {
        dot = dot + x * y;
        na = na + x * x;
        nb = nb + y * y;
    }
    if na == S::zero() || nb == S::zero() {
        return S::zero();
    }
    clamp(dot / (na.sqrt() * nb.sqrt()), -S::one(), S::one())
}
