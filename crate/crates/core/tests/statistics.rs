//! Correlation coefficients against textbook formulas computed differently.

use corpuscle::validate::stats::{pearson_slices, spearman_slices};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Raw-sum form: (nΣxy − ΣxΣy) / sqrt((nΣx² − (Σx)²)(nΣy² − (Σy)²)).
fn naive_pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (sx, sy) = (x.iter().sum::<f64>(), y.iter().sum::<f64>());
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let sxx: f64 = x.iter().map(|a| a * a).sum();
    let syy: f64 = y.iter().map(|b| b * b).sum();
    (n * sxy - sx * sy) / ((n * sxx - sx * sx).sqrt() * (n * syy - sy * sy).sqrt())
}

/// Rank of each value: 1 + number smaller + half the number of other equal values.
fn naive_ranks(x: &[f64]) -> Vec<f64> {
    x.iter()
        .map(|a| {
            let less = x.iter().filter(|b| *b < a).count() as f64;
            let equal = x.iter().filter(|b| *b == a).count() as f64;
            less + (equal + 1.0) / 2.0
        })
        .collect()
}

#[test]
fn thousand_random_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..1000 {
        let n = rng.random_range(3..60);
        // integer-valued weights in a small range give plenty of ties
        let x: Vec<f64> = (0..n).map(|_| if i % 2 == 0 { rng.random_range(0..8) as f64 } else { rng.random::<f64>() }).collect();
        let y: Vec<f64> =
            x.iter().map(|v| if rng.random_bool(0.6) { v * 2.0 + rng.random::<f64>() } else { rng.random_range(0..8) as f64 }).collect();
        let (Ok(p), Ok(s)) = (pearson_slices(&x, &y), spearman_slices(&x, &y)) else { continue };
        assert!((p - naive_pearson(&x, &y)).abs() < 1e-9, "pearson #{i}");
        assert!((s - naive_pearson(&naive_ranks(&x), &naive_ranks(&y))).abs() < 1e-9, "spearman #{i}");
    }
}

#[test]
fn hand_values() {
    assert!((pearson_slices::<f64>(&[1.0, 2.0, 3.0], &[2.0, 2.0, 4.0]).unwrap() - 0.866025).abs() < 1e-6);
    assert!((spearman_slices::<f64>(&[1.0, 2.0, 3.0, 4.0], &[1.0, 3.0, 2.0, 4.0]).unwrap() - 0.8).abs() < 1e-12);
}
