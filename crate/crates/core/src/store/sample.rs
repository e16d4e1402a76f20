use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::SamplingStrategy;
use crate::document::Document;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Independent sub-seed for sample size `n` under a run seed.
pub fn derive_seed(seed: u64, n: usize) -> u64 {
    splitmix64(seed ^ splitmix64(n as u64))
}

/// Uniform sample of `n` documents without replacement.
///
/// Input order does not matter: documents are ordered by id first, and the
/// result is returned in id order. `n >= docs.len()` returns everything.
pub fn subsample(docs: &[Document], n: usize, rng_seed: u64) -> Vec<Document> {
    let mut sorted: Vec<&Document> = docs.iter().collect();
    sorted.sort_by(|a, b| a.doc_id.cmp(&b.doc_id));
    if n >= sorted.len() {
        return sorted.into_iter().cloned().collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut picked = rand::seq::index::sample(&mut rng, sorted.len(), n).into_vec();
    picked.sort_unstable();
    picked.into_iter().map(|i| sorted[i].clone()).collect()
}

/// The `n` earliest documents by `collected_at` (undated last), then id.
pub fn chronological_prefix(docs: &[Document], n: usize) -> Vec<Document> {
    let mut sorted: Vec<&Document> = docs.iter().collect();
    sorted.sort_by(|a, b| {
        let key = |d: &Document| (d.collected_at.is_none(), d.collected_at);
        key(a).cmp(&key(b)).then_with(|| a.doc_id.cmp(&b.doc_id))
    });
    sorted.into_iter().take(n).cloned().collect()
}

/// Draw a sample of size `n` according to `strategy`.
pub fn draw_sample(docs: &[Document], n: usize, strategy: SamplingStrategy, rng_seed: u64) -> Vec<Document> {
    match strategy {
        SamplingStrategy::Uniform => subsample(docs, n, derive_seed(rng_seed, n)),
        SamplingStrategy::Chronological => chronological_prefix(docs, n),
    }
}
