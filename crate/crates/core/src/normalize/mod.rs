//! Raw text to clean token streams.

mod porter;
mod tokenize;

use std::num::NonZeroUsize;

pub use porter::porter_stem;
pub use tokenize::{extract_hashtags, tokenize, Token, TokenOrigin};

use crate::lexicon::StopList;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("minimum token length must be at least 1")]
pub struct InvalidMinLength;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizeConfig {
    pub stemming_enabled: bool,
    pub keep_hashtag_tokens: bool,
    pub min_token_length: NonZeroUsize,
}

impl Default for NormalizeConfig {
    fn default() -> Self {
        NormalizeConfig { stemming_enabled: false, keep_hashtag_tokens: true, min_token_length: NonZeroUsize::new(2).unwrap() }
    }
}

impl NormalizeConfig {
    pub fn with_min_token_length(mut self, n: usize) -> Result<Self, InvalidMinLength> {
        self.min_token_length = NonZeroUsize::new(n).ok_or(InvalidMinLength)?;
        Ok(self)
    }

    pub fn with_stemming(mut self, on: bool) -> Self {
        self.stemming_enabled = on;
        self
    }
}

/// Tokenize, drop stop words (by surface form), then stem if enabled.
pub fn normalize_document(raw_text: &str, cfg: &NormalizeConfig, stoplist: &StopList) -> Vec<Token> {
    let mut tokens = stoplist.filter(tokenize(raw_text, cfg));
    if cfg.stemming_enabled {
        for tok in &mut tokens {
            tok.stem = porter_stem(&tok.surface);
        }
    }
    tokens
}

/// A [`NormalizeConfig`] bundled with the stop list it filters against.
#[derive(Debug, Clone)]
pub struct Normalizer {
    pub config: NormalizeConfig,
    pub stoplist: StopList,
}

impl Normalizer {
    pub fn new(config: NormalizeConfig, stoplist: StopList) -> Self {
        Normalizer { config, stoplist }
    }

    pub fn normalize(&self, raw_text: &str) -> Vec<Token> {
        normalize_document(raw_text, &self.config, &self.stoplist)
    }
}

impl Default for Normalizer {
    fn default() -> Self {
        Normalizer::new(NormalizeConfig::default(), StopList::english())
    }
}
