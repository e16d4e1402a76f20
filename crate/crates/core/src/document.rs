use std::collections::BTreeSet;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::normalize::Token;

/// Author pseudonym reserved for reference essays.
pub const STANDARD_AUTHOR: &str = "corpus:standard";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SourceKind {
    StandardEssay,
    Tweet,
}

/// One text unit (an essay or a post) and its normalized tokens.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub doc_id: String,
    pub source: SourceKind,
    /// Pseudonym, never a raw handle.
    pub author: String,
    pub raw_text: String,
    pub tokens: Vec<Token>,
    pub hashtags: BTreeSet<String>,
    pub collected_at: Option<DateTime<Utc>>,
}

impl Document {
    pub fn essay(doc_id: impl Into<String>, raw_text: impl Into<String>, tokens: Vec<Token>) -> Self {
        Document {
            doc_id: doc_id.into(),
            source: SourceKind::StandardEssay,
            author: STANDARD_AUTHOR.to_string(),
            raw_text: raw_text.into(),
            tokens,
            hashtags: BTreeSet::new(),
            collected_at: None,
        }
    }

    pub fn tweet(doc_id: impl Into<String>, author: impl Into<String>, raw_text: impl Into<String>, tokens: Vec<Token>) -> Self {
        Document {
            doc_id: doc_id.into(),
            source: SourceKind::Tweet,
            author: author.into(),
            raw_text: raw_text.into(),
            tokens,
            hashtags: BTreeSet::new(),
            collected_at: None,
        }
    }

    /// Counting keys of this document's tokens.
    pub fn terms(&self) -> impl Iterator<Item = &str> + '_ {
        self.tokens.iter().map(Token::term)
    }
}
