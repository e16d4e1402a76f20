use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::NormalizeConfig;

/// Where a token came from in the raw text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TokenOrigin {
    Word,
    Hashtag,
}

/// One normalized unit of text.
///
/// `surface` is the case-folded form with apostrophes removed; `stem` is the
/// form used for counting, equal to `surface` unless stemming is on.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub stem: String,
    pub origin: TokenOrigin,
}

impl Token {
    pub fn new(surface: impl Into<String>, origin: TokenOrigin) -> Self {
        let surface = surface.into();
        Token { stem: surface.clone(), surface, origin }
    }

    pub fn word(surface: impl Into<String>) -> Self {
        Token::new(surface, TokenOrigin::Word)
    }

    pub fn hashtag(surface: impl Into<String>) -> Self {
        Token::new(surface, TokenOrigin::Hashtag)
    }

    /// The key this token is counted under.
    pub fn term(&self) -> &str {
        &self.stem
    }
}

fn is_apostrophe(c: char) -> bool {
    matches!(c, '\'' | '\u{2019}' | '\u{02BC}' | '\u{2018}')
}

/// Push the lowercase form of `c`, keeping only alphanumeric output chars
/// (some lowercase mappings emit combining marks).
fn push_folded(buf: &mut String, c: char) {
    for lc in c.to_lowercase() {
        if lc.is_alphanumeric() {
            buf.push(lc);
        }
    }
}

/// Byte offset where a URL starts inside a whitespace-free chunk, if any.
fn url_start(chunk: &str) -> Option<usize> {
    let lower = chunk.to_ascii_lowercase();
    let mut best: Option<usize> = None;
    if let Some(pos) = lower.find("://") {
        // walk back over the scheme characters
        let start = lower[..pos]
            .char_indices()
            .rev()
            .take_while(|(_, c)| c.is_ascii_alphanumeric() || matches!(c, '+' | '.' | '-'))
            .last()
            .map_or(pos, |(i, _)| i);
        best = Some(start);
    }
    let mut from = 0;
    while let Some(rel) = lower[from..].find("www.") {
        let pos = from + rel;
        let boundary = lower[..pos].chars().next_back().is_none_or(|c| !c.is_alphanumeric());
        if boundary {
            best = Some(best.map_or(pos, |b| b.min(pos)));
            break;
        }
        from = pos + 4;
    }
    best
}

#[derive(Debug, PartialEq)]
pub(crate) enum Lexeme {
    Word(String),
    Hashtag(String),
}

/// Split raw text into case-folded words and hashtag bodies, dropping URLs and
/// mentions. No length or digit filtering happens here.
pub(crate) fn lex(raw: &str) -> Vec<Lexeme> {
    let mut out = Vec::new();
    for chunk in raw.split_whitespace() {
        let chunk = match url_start(chunk) {
            Some(cut) => &chunk[..cut],
            None => chunk,
        };
        lex_chunk(chunk, &mut out);
    }
    out
}

fn lex_chunk(chunk: &str, out: &mut Vec<Lexeme>) {
    let mut chars = chunk.chars().peekable();
    let mut word = String::new();
    // true while the previous char was alphanumeric or an in-word apostrophe
    let mut in_word = false;
    while let Some(c) = chars.next() {
        if c.is_alphanumeric() {
            push_folded(&mut word, c);
            in_word = true;
        } else if is_apostrophe(c) {
            // deleted without splitting
        } else if (c == '@' || c == '#') && !in_word {
            flush(&mut word, out);
            // underscores belong to handles and tags but are not kept
            let mut body = String::new();
            while let Some(&n) = chars.peek() {
                if !n.is_alphanumeric() && n != '_' {
                    break;
                }
                push_folded(&mut body, n);
                chars.next();
            }
            if c == '#' && !body.is_empty() {
                out.push(Lexeme::Hashtag(body));
            }
            in_word = false;
        } else {
            flush(&mut word, out);
            in_word = false;
        }
    }
    flush(&mut word, out);
}

fn flush(word: &mut String, out: &mut Vec<Lexeme>) {
    if !word.is_empty() {
        out.push(Lexeme::Word(std::mem::take(word)));
    }
}

fn keep(surface: &str, cfg: &NormalizeConfig) -> bool {
    surface.chars().count() >= cfg.min_token_length.get() && !surface.chars().all(|c| c.is_numeric())
}

/// Tokenize noisy text.
///
/// URLs (`scheme://...` or `www....`) and `@mentions` are dropped, `#tags`
/// become `Hashtag` tokens (or vanish when `keep_hashtag_tokens` is off),
/// apostrophes are deleted in place, any other non-alphanumeric character
/// splits, and tokens that are too short or purely numeric are dropped.
pub fn tokenize(raw: &str, cfg: &NormalizeConfig) -> Vec<Token> {
    lex(raw)
        .into_iter()
        .filter_map(|lx| match lx {
            Lexeme::Word(w) => keep(&w, cfg).then(|| Token::word(w)),
            Lexeme::Hashtag(h) => (cfg.keep_hashtag_tokens && keep(&h, cfg)).then(|| Token::hashtag(h)),
        })
        .collect()
}

/// Lowercased hashtag bodies found in `raw`, regardless of token filtering.
pub fn extract_hashtags(raw: &str) -> BTreeSet<String> {
    lex(raw)
        .into_iter()
        .filter_map(|lx| match lx {
            Lexeme::Hashtag(h) => Some(h),
            Lexeme::Word(_) => None,
        })
        .collect()
}
