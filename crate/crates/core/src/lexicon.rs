//! Stop-word list and the dictionary that separates standard words from
//! out-of-vocabulary (OOV) ones.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::normalize::Token;
use crate::scalar::Scalar;
use crate::vector::TermVector;

const DEFAULT_STOPWORDS: &str = include_str!("../data/stopwords_en.txt");
const DEFAULT_DICTIONARY: &str = include_str!("../data/dictionary_en.txt");

/// Provenance label of the bundled dictionary.
pub const DEFAULT_DICTIONARY_NAME: &str = "builtin:en-44k";

#[derive(Debug, thiserror::Error)]
pub enum LexiconError {
    #[error("word list not found: {0}")]
    FileMissing(PathBuf),
    #[error("cannot read word list {path}: {source}")]
    Unreadable { path: PathBuf, source: io::Error },
    #[error("stop list {0} has no entries")]
    EmptyList(PathBuf),
    #[error("dictionary {0} has no entries")]
    EmptyDictionary(String),
    #[error("cannot classify an empty token")]
    EmptyToken,
}

fn read_list(path: &Path) -> Result<String, LexiconError> {
    fs::read_to_string(path).map_err(|e| match e.kind() {
        io::ErrorKind::NotFound => LexiconError::FileMissing(path.to_path_buf()),
        _ => LexiconError::Unreadable { path: path.to_path_buf(), source: e },
    })
}

/// Lowercased, trimmed, non-comment entries. Entries containing whitespace
/// are split into their words.
fn parse_entries(text: &str) -> impl Iterator<Item = String> + '_ {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).flat_map(str::split_whitespace).map(str::to_lowercase)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopList {
    words: BTreeSet<String>,
}

impl StopList {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, LexiconError> {
        let path = path.as_ref();
        let list = StopList::from_words(parse_entries(&read_list(path)?));
        if list.is_empty() {
            return Err(LexiconError::EmptyList(path.to_path_buf()));
        }
        Ok(list)
    }

    pub fn from_words<I, T>(words: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: AsRef<str>,
    {
        StopList {
            words: words.into_iter().flat_map(|w| w.as_ref().split_whitespace().map(str::to_lowercase).collect::<Vec<_>>()).collect(),
        }
    }

    /// The bundled list of English function words.
    pub fn english() -> Self {
        StopList::from_words(parse_entries(DEFAULT_STOPWORDS))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> + '_ {
        self.words.iter().map(String::as_str)
    }

    pub fn filter(&self, tokens: Vec<Token>) -> Vec<Token> {
        tokens.into_iter().filter(|t| !self.contains(&t.surface)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VocabClass {
    Standard,
    Oov,
}

impl fmt::Display for VocabClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VocabClass::Standard => "standard",
            VocabClass::Oov => "oov",
        })
    }
}

/// A set of known English word forms plus a provenance label that reports
/// carry along.
#[derive(Debug, Clone)]
pub struct Dictionary {
    name: String,
    words: HashSet<String>,
}

impl Dictionary {
    /// Load a word-per-line file; the name is the file path as given.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, LexiconError> {
        let path = path.as_ref();
        Dictionary::from_words(path.display().to_string(), parse_entries(&read_list(path)?))
    }

    pub fn from_words<I, T>(name: impl Into<String>, words: I) -> Result<Self, LexiconError>
    where
        I: IntoIterator<Item = T>,
        T: AsRef<str>,
    {
        let name = name.into();
        let words: HashSet<String> = words.into_iter().map(|w| w.as_ref().trim().to_lowercase()).filter(|w| !w.is_empty()).collect();
        if words.is_empty() {
            return Err(LexiconError::EmptyDictionary(name));
        }
        Ok(Dictionary { name, words })
    }

    /// The bundled English word list (lemmas and attested inflections).
    pub fn english() -> Self {
        Dictionary::from_words(DEFAULT_DICTIONARY_NAME, parse_entries(DEFAULT_DICTIONARY)).expect("bundled dictionary is non-empty")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    /// Classify a surface form. Stems are not meaningful here.
    pub fn classify(&self, token_surface: &str) -> Result<VocabClass, LexiconError> {
        if token_surface.is_empty() {
            return Err(LexiconError::EmptyToken);
        }
        Ok(if self.contains(token_surface) { VocabClass::Standard } else { VocabClass::Oov })
    }
}

pub fn classify_vocab(token_surface: &str, dict: &Dictionary) -> Result<VocabClass, LexiconError> {
    dict.classify(token_surface)
}

/// Partition `v` into its dictionary (standard) and OOV entries.
pub fn split_vector_by_vocab<S: Scalar>(v: &TermVector<S>, dict: &Dictionary) -> (TermVector<S>, TermVector<S>) {
    v.partition(|t| dict.contains(t))
}
