//! Build keyword corpora from reference essays and social-media posts and
//! check how closely they agree.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix the scalar for the common cases.

pub mod document;
pub mod index;
pub mod lexicon;
pub mod normalize;
mod scalar;
pub mod store;
pub mod validate;
pub mod vector;

pub use document::{Document, SourceKind, STANDARD_AUTHOR};
pub use index::{build_index, CorpusIndex, IndexError, LeaveOutMode, TermStats};
pub use lexicon::{classify_vocab, split_vector_by_vocab, Dictionary, LexiconError, StopList, VocabClass};
pub use normalize::{normalize_document, porter_stem, tokenize, NormalizeConfig, Normalizer, Token, TokenOrigin};
pub use scalar::Scalar;
pub use store::{HarvestConfig, SamplingStrategy, StoreError, UserRecord};
pub use validate::{align, AlignedVectors, AlignmentMode, CompareOptions, ScreeningReport, ValidateError, ValidationReport};
pub use vector::{RankedKeywords, TermVector, WeightingMode};

pub type TermVectorF64 = TermVector<f64>;
pub type TermVectorF32 = TermVector<f32>;
pub type RankedKeywordsF64 = RankedKeywords<f64>;
pub type RankedKeywordsF32 = RankedKeywords<f32>;
pub type AlignedVectorsF64 = AlignedVectors<f64>;
pub type AlignedVectorsF32 = AlignedVectors<f32>;
pub type ValidationReportF64 = ValidationReport<f64>;
pub type ValidationReportF32 = ValidationReport<f32>;
pub type ScreeningReportF64 = ScreeningReport<f64>;
pub type ScreeningReportF32 = ScreeningReport<f32>;
