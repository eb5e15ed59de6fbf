//! Query-time ranking: the fuzzy-rule ranker built from a [`FisTemplate`] and
//! a tf-idf vector-space baseline over the same candidate set.

mod baseline;
mod fis;
mod ranked;
mod template;

use thiserror::Error;

pub use baseline::{score_baseline, BaselineParams};
pub use fis::{fis_inputs, score_fis};
pub use ranked::{RankedEntry, RankedList};
pub use template::{
    FisTemplate, UnmatchedTerms, DEFAULT_OVERLAP_WEIGHT_RATIO, DEFAULT_RULES, IDF, OVERLAP, TF,
};

use crate::fuzzy::FuzzyError;
use crate::index::IndexError;

/// TREC's customary result-list depth.
pub const DEFAULT_CUTOFF: usize = 1000;

#[derive(Debug, Error)]
pub enum RankError {
    #[error("query has no terms after tokenization")]
    EmptyQuery,
    #[error("a ranking system needs at least one query term")]
    NoTerms,
    #[error("template: {0}")]
    Template(String),
    #[error("template rule {index}: {message}")]
    TemplateRule { index: usize, message: String },
    #[error(transparent)]
    Fuzzy(#[from] FuzzyError),
    #[error(transparent)]
    Index(#[from] IndexError),
}
