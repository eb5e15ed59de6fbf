//! Fuzzy-rule document ranking.
//!
//! * [`fuzzy`]: a Mamdani inference engine and its configuration file format.
//! * [`dsl`]: the textual rule language used inside configurations.
//! * [`index`]: corpus loading, tokenization and a binary inverted index.
//! * [`ranker`]: the fuzzy ranker built from a rule template, plus a tf-idf baseline.
//! * [`eval`]: TREC run and qrels files, MAP, P@10 and run comparison.

pub mod dsl;
pub mod eval;
pub mod fuzzy;
pub mod index;
pub mod ranker;
