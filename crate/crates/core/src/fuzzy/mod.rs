//! Mamdani fuzzy inference: fuzzification, rule firing, implication,
//! aggregation and defuzzification over a sampled output universe.
//!
//! A [`FisConfig`] is validated once and is immutable afterwards; every
//! evaluation is a pure function of the configuration and the crisp inputs.

mod config;
mod engine;
pub mod file;
mod membership;
mod rule;
mod variable;

use thiserror::Error;

pub use config::{
    AggregationMethod, AndMethod, DefuzzMethod, FisConfig, ImplicationMethod, SystemSettings,
};
pub use engine::{
    aggregate, defuzzify, fire_rule, imply, AggregateSet, Defuzzified, Inference, Inputs,
    Memberships,
};
pub use membership::MembershipFunction;
pub use rule::{Clause, RuleAst};
pub use variable::{LinguisticVariable, Universe};

/// Default number of samples over the output universe.
pub const DEFAULT_RESOLUTION: usize = 1001;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FuzzyError {
    #[error("invalid membership function: {0}")]
    InvalidMembership(String),
    #[error("invalid universe [{lo}, {hi}]: need finite lo < hi")]
    InvalidUniverse { lo: f64, hi: f64 },
    #[error("variable '{0}' has no fuzzy sets")]
    NoSets(String),
    #[error("variable '{variable}' defines set '{set}' twice")]
    DuplicateSet { variable: String, set: String },
    #[error("variable '{0}' is defined twice")]
    DuplicateVariable(String),
    #[error("configuration has no rules")]
    NoRules,
    #[error("resolution must be at least 2, got {0}")]
    Resolution(usize),
    #[error("rule {index}: {message}")]
    InvalidRule { index: usize, message: String },
    #[error("missing input for variable '{0}'")]
    MissingInput(String),
    #[error("input '{0}' is not a variable of this system")]
    UnknownInput(String),
    #[error("input for variable '{0}' is not a finite number")]
    NonFiniteInput(String),
    #[error("expected {expected} input values, got {got}")]
    InputCount { expected: usize, got: usize },
    #[error("cannot aggregate an empty list of fuzzy sets")]
    EmptyAggregation,
    #[error("fuzzy sets sampled on different grids ({0} vs {1} points)")]
    GridMismatch(usize, usize),
}
