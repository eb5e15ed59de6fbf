use std::str::FromStr;

use super::RankError;
use crate::dsl::parse_rules_block;
use crate::fuzzy::file::{ConfigDocument, ConfigError};
use crate::fuzzy::{Clause, FisConfig, LinguisticVariable, RuleAst, SystemSettings};

pub const TF: &str = "tf";
pub const IDF: &str = "idf";
pub const OVERLAP: &str = "overlap";

/// Rules of the default ranking system. The per-term pair is cloned for every
/// query term; the overlap pair is instantiated once.
pub const DEFAULT_RULES: &str = "\
if (overlap is high) -> (relevance is high)
if (overlap is not high) -> (relevance is not high)
if (tf is high) and (idf is high) -> (relevance is high)
if (tf is not high) and (idf is not high) -> (relevance is not high)
";

pub const DEFAULT_OVERLAP_WEIGHT_RATIO: f64 = 1.0 / 6.0;

/// Treatment of query terms that occur nowhere in the corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UnmatchedTerms {
    /// Instantiate their per-term rules with `tf = idf = 0`.
    #[default]
    Zero,
    /// Leave them out of the per-term rules and of `t`. They still count in
    /// the overlap denominator.
    Omit,
}

impl FromStr for UnmatchedTerms {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "zero" => Ok(Self::Zero),
            "omit" => Ok(Self::Omit),
            other => Err(format!(
                "unmatched_terms must be 'zero' or 'omit', not '{other}'"
            )),
        }
    }
}

/// Query-independent description of a ranking system, written over the
/// placeholder variables `tf`, `idf` and `overlap`.
#[derive(Debug, Clone, PartialEq)]
pub struct FisTemplate {
    tf: LinguisticVariable,
    idf: LinguisticVariable,
    overlap: LinguisticVariable,
    output: LinguisticVariable,
    per_term_rules: Vec<RuleAst>,
    global_rules: Vec<RuleAst>,
    settings: SystemSettings,
    overlap_weight_ratio: f64,
    unmatched_terms: UnmatchedTerms,
}

fn term_var(name: &str, i: usize) -> String {
    format!("{name}_{i}")
}

impl FisTemplate {
    /// `variables` must be exactly `tf`, `idf` and `overlap`, in any order.
    /// Rules whose antecedents mention only `overlap` are global; rules over
    /// `tf`/`idf` are cloned per query term.
    pub fn new(
        variables: Vec<LinguisticVariable>,
        output: LinguisticVariable,
        rules: Vec<RuleAst>,
        settings: SystemSettings,
        overlap_weight_ratio: f64,
    ) -> Result<Self, RankError> {
        let take = |name: &str| -> Result<LinguisticVariable, RankError> {
            let mut found = variables.iter().filter(|v| v.name() == name);
            match (found.next(), found.next()) {
                (Some(v), None) => Ok(v.clone()),
                (None, _) => Err(RankError::Template(format!("missing variable '{name}'"))),
                (Some(_), Some(_)) => Err(RankError::Template(format!(
                    "variable '{name}' defined twice"
                ))),
            }
        };
        let (tf, idf, overlap) = (take(TF)?, take(IDF)?, take(OVERLAP)?);
        if let Some(extra) = variables
            .iter()
            .find(|v| ![TF, IDF, OVERLAP].contains(&v.name()))
        {
            return Err(RankError::Template(format!(
                "unexpected variable '{}' (templates use only tf, idf and overlap)",
                extra.name()
            )));
        }
        if !(overlap_weight_ratio > 0.0 && overlap_weight_ratio <= 1.0) {
            return Err(RankError::Template(format!(
                "overlap_weight_ratio {overlap_weight_ratio} outside (0, 1]"
            )));
        }

        let mut per_term_rules = Vec::new();
        let mut global_rules = Vec::new();
        for (i, rule) in rules.into_iter().enumerate() {
            let names = || rule.antecedent.iter().map(|c| c.variable.as_str());
            if names().all(|n| n == OVERLAP) {
                global_rules.push(rule);
            } else if names().all(|n| n == TF || n == IDF) {
                per_term_rules.push(rule);
            } else {
                return Err(RankError::TemplateRule {
                    index: i + 1,
                    message: "a rule must use either only overlap or only tf/idf".into(),
                });
            }
        }
        let template = Self {
            tf,
            idf,
            overlap,
            output,
            per_term_rules,
            global_rules,
            settings,
            overlap_weight_ratio,
            unmatched_terms: UnmatchedTerms::default(),
        };
        template.instantiate(1).map_err(|e| match e {
            RankError::Fuzzy(crate::fuzzy::FuzzyError::InvalidRule { index, message }) => {
                template.rule_error(index, message)
            }
            other => other,
        })?;
        Ok(template)
    }

    /// Same sets for every input variable.
    pub fn from_prototype(
        prototype: &LinguisticVariable,
        output: LinguisticVariable,
        rules: Vec<RuleAst>,
        settings: SystemSettings,
        overlap_weight_ratio: f64,
    ) -> Result<Self, RankError> {
        Self::new(
            vec![
                prototype.renamed(TF),
                prototype.renamed(IDF),
                prototype.renamed(OVERLAP),
            ],
            output,
            rules,
            settings,
            overlap_weight_ratio,
        )
    }

    /// The default ranking system: `high`/`not_high` triangular sets on
    /// `[0, 1]`, product and/implication, sum aggregation, centroid
    /// defuzzification, overlap rules at 1/6 of the per-term weight.
    pub fn rfis_default() -> Self {
        let rules = parse_rules_block(DEFAULT_RULES).expect("default rules parse");
        Self::from_prototype(
            &LinguisticVariable::high_not_high(TF),
            LinguisticVariable::high_not_high("relevance"),
            rules,
            SystemSettings::default(),
            DEFAULT_OVERLAP_WEIGHT_RATIO,
        )
        .expect("default template is valid")
    }

    // Maps a rule index of the t = 1 instantiation back to the template rule.
    fn rule_error(&self, index: usize, message: String) -> RankError {
        let per_term = self.per_term_rules.len();
        let rule = if index <= per_term {
            &self.per_term_rules[index - 1]
        } else {
            &self.global_rules[index - 1 - per_term]
        };
        RankError::Template(format!(
            "rule '{}': {message}",
            crate::dsl::print_rule(rule)
        ))
    }

    pub fn per_term_rules(&self) -> &[RuleAst] {
        &self.per_term_rules
    }

    pub fn global_rules(&self) -> &[RuleAst] {
        &self.global_rules
    }

    pub fn output(&self) -> &LinguisticVariable {
        &self.output
    }

    pub fn settings(&self) -> &SystemSettings {
        &self.settings
    }

    pub fn overlap_weight_ratio(&self) -> f64 {
        self.overlap_weight_ratio
    }

    pub fn unmatched_terms(&self) -> UnmatchedTerms {
        self.unmatched_terms
    }

    pub fn with_unmatched_terms(mut self, unmatched_terms: UnmatchedTerms) -> Self {
        self.unmatched_terms = unmatched_terms;
        self
    }

    pub fn with_settings(&self, settings: SystemSettings) -> Result<Self, RankError> {
        let mut next = self.clone();
        next.settings = settings;
        next.instantiate(1)?;
        Ok(next)
    }

    pub fn with_resolution(&self, resolution: usize) -> Result<Self, RankError> {
        self.with_settings(SystemSettings {
            resolution,
            ..self.settings
        })
    }

    /// Builds the inference system for a query with `terms` distinct terms.
    ///
    /// Inputs are `tf_1..tf_t`, `idf_1..idf_t`, `overlap`, in that order.
    /// Per-term rules get weight `w / t`; global rules get
    /// `w / t * overlap_weight_ratio`.
    pub fn instantiate(&self, terms: usize) -> Result<FisConfig, RankError> {
        if terms == 0 {
            return Err(RankError::NoTerms);
        }
        let per_term_scale = 1.0 / terms as f64;
        let mut inputs = Vec::with_capacity(2 * terms + 1);
        inputs.extend((1..=terms).map(|i| self.tf.renamed(term_var(TF, i))));
        inputs.extend((1..=terms).map(|i| self.idf.renamed(term_var(IDF, i))));
        inputs.push(self.overlap.clone());

        let mut rules =
            Vec::with_capacity(terms * self.per_term_rules.len() + self.global_rules.len());
        for i in 1..=terms {
            for rule in &self.per_term_rules {
                let antecedent = rule
                    .antecedent
                    .iter()
                    .map(|c| Clause {
                        variable: term_var(&c.variable, i),
                        ..c.clone()
                    })
                    .collect();
                rules.push(RuleAst {
                    antecedent,
                    consequent: rule.consequent.clone(),
                    weight: rule.weight * per_term_scale,
                });
            }
        }
        for rule in &self.global_rules {
            rules.push(RuleAst {
                weight: rule.weight * per_term_scale * self.overlap_weight_ratio,
                ..rule.clone()
            });
        }
        Ok(FisConfig::new(
            inputs,
            self.output.clone(),
            rules,
            self.settings,
        )?)
    }
}

impl FromStr for FisTemplate {
    type Err = ConfigError;

    /// Parses a template file: the configuration format with variables named
    /// `tf`, `idf`, `overlap` and optional `overlap_weight_ratio` and
    /// `unmatched_terms` keys.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let doc = ConfigDocument::parse(s)?;
        let unmatched = match &doc.unmatched_terms {
            Some((line, value)) => value.parse().map_err(|message| ConfigError {
                line: Some(*line),
                message,
            })?,
            None => UnmatchedTerms::default(),
        };
        let lines: Vec<usize> = doc.rules.iter().map(|(l, _)| *l).collect();
        let ratio = doc
            .overlap_weight_ratio
            .map_or(DEFAULT_OVERLAP_WEIGHT_RATIO, |(_, r)| r);
        let ratio_line = doc.overlap_weight_ratio.map(|(l, _)| l);
        let rules = doc.rules.into_iter().map(|(_, r)| r).collect();
        Self::new(doc.inputs, doc.output, rules, doc.settings, ratio)
            .map_err(|e| {
                let line = match &e {
                    RankError::TemplateRule { index, .. } => lines.get(index - 1).copied(),
                    RankError::Template(m) if m.starts_with("overlap_weight_ratio") => ratio_line,
                    _ => None,
                };
                ConfigError {
                    line,
                    message: e.to_string(),
                }
            })
            .map(|t| t.with_unmatched_terms(unmatched))
    }
}
