//! Line-oriented configuration files.
//!
//! ```text
//! [variable tf]
//! universe 0 1
//! set high trimf 0 1 1
//! [output relevance]
//! ...
//! [system]
//! and prod
//! resolution 1001
//! [rules]
//! if (tf is high) -> (relevance is high)
//! ```
//!
//! `#` starts a comment. Unknown sections and keys are errors that carry the
//! offending line number.

use std::fmt;
use std::str::FromStr;

use super::{
    FisConfig, FuzzyError, LinguisticVariable, MembershipFunction, RuleAst, SystemSettings,
    Universe,
};
use crate::dsl;

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl ConfigError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        Self {
            line: Some(line),
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

/// A syntactically valid configuration file before rule validation.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigDocument {
    pub inputs: Vec<LinguisticVariable>,
    pub output: LinguisticVariable,
    pub settings: SystemSettings,
    /// `overlap_weight_ratio` key of `[system]`, with its line; only
    /// meaningful for ranking templates.
    pub overlap_weight_ratio: Option<(usize, f64)>,
    /// `unmatched_terms` key of `[system]`, unparsed; also template-only.
    pub unmatched_terms: Option<(usize, String)>,
    /// Rules with the line each came from.
    pub rules: Vec<(usize, RuleAst)>,
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    None,
    Variable,
    Output,
    System,
    Rules,
}

struct PendingVariable {
    name: String,
    header_line: usize,
    universe: Option<Universe>,
    sets: Vec<(String, MembershipFunction)>,
    is_output: bool,
}

impl PendingVariable {
    fn finish(self) -> Result<LinguisticVariable, ConfigError> {
        let universe = self.universe.ok_or_else(|| {
            ConfigError::at(
                self.header_line,
                format!("variable '{}' has no universe line", self.name),
            )
        })?;
        LinguisticVariable::new(self.name, universe, self.sets)
            .map_err(|e| ConfigError::at(self.header_line, e.to_string()))
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !dsl::is_keyword(s)
}

fn number(line: usize, text: &str) -> Result<f64, ConfigError> {
    text.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| ConfigError::at(line, format!("'{text}' is not a finite number")))
}

fn keyword<T: FromStr<Err = String>>(line: usize, args: &[&str]) -> Result<T, ConfigError> {
    match args {
        [value] => value.parse().map_err(|e: String| ConfigError::at(line, e)),
        _ => Err(ConfigError::at(line, "expected exactly one value")),
    }
}

impl ConfigDocument {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut section = Section::None;
        let mut pending: Option<PendingVariable> = None;
        let mut inputs = Vec::new();
        let mut output: Option<LinguisticVariable> = None;
        let mut settings = SystemSettings::default();
        let mut seen_keys: Vec<&str> = Vec::new();
        let mut overlap_weight_ratio = None;
        let mut unmatched_terms = None;
        let mut rules = Vec::new();

        let flush = |pending: &mut Option<PendingVariable>,
                     inputs: &mut Vec<LinguisticVariable>,
                     output: &mut Option<LinguisticVariable>|
         -> Result<(), ConfigError> {
            if let Some(p) = pending.take() {
                let line = p.header_line;
                let is_output = p.is_output;
                let var = p.finish()?;
                if is_output {
                    if output.is_some() {
                        return Err(ConfigError::at(line, "more than one [output] section"));
                    }
                    *output = Some(var);
                } else {
                    inputs.push(var);
                }
            }
            Ok(())
        };

        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            if section == Section::Rules && !raw.trim_start().starts_with('[') {
                let trimmed = raw.trim();
                if trimmed.is_empty() || trimmed.starts_with('#') {
                    continue;
                }
                let rule = dsl::parse_rule_at(raw, line).map_err(|e| ConfigError {
                    line: Some(line),
                    message: e.to_string(),
                })?;
                rules.push((line, rule));
                continue;
            }

            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }

            if let Some(header) = content.strip_prefix('[') {
                let header = header
                    .strip_suffix(']')
                    .ok_or_else(|| ConfigError::at(line, "unterminated section header"))?;
                flush(&mut pending, &mut inputs, &mut output)?;
                let words: Vec<&str> = header.split_whitespace().collect();
                section = match words.as_slice() {
                    [kind @ ("variable" | "output"), name] => {
                        if !is_identifier(name) {
                            return Err(ConfigError::at(
                                line,
                                format!("'{name}' is not a valid variable name"),
                            ));
                        }
                        let is_output = *kind == "output";
                        pending = Some(PendingVariable {
                            name: name.to_string(),
                            header_line: line,
                            universe: None,
                            sets: Vec::new(),
                            is_output,
                        });
                        if is_output {
                            Section::Output
                        } else {
                            Section::Variable
                        }
                    }
                    ["system"] => Section::System,
                    ["rules"] => Section::Rules,
                    _ => return Err(ConfigError::at(line, format!("unknown section [{header}]"))),
                };
                continue;
            }

            let words: Vec<&str> = content.split_whitespace().collect();
            let (key, args) = (words[0], &words[1..]);
            match section {
                Section::None => {
                    return Err(ConfigError::at(line, "content outside of any section"));
                }
                Section::Variable | Section::Output => {
                    let var = pending
                        .as_mut()
                        .expect("variable section has a pending variable");
                    match key {
                        "universe" => {
                            let [lo, hi] = args else {
                                return Err(ConfigError::at(line, "universe takes two numbers"));
                            };
                            let universe = Universe::new(number(line, lo)?, number(line, hi)?)
                                .map_err(|e| ConfigError::at(line, e.to_string()))?;
                            var.universe = Some(universe);
                        }
                        "set" => {
                            let [label, kind, params @ ..] = args else {
                                return Err(ConfigError::at(
                                    line,
                                    "set needs a label, a function kind and parameters",
                                ));
                            };
                            if !is_identifier(label) {
                                return Err(ConfigError::at(
                                    line,
                                    format!("'{label}' is not a valid set label"),
                                ));
                            }
                            let params = params
                                .iter()
                                .map(|p| number(line, p))
                                .collect::<Result<Vec<_>, _>>()?;
                            let mf = MembershipFunction::from_parts(kind, &params)
                                .map_err(|e| ConfigError::at(line, e.to_string()))?;
                            var.sets.push((label.to_string(), mf));
                        }
                        other => {
                            return Err(ConfigError::at(
                                line,
                                format!("unknown key '{other}' in variable section"),
                            ))
                        }
                    }
                }
                Section::System => {
                    let key = match key {
                        "and" => {
                            settings.and_method = keyword(line, args)?;
                            "and"
                        }
                        "implication" => {
                            settings.implication = keyword(line, args)?;
                            "implication"
                        }
                        "aggregation" => {
                            settings.aggregation = keyword(line, args)?;
                            "aggregation"
                        }
                        "defuzzification" => {
                            settings.defuzzification = keyword(line, args)?;
                            "defuzzification"
                        }
                        "resolution" => {
                            let [value] = args else {
                                return Err(ConfigError::at(line, "expected exactly one value"));
                            };
                            settings.resolution = value.parse().map_err(|_| {
                                ConfigError::at(line, format!("'{value}' is not a resolution"))
                            })?;
                            "resolution"
                        }
                        "overlap_weight_ratio" => {
                            let [value] = args else {
                                return Err(ConfigError::at(line, "expected exactly one value"));
                            };
                            overlap_weight_ratio = Some((line, number(line, value)?));
                            "overlap_weight_ratio"
                        }
                        "unmatched_terms" => {
                            let [value] = args else {
                                return Err(ConfigError::at(line, "expected exactly one value"));
                            };
                            unmatched_terms = Some((line, value.to_string()));
                            "unmatched_terms"
                        }
                        other => {
                            return Err(ConfigError::at(
                                line,
                                format!("unknown key '{other}' in [system]"),
                            ))
                        }
                    };
                    if seen_keys.contains(&key) {
                        return Err(ConfigError::at(line, format!("duplicate key '{key}'")));
                    }
                    seen_keys.push(key);
                }
                Section::Rules => unreachable!("rule lines are handled above"),
            }
        }
        flush(&mut pending, &mut inputs, &mut output)?;

        let output = output.ok_or(ConfigError {
            line: None,
            message: "missing [output] section".into(),
        })?;
        Ok(Self {
            inputs,
            output,
            settings,
            overlap_weight_ratio,
            unmatched_terms,
            rules,
        })
    }

    pub fn variable(&self, name: &str) -> Option<&LinguisticVariable> {
        self.inputs
            .iter()
            .chain(std::iter::once(&self.output))
            .find(|v| v.name() == name)
    }

    /// Validates the document as a complete inference system.
    pub fn into_config(self) -> Result<FisConfig, ConfigError> {
        let template_keys = [
            self.overlap_weight_ratio
                .map(|(l, _)| (l, "overlap_weight_ratio")),
            self.unmatched_terms
                .as_ref()
                .map(|(l, _)| (*l, "unmatched_terms")),
        ];
        if let Some((line, key)) = template_keys.into_iter().flatten().min() {
            return Err(ConfigError::at(
                line,
                format!("unknown key '{key}' in [system] (only valid in ranking templates)"),
            ));
        }
        let lines: Vec<usize> = self.rules.iter().map(|(l, _)| *l).collect();
        let rules = self.rules.into_iter().map(|(_, r)| r).collect();
        FisConfig::new(self.inputs, self.output, rules, self.settings)
            .map_err(|e| rule_error(e, &lines))
    }
}

/// Attaches the source line to rule-level validation errors.
pub(crate) fn rule_error(error: FuzzyError, lines: &[usize]) -> ConfigError {
    match error {
        FuzzyError::InvalidRule { index, message } => ConfigError {
            line: lines.get(index - 1).copied(),
            message,
        },
        other => ConfigError {
            line: None,
            message: other.to_string(),
        },
    }
}

impl FromStr for FisConfig {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ConfigDocument::parse(s)?.into_config()
    }
}
