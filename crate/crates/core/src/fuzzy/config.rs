use std::fmt;
use std::str::FromStr;

use super::{FuzzyError, LinguisticVariable, RuleAst, DEFAULT_RESOLUTION};

macro_rules! keyword_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $kw:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn keyword(self) -> &'static str {
                match self {
                    $($name::$variant => $kw),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.keyword())
            }
        }

        impl FromStr for $name {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($kw => Ok($name::$variant),)+
                    other => Err(format!(
                        "unknown {} '{}' (expected one of: {})",
                        stringify!($name),
                        other,
                        [$($kw),+].join(", ")
                    )),
                }
            }
        }
    };
}

keyword_enum!(
    /// Conjunction operator applied across a rule's antecedent.
    AndMethod { Prod => "prod", Min => "min" }
);
keyword_enum!(
    /// How a firing strength reshapes the consequent set: `prod` scales, `min` truncates.
    ImplicationMethod { Prod => "prod", Min => "min" }
);
keyword_enum!(AggregationMethod { Sum => "sum", Max => "max", Probor => "probor" });
keyword_enum!(DefuzzMethod {
    Centroid => "centroid",
    Bisector => "bisector",
    Mom => "mom",
    Lom => "lom",
    Som => "som",
});

/// Operator selections and output sampling. The default is the ranking system's
/// configuration: product conjunction and implication, sum aggregation,
/// centroid defuzzification over 1001 samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemSettings {
    pub and_method: AndMethod,
    pub implication: ImplicationMethod,
    pub aggregation: AggregationMethod,
    pub defuzzification: DefuzzMethod,
    pub resolution: usize,
}

impl Default for SystemSettings {
    fn default() -> Self {
        Self {
            and_method: AndMethod::Prod,
            implication: ImplicationMethod::Prod,
            aggregation: AggregationMethod::Sum,
            defuzzification: DefuzzMethod::Centroid,
            resolution: DEFAULT_RESOLUTION,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct ResolvedClause {
    pub variable: usize,
    pub set: usize,
    pub negated: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct ResolvedRule {
    pub antecedent: Vec<ResolvedClause>,
    pub consequent_set: usize,
    pub consequent_negated: bool,
    pub weight: f64,
}

/// A validated Mamdani system.
#[derive(Debug, Clone, PartialEq)]
pub struct FisConfig {
    inputs: Vec<LinguisticVariable>,
    output: LinguisticVariable,
    rules: Vec<RuleAst>,
    settings: SystemSettings,
    pub(crate) resolved: Vec<ResolvedRule>,
    /// Each output set sampled over the output grid, then its complement.
    pub(crate) consequent_samples: Vec<[Vec<f64>; 2]>,
}

impl FisConfig {
    pub fn new(
        inputs: Vec<LinguisticVariable>,
        output: LinguisticVariable,
        rules: Vec<RuleAst>,
        settings: SystemSettings,
    ) -> Result<Self, FuzzyError> {
        for (i, var) in inputs.iter().enumerate() {
            if inputs[..i].iter().any(|v| v.name() == var.name()) || var.name() == output.name() {
                return Err(FuzzyError::DuplicateVariable(var.name().to_string()));
            }
        }
        if rules.is_empty() {
            return Err(FuzzyError::NoRules);
        }
        if settings.resolution < 2 {
            return Err(FuzzyError::Resolution(settings.resolution));
        }
        let resolved = rules
            .iter()
            .enumerate()
            .map(|(index, rule)| {
                resolve_rule(&inputs, &output, rule).map_err(|message| FuzzyError::InvalidRule {
                    index: index + 1,
                    message,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let universe = output.universe();
        let consequent_samples = output
            .sets()
            .iter()
            .map(|(_, mf)| {
                let plain: Vec<f64> = universe
                    .grid(settings.resolution)
                    .map(|x| mf.eval(x))
                    .collect();
                let complement = plain.iter().map(|m| 1.0 - m).collect();
                [plain, complement]
            })
            .collect();
        Ok(Self {
            inputs,
            output,
            rules,
            settings,
            resolved,
            consequent_samples,
        })
    }

    pub fn inputs(&self) -> &[LinguisticVariable] {
        &self.inputs
    }

    pub fn input(&self, name: &str) -> Option<&LinguisticVariable> {
        self.inputs.iter().find(|v| v.name() == name)
    }

    pub fn input_index(&self, name: &str) -> Option<usize> {
        self.inputs.iter().position(|v| v.name() == name)
    }

    pub fn output(&self) -> &LinguisticVariable {
        &self.output
    }

    pub fn rules(&self) -> &[RuleAst] {
        &self.rules
    }

    pub fn settings(&self) -> &SystemSettings {
        &self.settings
    }

    pub fn resolution(&self) -> usize {
        self.settings.resolution
    }

    /// Copy of this system with different operator selections.
    pub fn with_settings(&self, settings: SystemSettings) -> Result<Self, FuzzyError> {
        Self::new(
            self.inputs.clone(),
            self.output.clone(),
            self.rules.clone(),
            settings,
        )
    }

    pub fn with_resolution(&self, resolution: usize) -> Result<Self, FuzzyError> {
        self.with_settings(SystemSettings {
            resolution,
            ..self.settings
        })
    }

    /// Copy of this system with its rules replaced, for example reordered.
    pub fn with_rules(&self, rules: Vec<RuleAst>) -> Result<Self, FuzzyError> {
        Self::new(
            self.inputs.clone(),
            self.output.clone(),
            rules,
            self.settings,
        )
    }

    /// Sampled membership of output set `set` (or its complement).
    pub(crate) fn consequent(&self, set: usize, negated: bool) -> &[f64] {
        &self.consequent_samples[set][usize::from(negated)]
    }
}

fn resolve_rule(
    inputs: &[LinguisticVariable],
    output: &LinguisticVariable,
    rule: &RuleAst,
) -> Result<ResolvedRule, String> {
    if rule.antecedent.is_empty() {
        return Err("antecedent is empty".into());
    }
    if !RuleAst::weight_in_range(rule.weight) {
        return Err(format!("weight {} outside (0, 1]", rule.weight));
    }
    let antecedent = rule
        .antecedent
        .iter()
        .map(|clause| {
            let variable = inputs
                .iter()
                .position(|v| v.name() == clause.variable)
                .ok_or_else(|| format!("unknown input variable '{}'", clause.variable))?;
            let set = inputs[variable].set_index(&clause.set).ok_or_else(|| {
                format!("variable '{}' has no set '{}'", clause.variable, clause.set)
            })?;
            Ok(ResolvedClause {
                variable,
                set,
                negated: clause.negated,
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    if rule.consequent.variable != output.name() {
        return Err(format!(
            "consequent refers to '{}' but the output variable is '{}'",
            rule.consequent.variable,
            output.name()
        ));
    }
    let consequent_set = output.set_index(&rule.consequent.set).ok_or_else(|| {
        format!(
            "output variable '{}' has no set '{}'",
            output.name(),
            rule.consequent.set
        )
    })?;
    Ok(ResolvedRule {
        antecedent,
        consequent_set,
        consequent_negated: rule.consequent.negated,
        weight: rule.weight,
    })
}
