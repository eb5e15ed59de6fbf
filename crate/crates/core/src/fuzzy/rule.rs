/// One `(variable is [not] set)` reference.
#[derive(Debug, Clone, PartialEq)]
pub struct Clause {
    pub variable: String,
    pub set: String,
    pub negated: bool,
}

impl Clause {
    pub fn new(variable: impl Into<String>, set: impl Into<String>, negated: bool) -> Self {
        Self {
            variable: variable.into(),
            set: set.into(),
            negated,
        }
    }

    pub fn is(variable: impl Into<String>, set: impl Into<String>) -> Self {
        Self::new(variable, set, false)
    }

    pub fn is_not(variable: impl Into<String>, set: impl Into<String>) -> Self {
        Self::new(variable, set, true)
    }
}

/// Parsed form of a fuzzy rule: a conjunction of clauses implying one clause.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleAst {
    pub antecedent: Vec<Clause>,
    pub consequent: Clause,
    /// In `(0, 1]`; 1.0 when the rule text has no weight clause.
    pub weight: f64,
}

impl RuleAst {
    pub fn new(antecedent: Vec<Clause>, consequent: Clause) -> Self {
        Self {
            antecedent,
            consequent,
            weight: 1.0,
        }
    }

    pub fn with_weight(mut self, weight: f64) -> Self {
        self.weight = weight;
        self
    }

    pub fn weight_in_range(weight: f64) -> bool {
        weight > 0.0 && weight <= 1.0
    }
}
