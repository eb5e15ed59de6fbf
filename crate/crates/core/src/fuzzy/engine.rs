use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::config::ResolvedRule;
use super::{
    AggregationMethod, AndMethod, DefuzzMethod, FisConfig, FuzzyError, ImplicationMethod, RuleAst,
    Universe,
};

/// Crisp inputs keyed by variable name.
pub type Inputs = BTreeMap<String, f64>;

/// Degrees of membership of every input in every one of its sets.
#[derive(Debug, Clone)]
pub struct Memberships<'a> {
    config: &'a FisConfig,
    degrees: Vec<Vec<f64>>,
}

impl Memberships<'_> {
    pub fn get(&self, variable: &str, set: &str) -> Option<f64> {
        let v = self.config.input_index(variable)?;
        let s = self.config.inputs()[v].set_index(set)?;
        Some(self.degrees[v][s])
    }

    /// `((variable, set), degree)` in declaration order.
    pub fn iter(&self) -> impl Iterator<Item = ((&str, &str), f64)> + '_ {
        self.config
            .inputs()
            .iter()
            .zip(&self.degrees)
            .flat_map(|(var, row)| {
                var.sets()
                    .iter()
                    .zip(row)
                    .map(move |((label, _), d)| ((var.name(), label.as_str()), *d))
            })
    }
}

/// The pointwise aggregated output set. Under sum aggregation samples may exceed 1.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateSet {
    universe: Universe,
    samples: Vec<f64>,
}

impl AggregateSet {
    pub fn new(universe: Universe, samples: Vec<f64>) -> Result<Self, FuzzyError> {
        if samples.len() < 2 {
            return Err(FuzzyError::Resolution(samples.len()));
        }
        if let Some(bad) = samples.iter().find(|s| !(s.is_finite() && **s >= 0.0)) {
            return Err(FuzzyError::InvalidMembership(format!(
                "aggregate sample {bad} is not a nonnegative number"
            )));
        }
        Ok(Self { universe, samples })
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn resolution(&self) -> usize {
        self.samples.len()
    }

    fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let n = self.samples.len();
        self.samples
            .iter()
            .enumerate()
            .map(move |(i, m)| (self.universe.grid_point(i, n), *m))
    }
}

/// A crisp output. `degenerate` marks the all-zero aggregate, which falls back
/// to the universe midpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Defuzzified {
    pub value: f64,
    pub degenerate: bool,
}

/// Full trace of one evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Inference {
    pub crisp: f64,
    pub degenerate: bool,
    /// Weighted firing strength of every rule, in rule order.
    pub firing_strengths: Vec<f64>,
}

fn and_fold(mut degrees: impl Iterator<Item = f64>, and: AndMethod) -> f64 {
    let first = degrees.next().unwrap_or(0.0);
    degrees.fold(first, |acc, d| match and {
        AndMethod::Prod => acc * d,
        AndMethod::Min => acc.min(d),
    })
}

fn literal(degree: f64, negated: bool) -> f64 {
    if negated {
        1.0 - degree
    } else {
        degree
    }
}

/// Firing strength of `rule`: the conjunction of its antecedent degrees
/// (complemented where negated), times the rule weight.
pub fn fire_rule(
    rule: &RuleAst,
    memberships: &Memberships<'_>,
    and: AndMethod,
) -> Result<f64, FuzzyError> {
    let degrees = rule
        .antecedent
        .iter()
        .map(|c| {
            memberships
                .get(&c.variable, &c.set)
                .map(|d| literal(d, c.negated))
                .ok_or_else(|| FuzzyError::UnknownInput(format!("{}.{}", c.variable, c.set)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(and_fold(degrees.into_iter(), and) * rule.weight)
}

fn fire_resolved(rule: &ResolvedRule, degrees: &[Vec<f64>], and: AndMethod) -> f64 {
    let conjuncts = rule
        .antecedent
        .iter()
        .map(|c| literal(degrees[c.variable][c.set], c.negated));
    and_fold(conjuncts, and) * rule.weight
}

/// Reshapes a sampled consequent by a firing strength.
pub fn imply(consequent: &[f64], strength: f64, method: ImplicationMethod) -> Vec<f64> {
    match method {
        ImplicationMethod::Prod => consequent.iter().map(|m| m * strength).collect(),
        ImplicationMethod::Min => consequent.iter().map(|m| m.min(strength)).collect(),
    }
}

fn lexicographic(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Pointwise combination of implied sets.
///
/// Sets are folded in a canonical (lexicographic) order, so the result is
/// bit-identical for every ordering of `sets`.
pub fn aggregate(
    universe: Universe,
    sets: &[Vec<f64>],
    method: AggregationMethod,
) -> Result<AggregateSet, FuzzyError> {
    let first = sets.first().ok_or(FuzzyError::EmptyAggregation)?;
    let n = first.len();
    if let Some(other) = sets.iter().find(|s| s.len() != n) {
        return Err(FuzzyError::GridMismatch(n, other.len()));
    }
    let mut order: Vec<&[f64]> = sets.iter().map(Vec::as_slice).collect();
    order.sort_by(|a, b| lexicographic(a, b));

    let mut acc = vec![0.0; n];
    for set in order {
        for (a, m) in acc.iter_mut().zip(set) {
            *a = match method {
                AggregationMethod::Sum => *a + m,
                AggregationMethod::Max => a.max(*m),
                AggregationMethod::Probor => *a + m - *a * m,
            };
        }
    }
    AggregateSet::new(universe, acc)
}

/// Collapses an aggregate set to one crisp value inside its universe.
pub fn defuzzify(set: &AggregateSet, method: DefuzzMethod) -> Defuzzified {
    let universe = set.universe();
    let fallback = Defuzzified {
        value: universe.midpoint(),
        degenerate: true,
    };
    let total: f64 = set.samples().iter().sum();
    if total <= 0.0 {
        return fallback;
    }
    let value = match method {
        DefuzzMethod::Centroid => {
            let moment: f64 = set.points().map(|(x, m)| x * m).sum();
            moment / total
        }
        DefuzzMethod::Bisector => {
            let half = total / 2.0;
            let mut running = 0.0;
            set.points()
                .find(|(_, m)| {
                    running += m;
                    running >= half
                })
                .map_or(universe.hi(), |(x, _)| x)
        }
        DefuzzMethod::Mom | DefuzzMethod::Lom | DefuzzMethod::Som => {
            let peak = set.samples().iter().copied().fold(0.0, f64::max);
            let plateau = set.points().filter(|(_, m)| *m == peak).map(|(x, _)| x);
            match method {
                DefuzzMethod::Som => plateau.fold(f64::INFINITY, f64::min),
                DefuzzMethod::Lom => plateau.fold(f64::NEG_INFINITY, f64::max),
                _ => {
                    let (sum, count) = plateau.fold((0.0, 0usize), |(s, c), x| (s + x, c + 1));
                    sum / count as f64
                }
            }
        }
    };
    Defuzzified {
        value: universe.clamp(value),
        degenerate: false,
    }
}

impl FisConfig {
    /// Degrees of every input in every set, from named crisp inputs.
    /// Inputs outside a variable's universe are clamped to it.
    pub fn fuzzify(&self, inputs: &Inputs) -> Result<Memberships<'_>, FuzzyError> {
        if let Some(extra) = inputs.keys().find(|k| self.input(k).is_none()) {
            return Err(FuzzyError::UnknownInput(extra.clone()));
        }
        let values = self
            .inputs()
            .iter()
            .map(|v| {
                inputs
                    .get(v.name())
                    .copied()
                    .ok_or_else(|| FuzzyError::MissingInput(v.name().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.fuzzify_values(&values)
    }

    /// Like [`FisConfig::fuzzify`] with values given in input declaration order.
    pub fn fuzzify_values(&self, values: &[f64]) -> Result<Memberships<'_>, FuzzyError> {
        if values.len() != self.inputs().len() {
            return Err(FuzzyError::InputCount {
                expected: self.inputs().len(),
                got: values.len(),
            });
        }
        let degrees = self
            .inputs()
            .iter()
            .zip(values)
            .map(|(var, &x)| {
                if !x.is_finite() {
                    return Err(FuzzyError::NonFiniteInput(var.name().to_string()));
                }
                let x = var.universe().clamp(x);
                Ok(var.sets().iter().map(|(_, mf)| mf.eval(x)).collect())
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Memberships {
            config: self,
            degrees,
        })
    }

    pub fn infer(&self, inputs: &Inputs) -> Result<Inference, FuzzyError> {
        let memberships = self.fuzzify(inputs)?;
        self.infer_fuzzified(&memberships)
    }

    pub fn infer_values(&self, values: &[f64]) -> Result<Inference, FuzzyError> {
        let memberships = self.fuzzify_values(values)?;
        self.infer_fuzzified(&memberships)
    }

    pub fn evaluate(&self, inputs: &Inputs) -> Result<f64, FuzzyError> {
        self.infer(inputs).map(|i| i.crisp)
    }

    pub fn evaluate_values(&self, values: &[f64]) -> Result<f64, FuzzyError> {
        self.infer_values(values).map(|i| i.crisp)
    }

    fn infer_fuzzified(&self, memberships: &Memberships<'_>) -> Result<Inference, FuzzyError> {
        let settings = self.settings();
        let firing_strengths: Vec<f64> = self
            .resolved
            .iter()
            .map(|r| fire_resolved(r, &memberships.degrees, settings.and_method))
            .collect();
        let implied: Vec<Vec<f64>> = self
            .resolved
            .iter()
            .zip(&firing_strengths)
            .map(|(r, &strength)| {
                imply(
                    self.consequent(r.consequent_set, r.consequent_negated),
                    strength,
                    settings.implication,
                )
            })
            .collect();
        let aggregate = aggregate(self.output().universe(), &implied, settings.aggregation)?;
        let crisp = defuzzify(&aggregate, settings.defuzzification);
        Ok(Inference {
            crisp: crisp.value,
            degenerate: crisp.degenerate,
            firing_strengths,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::{Clause, LinguisticVariable, MembershipFunction, SystemSettings};

    fn tf_idf_config(and: AndMethod) -> FisConfig {
        let rules = vec![
            RuleAst::new(
                vec![Clause::is("tf", "high"), Clause::is("idf", "high")],
                Clause::is("relevance", "high"),
            ),
            RuleAst::new(
                vec![Clause::is_not("tf", "high"), Clause::is_not("idf", "high")],
                Clause::is_not("relevance", "high"),
            ),
        ];
        FisConfig::new(
            vec![
                LinguisticVariable::high_not_high("tf"),
                LinguisticVariable::high_not_high("idf"),
            ],
            LinguisticVariable::high_not_high("relevance"),
            rules,
            SystemSettings {
                and_method: and,
                ..SystemSettings::default()
            },
        )
        .unwrap()
    }

    fn inputs(pairs: &[(&str, f64)]) -> Inputs {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn fuzzify_worked_example() {
        let config = tf_idf_config(AndMethod::Prod);
        let m = config
            .fuzzify(&inputs(&[("tf", 0.7), ("idf", 0.6)]))
            .unwrap();
        assert_eq!(m.get("tf", "high"), Some(0.7));
        assert!((m.get("tf", "not_high").unwrap() - 0.3).abs() < 1e-15);
        assert_eq!(m.iter().count(), 4);
    }

    #[test]
    fn fuzzify_clamps_and_checks_names() {
        let config = tf_idf_config(AndMethod::Prod);
        let m = config
            .fuzzify(&inputs(&[("tf", 1.3), ("idf", 0.5)]))
            .unwrap();
        assert_eq!(m.get("tf", "high"), Some(1.0));
        assert_eq!(m.get("idf", "high"), Some(0.5));
        assert_eq!(m.get("idf", "not_high"), Some(0.5));

        let missing = config.fuzzify(&inputs(&[("tf", 0.5)])).unwrap_err();
        assert_eq!(missing, FuzzyError::MissingInput("idf".into()));
        let extra = config
            .fuzzify(&inputs(&[("tf", 0.5), ("idf", 0.5), ("bm25", 0.1)]))
            .unwrap_err();
        assert_eq!(extra, FuzzyError::UnknownInput("bm25".into()));
        let nan = config
            .fuzzify(&inputs(&[("tf", f64::NAN), ("idf", 0.5)]))
            .unwrap_err();
        assert_eq!(nan, FuzzyError::NonFiniteInput("tf".into()));
    }

    #[test]
    fn fire_rule_operators() {
        let config = tf_idf_config(AndMethod::Prod);
        let m = config
            .fuzzify(&inputs(&[("tf", 0.7), ("idf", 0.6)]))
            .unwrap();
        let conj = &config.rules()[0];
        assert_eq!(fire_rule(conj, &m, AndMethod::Prod).unwrap(), 0.7 * 0.6);
        assert!((fire_rule(conj, &m, AndMethod::Prod).unwrap() - 0.42).abs() < 1e-15);
        assert_eq!(fire_rule(conj, &m, AndMethod::Min).unwrap(), 0.6);
        let weighted = conj.clone().with_weight(0.5);
        assert_eq!(
            fire_rule(&weighted, &m, AndMethod::Prod).unwrap(),
            0.7 * 0.6 * 0.5
        );

        let m = config
            .fuzzify(&inputs(&[("tf", 0.35), ("idf", 1.0)]))
            .unwrap();
        assert_eq!(fire_rule(conj, &m, AndMethod::Prod).unwrap(), 0.35);
    }

    #[test]
    fn resolved_firing_matches_named_firing() {
        let config = tf_idf_config(AndMethod::Prod);
        let input = inputs(&[("tf", 0.7), ("idf", 0.6)]);
        let m = config.fuzzify(&input).unwrap();
        let inference = config.infer(&input).unwrap();
        for (rule, strength) in config.rules().iter().zip(&inference.firing_strengths) {
            assert_eq!(fire_rule(rule, &m, AndMethod::Prod).unwrap(), *strength);
        }
    }

    #[test]
    fn imply_scales_or_truncates() {
        let tri = [0.0, 0.5, 1.0, 0.5, 0.0];
        assert_eq!(imply(&tri, 1.0, ImplicationMethod::Prod), tri.to_vec());
        assert_eq!(imply(&tri, 1.0, ImplicationMethod::Min), tri.to_vec());
        assert_eq!(
            imply(&tri, 0.42, ImplicationMethod::Prod),
            vec![0.0, 0.21, 0.42, 0.21, 0.0]
        );
        assert_eq!(
            imply(&tri, 0.42, ImplicationMethod::Min),
            vec![0.0, 0.42, 0.42, 0.42, 0.0]
        );
    }

    #[test]
    fn aggregate_methods() {
        let u = Universe::unit();
        let a = vec![0.0, 0.2, 0.6];
        let b = vec![0.5, 0.1, 0.6];
        assert_eq!(
            aggregate(u, std::slice::from_ref(&a), AggregationMethod::Sum)
                .unwrap()
                .samples(),
            a.as_slice()
        );
        assert_eq!(
            aggregate(u, &[a.clone(), b.clone()], AggregationMethod::Max)
                .unwrap()
                .samples(),
            &[0.5, 0.2, 0.6]
        );
        let sum = aggregate(u, &[a.clone(), b.clone()], AggregationMethod::Sum).unwrap();
        assert_eq!(sum.samples()[2], 1.2);
        let por = aggregate(u, &[a.clone(), b.clone()], AggregationMethod::Probor).unwrap();
        assert!((por.samples()[2] - 0.84).abs() < 1e-15);

        assert_eq!(
            aggregate(u, &[], AggregationMethod::Sum).unwrap_err(),
            FuzzyError::EmptyAggregation
        );
        assert_eq!(
            aggregate(u, &[a, vec![0.0; 4]], AggregationMethod::Sum).unwrap_err(),
            FuzzyError::GridMismatch(3, 4)
        );
    }

    #[test]
    fn sum_aggregation_matches_straight_loop() {
        // Two scaled triangles on an 11-point grid.
        let u = Universe::unit();
        let tri = MembershipFunction::triangular(0.0, 0.4, 1.0).unwrap();
        let grid: Vec<f64> = u.grid(11).collect();
        let s1: Vec<f64> = grid.iter().map(|&x| 0.3 * tri.eval(x)).collect();
        let s2: Vec<f64> = grid.iter().map(|&x| 0.9 * tri.eval(1.0 - x)).collect();
        let got = aggregate(u, &[s1.clone(), s2.clone()], AggregationMethod::Sum).unwrap();
        let mut expected = Vec::new();
        for i in 0..11 {
            expected.push(s1[i] + s2[i]);
        }
        for (g, e) in got.samples().iter().zip(&expected) {
            assert!((g - e).abs() < 1e-15);
        }
    }

    #[test]
    fn defuzzify_symmetric_and_triangle() {
        let u = Universe::unit();
        let res = 1001;
        let high = MembershipFunction::triangular(0.0, 1.0, 1.0).unwrap();
        let set = AggregateSet::new(u, u.grid(res).map(|x| high.eval(x)).collect()).unwrap();
        let c = defuzzify(&set, DefuzzMethod::Centroid);
        assert!(!c.degenerate);
        assert!((c.value - 2.0 / 3.0).abs() <= 2.0 / res as f64);

        let peak = MembershipFunction::triangular(0.1, 0.5, 0.9).unwrap();
        let sym = AggregateSet::new(u, u.grid(res).map(|x| peak.eval(x)).collect()).unwrap();
        for m in DefuzzMethod::ALL {
            let v = defuzzify(&sym, *m).value;
            assert!((v - 0.5).abs() < 1e-9, "{m}: {v}");
        }
    }

    #[test]
    fn defuzzify_maximum_family() {
        let u = Universe::new(0.0, 4.0).unwrap();
        let set = AggregateSet::new(u, vec![0.1, 0.8, 0.8, 0.8, 0.2]).unwrap();
        assert_eq!(defuzzify(&set, DefuzzMethod::Som).value, 1.0);
        assert_eq!(defuzzify(&set, DefuzzMethod::Lom).value, 3.0);
        assert_eq!(defuzzify(&set, DefuzzMethod::Mom).value, 2.0);
        // running area 0.1, 0.9, 1.7 >= 2.7 / 2 at x = 2
        assert_eq!(defuzzify(&set, DefuzzMethod::Bisector).value, 2.0);
    }

    #[test]
    fn all_zero_aggregate_falls_back_to_midpoint() {
        let u = Universe::new(2.0, 6.0).unwrap();
        let set = AggregateSet::new(u, vec![0.0; 9]).unwrap();
        for m in DefuzzMethod::ALL {
            let d = defuzzify(&set, *m);
            assert_eq!(
                d,
                Defuzzified {
                    value: 4.0,
                    degenerate: true
                }
            );
        }
    }

    #[test]
    fn aggregate_rejects_negative_samples() {
        assert!(AggregateSet::new(Universe::unit(), vec![0.0, -0.1]).is_err());
    }

    #[test]
    fn single_rule_system_returns_centroid_of_consequent() {
        let config = FisConfig::new(
            vec![LinguisticVariable::high_not_high("x")],
            LinguisticVariable::high_not_high("y"),
            vec![RuleAst::new(
                vec![Clause::is("x", "high")],
                Clause::is("y", "high"),
            )],
            SystemSettings::default(),
        )
        .unwrap();
        let got = config.evaluate(&inputs(&[("x", 1.0)])).unwrap();
        let u = Universe::unit();
        let high = MembershipFunction::triangular(0.0, 1.0, 1.0).unwrap();
        let alone = AggregateSet::new(u, u.grid(1001).map(|x| high.eval(x)).collect()).unwrap();
        assert_eq!(got, defuzzify(&alone, DefuzzMethod::Centroid).value);
    }

    #[test]
    fn degenerate_flag_surfaces_through_inference() {
        let config = tf_idf_config(AndMethod::Prod);
        // tf fully high, idf fully not high: both rules fire at zero.
        let out = config.infer(&inputs(&[("tf", 1.0), ("idf", 0.0)])).unwrap();
        assert!(out.degenerate);
        assert_eq!(out.crisp, 0.5);
        assert_eq!(out.firing_strengths, vec![0.0, 0.0]);
    }
}
