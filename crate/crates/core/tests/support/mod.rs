//! Straight-line reference implementations used as test oracles, and random
//! inference systems described as plain data so both sides can be built from
//! the same description.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;

use frank_core::fuzzy::{
    AggregationMethod, AndMethod, Clause, DefuzzMethod, FisConfig, ImplicationMethod,
    LinguisticVariable, MembershipFunction, RuleAst, SystemSettings, Universe,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

/// A file relative to the workspace root.
pub fn read_workspace_file(rel: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join(rel);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

const STOP: &[&str] = &[
    "the", "and", "of", "to", "in", "is", "it", "that", "this", "for", "on", "with", "as", "at",
    "by", "an", "be", "or", "are", "was", "but", "not", "no", "if", "into", "their", "there",
    "these", "they", "will",
];

pub fn words(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for c in text.to_lowercase().chars().chain(std::iter::once(' ')) {
        if c.is_alphanumeric() {
            cur.push(c);
        } else if !cur.is_empty() {
            if cur.chars().count() > 1 && !STOP.contains(&cur.as_str()) {
                out.push(cur.clone());
            }
            cur.clear();
        }
    }
    out
}

pub struct OracleDoc {
    pub id: String,
    pub counts: HashMap<String, u32>,
    pub len: u32,
    pub max_tf: u32,
}

pub struct OracleCorpus {
    pub docs: Vec<OracleDoc>,
    pub df: HashMap<String, u32>,
}

impl OracleCorpus {
    pub fn new(docs: &[(String, String)]) -> Self {
        let mut out = Vec::new();
        let mut df: HashMap<String, u32> = HashMap::new();
        for (id, text) in docs {
            let mut counts: HashMap<String, u32> = HashMap::new();
            let toks = words(text);
            for t in &toks {
                *counts.entry(t.clone()).or_insert(0) += 1;
            }
            for t in counts.keys() {
                *df.entry(t.clone()).or_insert(0) += 1;
            }
            let max_tf = counts.values().copied().max().unwrap_or(0);
            out.push(OracleDoc {
                id: id.clone(),
                counts,
                len: toks.len() as u32,
                max_tf,
            });
        }
        OracleCorpus { docs: out, df }
    }

    pub fn from_jsonl(text: &str) -> Self {
        let docs: Vec<(String, String)> = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                let v: serde_json::Value = serde_json::from_str(l).unwrap();
                (
                    v["doc_id"].as_str().unwrap().to_string(),
                    v["text"].as_str().unwrap().to_string(),
                )
            })
            .collect();
        Self::new(&docs)
    }

    pub fn n(&self) -> f64 {
        self.docs.len() as f64
    }

    pub fn idf_raw(&self, t: &str) -> f64 {
        match self.df.get(t) {
            Some(&n) => (self.n() / n as f64).ln(),
            None => 0.0,
        }
    }

    pub fn idf_norm(&self, t: &str) -> f64 {
        if self.docs.len() <= 1 || !self.df.contains_key(t) {
            return 0.0;
        }
        self.idf_raw(t) / self.n().ln()
    }

    pub fn tf_norm(&self, d: &OracleDoc, t: &str) -> f64 {
        match d.counts.get(t) {
            Some(&c) => c as f64 / d.max_tf as f64,
            None => 0.0,
        }
    }
}

pub fn distinct_terms(query: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for w in words(query) {
        if !out.contains(&w) {
            out.push(w);
        }
    }
    out
}

/// Default ranking system evaluated by brute force: high(x) = x, not_high(x) =
/// 1 - x on [0, 1], product everywhere, sum aggregation, centroid on
/// `resolution` points.
pub fn rfis_bruteforce(tf: &[f64], idf: &[f64], overlap: f64, resolution: usize) -> f64 {
    let t = tf.len() as f64;
    let w = 1.0 / t;
    let wo = w / 6.0;
    let clamp = |x: f64| x.clamp(0.0, 1.0);
    // each rule contributes a scaled copy of y or of 1 - y
    let mut rules: Vec<(f64, bool)> = Vec::new();
    for i in 0..tf.len() {
        let (a, b) = (clamp(tf[i]), clamp(idf[i]));
        rules.push((a * b * w, true));
        rules.push(((1.0 - a) * (1.0 - b) * w, false));
    }
    let o = clamp(overlap);
    rules.push((o * wo, true));
    rules.push(((1.0 - o) * wo, false));
    let mut num = 0.0;
    let mut den = 0.0;
    for j in 0..resolution {
        let y = j as f64 / (resolution - 1) as f64;
        let mut mu = 0.0;
        for &(s, high) in &rules {
            mu += s * if high { y } else { 1.0 - y };
        }
        num += y * mu;
        den += mu;
    }
    if den == 0.0 {
        0.5
    } else {
        num / den
    }
}

pub fn rfis_oracle_score(
    c: &OracleCorpus,
    d: &OracleDoc,
    terms: &[String],
    resolution: usize,
) -> f64 {
    let tf: Vec<f64> = terms.iter().map(|t| c.tf_norm(d, t)).collect();
    let idf: Vec<f64> = terms.iter().map(|t| c.idf_norm(t)).collect();
    let matched = terms.iter().filter(|t| d.counts.contains_key(*t)).count();
    rfis_bruteforce(&tf, &idf, matched as f64 / terms.len() as f64, resolution)
}

pub fn baseline_oracle_score(c: &OracleCorpus, d: &OracleDoc, terms: &[String]) -> f64 {
    let mut sum = 0.0;
    let mut matched = 0;
    for t in terms {
        if d.counts.contains_key(t) {
            matched += 1;
            sum += c.tf_norm(d, t) * c.idf_raw(t) / (d.len as f64).sqrt();
        }
    }
    let sq: f64 = terms.iter().map(|t| c.idf_raw(t).powi(2)).sum();
    let qn = if sq > 0.0 { 1.0 / sq.sqrt() } else { 1.0 };
    sum * (matched as f64 / terms.len() as f64) * qn
}

/// TREC run text for the candidates of every query, ranked by `score`.
pub fn oracle_run(
    c: &OracleCorpus,
    queries: &[(String, String)],
    tag: &str,
    k: usize,
    score: impl Fn(&OracleDoc, &[String]) -> f64,
) -> String {
    let mut by_topic = BTreeMap::new();
    for (topic, q) in queries {
        let terms = distinct_terms(q);
        let mut scored: Vec<(f64, &str)> = c
            .docs
            .iter()
            .filter(|d| terms.iter().any(|t| d.counts.contains_key(t)))
            .map(|d| (score(d, &terms), d.id.as_str()))
            .collect();
        // mathematically equal scores may differ in the last bits here
        let key = |s: f64| (s * 1e9).round() as i64;
        scored.sort_by(|a, b| key(b.0).cmp(&key(a.0)).then(a.1.cmp(b.1)));
        scored.truncate(k);
        let mut lines = String::new();
        for (i, (s, id)) in scored.iter().enumerate() {
            lines += &format!("{topic} Q0 {id} {} {s:.6} {tag}\n", i + 1);
        }
        by_topic.insert(topic.clone(), lines);
    }
    by_topic.into_values().collect()
}

pub fn read_queries(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (t, q) = l.split_once('\t').unwrap();
            (t.to_string(), q.to_string())
        })
        .collect()
}

/// Exact rational `p / q` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio(pub i128, pub i128);

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl Ratio {
    pub fn new(p: i128, q: i128) -> Self {
        let g = gcd(p, q).max(1);
        Ratio(p / g, q / g)
    }

    pub fn add(self, o: Ratio) -> Ratio {
        Ratio::new(self.0 * o.1 + o.0 * self.1, self.1 * o.1)
    }

    pub fn div(self, n: i128) -> Ratio {
        Ratio::new(self.0, self.1 * n)
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / self.1 as f64
    }
}

/// Exact AP from a ranked list of doc ids and the set of relevant ids.
pub fn exact_ap(ranked: &[&str], relevant: &[&str]) -> Ratio {
    let mut sum = Ratio::new(0, 1);
    let mut hits = 0;
    for (i, d) in ranked.iter().enumerate() {
        if relevant.contains(d) {
            hits += 1;
            sum = sum.add(Ratio::new(hits, i as i128 + 1));
        }
    }
    sum.div(relevant.len() as i128)
}

pub fn tri(a: f64, b: f64, c: f64, x: f64) -> f64 {
    if x == b {
        1.0
    } else if x <= a || x >= c {
        0.0
    } else if x < b {
        (x - a) / (b - a)
    } else {
        (c - x) / (c - b)
    }
}

pub struct Var {
    pub lo: f64,
    pub hi: f64,
    pub sets: Vec<(f64, f64, f64)>,
}

pub struct Rule {
    pub ante: Vec<(usize, usize, bool)>,
    pub cons: (usize, bool),
    pub weight: f64,
}

pub struct System {
    pub inputs: Vec<Var>,
    pub output: Var,
    pub rules: Vec<Rule>,
    pub and_min: bool,
    pub imp_min: bool,
    pub agg: usize,
}

pub fn random_var(rng: &mut ChaCha8Rng) -> Var {
    let lo = rng.gen_range(-5.0..5.0);
    let hi = lo + rng.gen_range(0.5..10.0);
    let sets = (0..rng.gen_range(1..=3))
        .map(|_| {
            let mut p = [lo, hi, rng.gen_range(lo..hi)];
            if rng.gen_bool(0.5) {
                p = [
                    rng.gen_range(lo..hi),
                    rng.gen_range(lo..hi),
                    rng.gen_range(lo..hi),
                ];
            }
            p.sort_by(f64::total_cmp);
            if p[0] == p[2] {
                p[2] = p[0] + 0.1;
            }
            (p[0], p[1], p[2])
        })
        .collect();
    Var { lo, hi, sets }
}

pub fn random_system(rng: &mut ChaCha8Rng) -> System {
    let inputs: Vec<Var> = (0..rng.gen_range(1..=3)).map(|_| random_var(rng)).collect();
    let output = random_var(rng);
    let rules = (0..rng.gen_range(1..=6))
        .map(|_| Rule {
            ante: (0..rng.gen_range(1..=inputs.len()))
                .map(|_| {
                    let v = rng.gen_range(0..inputs.len());
                    (v, rng.gen_range(0..inputs[v].sets.len()), rng.gen_bool(0.3))
                })
                .collect(),
            cons: (rng.gen_range(0..output.sets.len()), rng.gen_bool(0.3)),
            weight: if rng.gen_bool(0.5) {
                1.0
            } else {
                rng.gen_range(0.01..=1.0)
            },
        })
        .collect();
    System {
        inputs,
        output,
        rules,
        and_min: rng.gen_bool(0.5),
        imp_min: rng.gen_bool(0.5),
        agg: rng.gen_range(0..3),
    }
}

pub fn to_library(s: &System, defuzz: DefuzzMethod, resolution: usize) -> FisConfig {
    let var = |name: String, v: &Var| {
        let sets = v
            .sets
            .iter()
            .enumerate()
            .map(|(i, &(a, b, c))| {
                (
                    format!("s{i}"),
                    MembershipFunction::triangular(a, b, c).unwrap(),
                )
            })
            .collect();
        LinguisticVariable::new(name, Universe::new(v.lo, v.hi).unwrap(), sets).unwrap()
    };
    let inputs = s
        .inputs
        .iter()
        .enumerate()
        .map(|(i, v)| var(format!("x{i}"), v))
        .collect();
    let clause = |v: String, set: usize, neg: bool| Clause {
        variable: v,
        set: format!("s{set}"),
        negated: neg,
    };
    let rules = s
        .rules
        .iter()
        .map(|r| RuleAst {
            antecedent: r
                .ante
                .iter()
                .map(|&(v, set, n)| clause(format!("x{v}"), set, n))
                .collect(),
            consequent: clause("y".into(), r.cons.0, r.cons.1),
            weight: r.weight,
        })
        .collect();
    let settings = SystemSettings {
        and_method: if s.and_min {
            AndMethod::Min
        } else {
            AndMethod::Prod
        },
        implication: if s.imp_min {
            ImplicationMethod::Min
        } else {
            ImplicationMethod::Prod
        },
        aggregation: [
            AggregationMethod::Sum,
            AggregationMethod::Max,
            AggregationMethod::Probor,
        ][s.agg],
        defuzzification: defuzz,
        resolution,
    };
    FisConfig::new(inputs, var("y".into(), &s.output), rules, settings).unwrap()
}

/// Aggregate samples and grid of the brute-force pipeline.
pub fn brute_aggregate(s: &System, x: &[f64], resolution: usize) -> (Vec<f64>, Vec<f64>) {
    let o = &s.output;
    let grid: Vec<f64> = (0..resolution)
        .map(|j| o.lo + (o.hi - o.lo) * j as f64 / (resolution - 1) as f64)
        .collect();
    let mut agg = vec![0.0; resolution];
    for r in &s.rules {
        let mut strength = if s.and_min { f64::INFINITY } else { 1.0 };
        for &(v, set, neg) in &r.ante {
            let var = &s.inputs[v];
            let xv = x[v].max(var.lo).min(var.hi);
            let (a, b, c) = var.sets[set];
            let mut d = tri(a, b, c, xv);
            if neg {
                d = 1.0 - d;
            }
            strength = if s.and_min {
                strength.min(d)
            } else {
                strength * d
            };
        }
        strength *= r.weight;
        let (a, b, c) = o.sets[r.cons.0];
        for (j, y) in grid.iter().enumerate() {
            let mut m = tri(a, b, c, *y);
            if r.cons.1 {
                m = 1.0 - m;
            }
            let implied = if s.imp_min {
                m.min(strength)
            } else {
                m * strength
            };
            agg[j] = match s.agg {
                0 => agg[j] + implied,
                1 => agg[j].max(implied),
                _ => agg[j] + implied - agg[j] * implied,
            };
        }
    }
    (grid, agg)
}
