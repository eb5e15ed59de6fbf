use std::collections::BTreeMap;

use super::{EvalError, Qrels, RunFile};

/// Double-double accumulator. Sums of fractions such as `1/1 + 2/3` come out
/// as the nearest `f64` to the exact rational instead of drifting by an ulp.
#[derive(Debug, Clone, Copy, Default)]
struct PreciseSum {
    hi: f64,
    lo: f64,
}

impl PreciseSum {
    fn add(&mut self, value: f64, error: f64) {
        let s = self.hi + value;
        let v = s - self.hi;
        let e = (self.hi - (s - v)) + (value - v);
        let lo = self.lo + e + error;
        self.hi = s + lo;
        self.lo = lo - (self.hi - s);
    }

    /// Adds `num / den` including the rounding residual of the division.
    fn add_ratio(&mut self, num: f64, den: f64) {
        let q = num / den;
        self.add(q, (-q).mul_add(den, num) / den);
    }

    fn divided_by(self, den: f64) -> f64 {
        let q = self.hi / den;
        q + ((-q).mul_add(den, self.hi) + self.lo) / den
    }
}

/// Average precision of a ranking for one topic, using binary relevance.
/// The denominator is every relevant document in the qrels, retrieved or not.
/// `None` when the topic has no relevant document.
pub fn average_precision<'a>(
    ranked: impl IntoIterator<Item = &'a str>,
    qrels: &Qrels,
    topic: &str,
) -> Option<f64> {
    let relevant = qrels.relevant_count(topic);
    if relevant == 0 {
        return None;
    }
    let mut hits = 0usize;
    let mut sum = PreciseSum::default();
    for (i, doc) in ranked.into_iter().enumerate() {
        if qrels.is_relevant(topic, doc) {
            hits += 1;
            sum.add_ratio(hits as f64, (i + 1) as f64);
        }
    }
    Some(sum.divided_by(relevant as f64))
}

/// Relevant documents among the first ten, over ten. Short lists are not
/// padded: the denominator stays 10.
pub fn precision_at_10<'a>(
    ranked: impl IntoIterator<Item = &'a str>,
    qrels: &Qrels,
    topic: &str,
) -> f64 {
    let hits = ranked
        .into_iter()
        .take(10)
        .filter(|doc| qrels.is_relevant(topic, doc))
        .count();
    hits as f64 / 10.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TopicMetrics {
    pub ap: f64,
    pub p10: f64,
    /// No relevant document in the top ten.
    pub no_relevant_in_top10: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub tag: String,
    pub per_topic: BTreeMap<String, TopicMetrics>,
    pub map: f64,
    pub p10_mean: f64,
    /// Topics with `no_relevant_in_top10`.
    pub flagged: usize,
    /// Judged topics without a single relevant document; left out of every
    /// average.
    pub excluded: Vec<String>,
}

impl MetricsReport {
    pub fn topic_count(&self) -> usize {
        self.per_topic.len()
    }

    /// Fraction of topics with no relevant document in the top ten, in `[0, 1]`.
    pub fn pct_no(&self) -> f64 {
        self.flagged as f64 / self.topic_count() as f64
    }
}

/// Scores every topic of the qrels that has at least one relevant document.
/// Such topics missing from the run score zero. A run topic without any
/// judgments is an error.
pub fn evaluate_run(run: &RunFile, qrels: &Qrels) -> Result<MetricsReport, EvalError> {
    if let Some((topic, _)) = run.topics().find(|(t, _)| !qrels.contains_topic(t)) {
        return Err(EvalError::UnjudgedTopic(topic.to_string()));
    }
    let mut per_topic = BTreeMap::new();
    let mut excluded = Vec::new();
    for topic in qrels.topics() {
        let ranked: Vec<&str> = run
            .topic(topic)
            .unwrap_or(&[])
            .iter()
            .map(|e| e.doc_id.as_str())
            .collect();
        let Some(ap) = average_precision(ranked.iter().copied(), qrels, topic) else {
            excluded.push(topic.to_string());
            continue;
        };
        let p10 = precision_at_10(ranked.iter().copied(), qrels, topic);
        per_topic.insert(
            topic.to_string(),
            TopicMetrics {
                ap,
                p10,
                no_relevant_in_top10: p10 == 0.0,
            },
        );
    }
    if per_topic.is_empty() {
        return Err(EvalError::NoTopics);
    }
    let n = per_topic.len() as f64;
    let mean = |field: fn(&TopicMetrics) -> f64| {
        let mut sum = PreciseSum::default();
        per_topic.values().for_each(|m| sum.add(field(m), 0.0));
        sum.divided_by(n)
    };
    let map = mean(|m| m.ap);
    let p10_mean = mean(|m| m.p10);
    let flagged = per_topic
        .values()
        .filter(|m| m.no_relevant_in_top10)
        .count();
    Ok(MetricsReport {
        tag: run.tag().to_string(),
        per_topic,
        map,
        p10_mean,
        flagged,
        excluded,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TopicDelta {
    pub ap: f64,
    pub p10: f64,
    /// -1, 0 or +1.
    pub no_relevant_in_top10: i32,
}

/// Differences `b − a`, per topic and averaged.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsDelta {
    pub tag_a: String,
    pub tag_b: String,
    pub map: f64,
    pub p10_mean: f64,
    pub pct_no: f64,
    pub per_topic: BTreeMap<String, TopicDelta>,
}

pub fn diff_runs(a: &MetricsReport, b: &MetricsReport) -> Result<MetricsDelta, EvalError> {
    if !a.per_topic.keys().eq(b.per_topic.keys()) {
        let only_a: Vec<&str> = a
            .per_topic
            .keys()
            .filter(|t| !b.per_topic.contains_key(*t))
            .map(String::as_str)
            .collect();
        let only_b: Vec<&str> = b
            .per_topic
            .keys()
            .filter(|t| !a.per_topic.contains_key(*t))
            .map(String::as_str)
            .collect();
        return Err(EvalError::TopicMismatch(format!(
            "only in {}: [{}]; only in {}: [{}]",
            a.tag,
            only_a.join(", "),
            b.tag,
            only_b.join(", ")
        )));
    }
    let per_topic = a
        .per_topic
        .iter()
        .zip(b.per_topic.values())
        .map(|((topic, ma), mb)| {
            (
                topic.clone(),
                TopicDelta {
                    ap: mb.ap - ma.ap,
                    p10: mb.p10 - ma.p10,
                    no_relevant_in_top10: i32::from(mb.no_relevant_in_top10)
                        - i32::from(ma.no_relevant_in_top10),
                },
            )
        })
        .collect();
    Ok(MetricsDelta {
        tag_a: a.tag.clone(),
        tag_b: b.tag.clone(),
        map: b.map - a.map,
        p10_mean: b.p10_mean - a.p10_mean,
        pct_no: b.pct_no() - a.pct_no(),
        per_topic,
    })
}
