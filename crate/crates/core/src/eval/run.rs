use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::str::FromStr;

use super::EvalError;
use crate::ranker::RankedList;

#[derive(Debug, Clone, PartialEq)]
pub struct RunEntry {
    pub doc_id: String,
    pub rank: usize,
    pub score: f64,
}

/// One system's ranked output for a set of topics, in TREC exchange format.
#[derive(Debug, Clone, PartialEq)]
pub struct RunFile {
    tag: String,
    topics: BTreeMap<String, Vec<RunEntry>>,
}

fn valid_field(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(char::is_whitespace)
}

fn check_topic(topic: &str, entries: &[RunEntry]) -> Result<(), String> {
    let mut seen = HashSet::new();
    for (i, e) in entries.iter().enumerate() {
        if e.rank != i + 1 {
            return Err(format!("topic {topic}: ranks are not contiguous from 1"));
        }
        if !seen.insert(e.doc_id.as_str()) {
            return Err(format!("topic {topic}: document {} listed twice", e.doc_id));
        }
        if i > 0 && entries[i - 1].score < e.score {
            return Err(format!("topic {topic}: scores increase at rank {}", e.rank));
        }
    }
    Ok(())
}

impl RunFile {
    pub fn new(
        tag: impl Into<String>,
        topics: BTreeMap<String, Vec<RunEntry>>,
    ) -> Result<Self, EvalError> {
        let tag = tag.into();
        if !valid_field(&tag) {
            return Err(EvalError::InvalidRun(format!("invalid run tag '{tag}'")));
        }
        for (topic, entries) in &topics {
            if !valid_field(topic) {
                return Err(EvalError::InvalidRun(format!("invalid topic id '{topic}'")));
            }
            if let Some(bad) = entries.iter().find(|e| !valid_field(&e.doc_id)) {
                return Err(EvalError::InvalidRun(format!(
                    "invalid doc id '{}'",
                    bad.doc_id
                )));
            }
            check_topic(topic, entries).map_err(EvalError::InvalidRun)?;
        }
        Ok(Self { tag, topics })
    }

    /// Collects one ranked list per topic.
    pub fn from_ranked(
        tag: impl Into<String>,
        lists: impl IntoIterator<Item = RankedList>,
    ) -> Result<Self, EvalError> {
        let mut topics = BTreeMap::new();
        for list in lists {
            let entries = list
                .entries
                .into_iter()
                .map(|e| RunEntry {
                    doc_id: e.doc_id,
                    rank: e.rank,
                    score: e.score,
                })
                .collect();
            if topics.insert(list.query_id.clone(), entries).is_some() {
                return Err(EvalError::InvalidRun(format!(
                    "topic '{}' appears twice",
                    list.query_id
                )));
            }
        }
        Self::new(tag, topics)
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn topics(&self) -> impl Iterator<Item = (&str, &[RunEntry])> {
        self.topics.iter().map(|(t, e)| (t.as_str(), e.as_slice()))
    }

    pub fn topic(&self, topic: &str) -> Option<&[RunEntry]> {
        self.topics.get(topic).map(Vec::as_slice)
    }

    /// `topic Q0 doc rank score tag` lines ordered by topic then rank, with
    /// scores printed to six decimal places.
    pub fn to_trec_string(&self) -> String {
        let mut out = String::new();
        for (topic, entries) in &self.topics {
            for e in entries {
                writeln!(
                    out,
                    "{topic} Q0 {} {} {:.6} {}",
                    e.doc_id, e.rank, e.score, self.tag
                )
                .expect("writing to a String cannot fail");
            }
        }
        out
    }
}

impl FromStr for RunFile {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut tag: Option<String> = None;
        let mut topics: BTreeMap<String, Vec<RunEntry>> = BTreeMap::new();
        for (i, raw) in s.lines().enumerate() {
            let line = i + 1;
            if raw.trim().is_empty() {
                continue;
            }
            let err = |message: String| EvalError::Run { line, message };
            let fields: Vec<&str> = raw.split_whitespace().collect();
            let [topic, _, doc, rank, score, run_tag] = fields[..] else {
                return Err(err(format!("expected 6 fields, found {}", fields.len())));
            };
            let rank: usize = rank
                .parse()
                .map_err(|_| err(format!("rank '{rank}' is not a positive integer")))?;
            let score: f64 = score
                .parse()
                .ok()
                .filter(|s: &f64| s.is_finite())
                .ok_or_else(|| err(format!("score '{score}' is not a number")))?;
            match &tag {
                None => tag = Some(run_tag.to_string()),
                Some(t) if t != run_tag => {
                    return Err(err(format!("run tag '{run_tag}' differs from '{t}'")));
                }
                Some(_) => {}
            }
            topics.entry(topic.to_string()).or_default().push(RunEntry {
                doc_id: doc.to_string(),
                rank,
                score,
            });
        }
        let tag = tag.ok_or_else(|| EvalError::InvalidRun("run file has no entries".into()))?;
        for entries in topics.values_mut() {
            entries.sort_by_key(|e| e.rank);
        }
        Self::new(tag, topics)
    }
}
