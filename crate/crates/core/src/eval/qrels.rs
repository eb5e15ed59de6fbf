use std::collections::BTreeMap;
use std::str::FromStr;

use super::EvalError;

/// Relevance judgments, `topic → doc → grade`. Grades of 1 or more count as
/// relevant.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Qrels {
    judgments: BTreeMap<String, BTreeMap<String, u32>>,
}

impl Qrels {
    pub fn insert(&mut self, topic: &str, doc: &str, grade: u32) -> bool {
        self.judgments
            .entry(topic.to_string())
            .or_default()
            .insert(doc.to_string(), grade)
            .is_none()
    }

    pub fn topics(&self) -> impl Iterator<Item = &str> {
        self.judgments.keys().map(String::as_str)
    }

    pub fn contains_topic(&self, topic: &str) -> bool {
        self.judgments.contains_key(topic)
    }

    pub fn grade(&self, topic: &str, doc: &str) -> Option<u32> {
        self.judgments.get(topic)?.get(doc).copied()
    }

    pub fn is_relevant(&self, topic: &str, doc: &str) -> bool {
        self.grade(topic, doc).is_some_and(|g| g >= 1)
    }

    /// R: number of relevant documents judged for `topic`.
    pub fn relevant_count(&self, topic: &str) -> usize {
        self.judgments
            .get(topic)
            .map_or(0, |docs| docs.values().filter(|&&g| g >= 1).count())
    }
}

impl FromStr for Qrels {
    type Err = EvalError;

    /// `topic_id 0 doc_id relevance` per line; the second field is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut qrels = Qrels::default();
        for (i, raw) in s.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: String| EvalError::Qrels { line, message };
            let fields: Vec<&str> = content.split_whitespace().collect();
            let [topic, _, doc, grade] = fields[..] else {
                return Err(err(format!("expected 4 fields, found {}", fields.len())));
            };
            let grade: u32 = grade
                .parse()
                .map_err(|_| err(format!("relevance '{grade}' is not a nonnegative integer")))?;
            if !qrels.insert(topic, doc, grade) {
                return Err(err(format!("duplicate judgment for ({topic}, {doc})")));
            }
        }
        Ok(qrels)
    }
}
