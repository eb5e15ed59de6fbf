//! TREC-style evaluation: qrels and run files, MAP, P@10 and the fraction of
//! topics with no relevant document in the top ten.

mod metrics;
mod qrels;
mod report;
mod run;

use thiserror::Error;

pub use metrics::{
    average_precision, diff_runs, evaluate_run, precision_at_10, MetricsDelta, MetricsReport,
    TopicDelta, TopicMetrics,
};
pub use qrels::Qrels;
pub use report::{
    delta_jsonl, delta_table, format_percent, format_signed, report_jsonl, report_table,
};
pub use run::{RunEntry, RunFile};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("qrels line {line}: {message}")]
    Qrels { line: usize, message: String },
    #[error("run line {line}: {message}")]
    Run { line: usize, message: String },
    #[error("run: {0}")]
    InvalidRun(String),
    #[error("topic '{0}' is in the run but has no relevance judgments")]
    UnjudgedTopic(String),
    #[error("no topic has a relevant document; nothing to average")]
    NoTopics,
    #[error("reports cover different topics: {0}")]
    TopicMismatch(String),
}
