//! Plain-text and JSON-lines renderings of evaluation results.
//!
//! Tables have the columns `Tag`, `Topic Set`, `MAP`, `P10`, `%no`. MAP and
//! P10 print with four decimals; `%no` is rounded half-to-even to two
//! decimals from the exact topic counts.

use serde::Serialize;

use super::{MetricsDelta, MetricsReport};

/// `num / den` as a percentage with two decimals, rounded half to even.
/// With `signed`, nonnegative values get a leading `+`.
fn percent(num: i128, den: i128, signed: bool) -> String {
    debug_assert!(den > 0);
    let negative = num < 0;
    let scaled = num.abs() * 10_000;
    let (mut q, r) = (scaled / den, scaled % den);
    if 2 * r > den || (2 * r == den && q % 2 == 1) {
        q += 1;
    }
    let sign = match (negative, signed) {
        (true, _) => "-",
        (false, true) => "+",
        (false, false) => "",
    };
    format!("{sign}{}.{:02}%", q / 100, q % 100)
}

/// `flagged / total` as a percentage, for example `25.00%`.
pub fn format_percent(flagged: usize, total: usize) -> String {
    percent(flagged as i128, total as i128, false)
}

/// Four-decimal value with an explicit sign, for example `+0.0201`.
pub fn format_signed(value: f64) -> String {
    let sign = if value.is_sign_negative() && value != 0.0 {
        "-"
    } else {
        "+"
    };
    format!("{sign}{:.4}", value.abs())
}

fn render(rows: &[[String; 5]]) -> String {
    let header = ["Tag", "Topic Set", "MAP", "P10", "%no"].map(String::from);
    let all: Vec<&[String; 5]> = std::iter::once(&header).chain(rows).collect();
    let widths: Vec<usize> = (0..5)
        .map(|c| all.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in all {
        let line = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn row(report: &MetricsReport, topic_set: &str) -> [String; 5] {
    [
        report.tag.clone(),
        topic_set.to_string(),
        format!("{:.4}", report.map),
        format!("{:.4}", report.p10_mean),
        format_percent(report.flagged, report.topic_count()),
    ]
}

/// One row per report.
pub fn report_table(topic_set: &str, reports: &[&MetricsReport]) -> String {
    let rows: Vec<[String; 5]> = reports.iter().map(|r| row(r, topic_set)).collect();
    render(&rows)
}

/// The first run in absolute terms, then the second as signed differences.
pub fn delta_table(
    topic_set: &str,
    a: &MetricsReport,
    b: &MetricsReport,
    delta: &MetricsDelta,
) -> String {
    let (ta, tb) = (a.topic_count() as i128, b.topic_count() as i128);
    let pct_delta = percent(
        b.flagged as i128 * ta - a.flagged as i128 * tb,
        ta * tb,
        true,
    );
    let rows = [
        row(a, topic_set),
        [
            b.tag.clone(),
            topic_set.to_string(),
            format_signed(delta.map),
            format_signed(delta.p10_mean),
            pct_delta,
        ],
    ];
    render(&rows)
}

#[derive(Serialize)]
struct TopicLine<'a> {
    kind: &'static str,
    tag: &'a str,
    topic: &'a str,
    ap: f64,
    p10: f64,
    no_rel_top10: bool,
}

#[derive(Serialize)]
struct AggregateLine<'a> {
    kind: &'static str,
    tag: &'a str,
    topic_set: &'a str,
    map: f64,
    p10: f64,
    pct_no: f64,
    topics: usize,
    excluded: &'a [String],
}

#[derive(Serialize)]
struct TopicDeltaLine<'a> {
    kind: &'static str,
    tag_a: &'a str,
    tag_b: &'a str,
    topic: &'a str,
    ap: f64,
    p10: f64,
    no_rel_top10: i32,
}

#[derive(Serialize)]
struct AggregateDeltaLine<'a> {
    kind: &'static str,
    tag_a: &'a str,
    tag_b: &'a str,
    topic_set: &'a str,
    map: f64,
    p10: f64,
    pct_no: f64,
}

fn push_json(out: &mut String, value: &impl Serialize) {
    out.push_str(&serde_json::to_string(value).expect("report lines serialize"));
    out.push('\n');
}

/// One `topic` object per evaluated topic, then one `aggregate` object.
pub fn report_jsonl(topic_set: &str, report: &MetricsReport) -> String {
    let mut out = String::new();
    for (topic, m) in &report.per_topic {
        push_json(
            &mut out,
            &TopicLine {
                kind: "topic",
                tag: &report.tag,
                topic,
                ap: m.ap,
                p10: m.p10,
                no_rel_top10: m.no_relevant_in_top10,
            },
        );
    }
    push_json(
        &mut out,
        &AggregateLine {
            kind: "aggregate",
            tag: &report.tag,
            topic_set,
            map: report.map,
            p10: report.p10_mean,
            pct_no: report.pct_no(),
            topics: report.topic_count(),
            excluded: &report.excluded,
        },
    );
    out
}

pub fn delta_jsonl(topic_set: &str, delta: &MetricsDelta) -> String {
    let mut out = String::new();
    for (topic, d) in &delta.per_topic {
        push_json(
            &mut out,
            &TopicDeltaLine {
                kind: "topic_delta",
                tag_a: &delta.tag_a,
                tag_b: &delta.tag_b,
                topic,
                ap: d.ap,
                p10: d.p10,
                no_rel_top10: d.no_relevant_in_top10,
            },
        );
    }
    push_json(
        &mut out,
        &AggregateDeltaLine {
            kind: "aggregate_delta",
            tag_a: &delta.tag_a,
            tag_b: &delta.tag_b,
            topic_set,
            map: delta.map,
            p10: delta.p10_mean,
            pct_no: delta.pct_no,
        },
    );
    out
}
