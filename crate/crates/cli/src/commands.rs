use std::fmt::Write as _;
use std::fs;
use std::io::BufReader;
use std::path::Path;

use rayon::prelude::*;

use frank_core::dsl::print_rule;
use frank_core::eval::{
    delta_jsonl, delta_table, diff_runs, evaluate_run, report_jsonl, report_table, MetricsReport,
    Qrels, RunFile,
};
use frank_core::fuzzy::file::ConfigDocument;
use frank_core::fuzzy::{FisConfig, FuzzyError, Inputs};
use frank_core::index::{build_index, read_corpus, InvertedIndex};
use frank_core::ranker::{
    score_baseline, score_fis, BaselineParams, FisTemplate, RankError, RankedList,
};

use crate::{CliError, Format, Ranker};

const RESOLUTION_VAR: &str = "FRANK_RESOLUTION";

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Data(format!("{}: {e}", path.display()))
}

fn resolution_override() -> Result<Option<usize>, CliError> {
    let Some(raw) = std::env::var_os(RESOLUTION_VAR) else {
        return Ok(None);
    };
    let raw = raw.to_string_lossy();
    match raw.trim().parse::<usize>() {
        Ok(n) if n >= 2 => Ok(Some(n)),
        _ => Err(CliError::Usage(format!(
            "{RESOLUTION_VAR} must be an integer of at least 2, got '{raw}'"
        ))),
    }
}

pub fn index(corpus: &Path, out: &Path) -> Result<String, CliError> {
    let file = fs::File::open(corpus).map_err(|e| in_file(corpus, e))?;
    let docs = read_corpus(BufReader::new(file)).map_err(|e| in_file(corpus, e))?;
    let index = build_index(docs).map_err(|e| in_file(corpus, e))?;
    fs::write(out, index.to_bytes()).map_err(|e| in_file(out, e))?;
    Ok(format!(
        "docs={} terms={} tokens={}\n",
        index.total_docs(),
        index.num_terms(),
        index.total_tokens()
    ))
}

pub struct SearchArgs<'a> {
    pub index: &'a Path,
    pub ranker: Ranker,
    pub template: Option<&'a Path>,
    pub query: Option<&'a str>,
    pub queries: Option<&'a Path>,
    pub topic_id: &'a str,
    pub k: usize,
    pub tag: Option<&'a str>,
}

fn read_queries(path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let text = read_text(path)?;
    let mut queries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        if raw.trim().is_empty() || raw.starts_with('#') {
            continue;
        }
        let Some((topic, query)) = raw.split_once('\t') else {
            return Err(CliError::Data(format!(
                "{}: line {}: expected topic_id<TAB>query",
                path.display(),
                i + 1
            )));
        };
        let topic = topic.trim();
        if topic.is_empty() || topic.contains(char::is_whitespace) {
            return Err(CliError::Data(format!(
                "{}: line {}: invalid topic id '{topic}'",
                path.display(),
                i + 1
            )));
        }
        queries.push((topic.to_string(), query.to_string()));
    }
    Ok(queries)
}

fn load_template(path: &Path) -> Result<FisTemplate, CliError> {
    let template: FisTemplate = read_text(path)?.parse().map_err(|e| in_file(path, e))?;
    match resolution_override()? {
        Some(n) => template.with_resolution(n).map_err(CliError::usage),
        None => Ok(template),
    }
}

fn rank_error(topic: &str, e: RankError) -> CliError {
    match e {
        RankError::EmptyQuery => CliError::Usage(format!("topic {topic}: {e}")),
        other => CliError::Data(format!("topic {topic}: {other}")),
    }
}

pub fn search(args: SearchArgs<'_>) -> Result<String, CliError> {
    let template = match (args.ranker, args.template) {
        (Ranker::Fis, None) => {
            return Err(CliError::usage("--ranker fis requires --template"));
        }
        (Ranker::Fis, Some(path)) => Some(load_template(path)?),
        (Ranker::Baseline, _) => None,
    };
    let queries = match (args.query, args.queries) {
        (Some(q), _) => vec![(args.topic_id.to_string(), q.to_string())],
        (None, Some(path)) => read_queries(path)?,
        (None, None) => return Err(CliError::usage("one of --query or --queries is required")),
    };
    let bytes = fs::read(args.index).map_err(|e| in_file(args.index, e))?;
    let index = InvertedIndex::from_bytes(&bytes).map_err(|e| in_file(args.index, e))?;
    let params = BaselineParams::default();

    let lists: Vec<RankedList> = queries
        .par_iter()
        .map(|(topic, text)| {
            let list = match &template {
                Some(t) => score_fis(&index, t, topic, text, args.k),
                None => score_baseline(&index, &params, topic, text, args.k),
            };
            list.map_err(|e| rank_error(topic, e))
        })
        .collect::<Result<_, _>>()?;
    let tag = args.tag.unwrap_or(match args.ranker {
        Ranker::Fis => "rfis",
        Ranker::Baseline => "baseline",
    });
    let run = RunFile::from_ranked(tag, lists).map_err(CliError::data)?;
    Ok(run.to_trec_string())
}

fn load_run(path: &Path) -> Result<RunFile, CliError> {
    read_text(path)?.parse().map_err(|e| in_file(path, e))
}

fn load_qrels(path: &Path) -> Result<Qrels, CliError> {
    read_text(path)?.parse().map_err(|e| in_file(path, e))
}

fn warn_excluded(report: &MetricsReport) {
    if !report.excluded.is_empty() {
        eprintln!(
            "frank: warning: topics without relevant documents excluded: {}",
            report.excluded.join(" ")
        );
    }
}

pub fn eval(run: &Path, qrels: &Path, topic_set: &str, format: Format) -> Result<String, CliError> {
    let run_file = load_run(run)?;
    let qrels = load_qrels(qrels)?;
    let report = evaluate_run(&run_file, &qrels).map_err(|e| in_file(run, e))?;
    warn_excluded(&report);
    Ok(match format {
        Format::Text => report_table(topic_set, &[&report]),
        Format::Jsonl => report_jsonl(topic_set, &report),
    })
}

pub fn diff(
    run_a: &Path,
    run_b: &Path,
    qrels: &Path,
    topic_set: &str,
    format: Format,
) -> Result<String, CliError> {
    let (ra, rb) = (load_run(run_a)?, load_run(run_b)?);
    let qrels = load_qrels(qrels)?;
    let a = evaluate_run(&ra, &qrels).map_err(|e| in_file(run_a, e))?;
    let b = evaluate_run(&rb, &qrels).map_err(|e| in_file(run_b, e))?;
    warn_excluded(&a);
    let delta = diff_runs(&a, &b).map_err(CliError::data)?;
    Ok(match format {
        Format::Text => delta_table(topic_set, &a, &b, &delta),
        Format::Jsonl => delta_jsonl(topic_set, &delta),
    })
}

fn parse_inputs(pairs: &[String]) -> Result<Inputs, CliError> {
    let mut inputs = Inputs::new();
    for pair in pairs {
        let Some((name, value)) = pair.split_once('=') else {
            return Err(CliError::Usage(format!(
                "--in '{pair}': expected name=value"
            )));
        };
        let value: f64 = value
            .trim()
            .parse()
            .ok()
            .filter(|v: &f64| v.is_finite())
            .ok_or_else(|| {
                CliError::Usage(format!("--in '{pair}': value is not a finite number"))
            })?;
        if inputs.insert(name.trim().to_string(), value).is_some() {
            return Err(CliError::Usage(format!("input '{name}' given twice")));
        }
    }
    Ok(inputs)
}

pub fn fis_eval(config: &Path, pairs: &[String], verbose: bool) -> Result<String, CliError> {
    let inputs = parse_inputs(pairs)?;
    let mut fis: FisConfig = read_text(config)?.parse().map_err(|e| in_file(config, e))?;
    if let Some(n) = resolution_override()? {
        fis = fis.with_resolution(n).map_err(CliError::usage)?;
    }
    let inference = fis.infer(&inputs).map_err(|e| match e {
        FuzzyError::MissingInput(_)
        | FuzzyError::UnknownInput(_)
        | FuzzyError::NonFiniteInput(_) => CliError::usage(e),
        other => CliError::data(other),
    })?;
    if inference.degenerate {
        eprintln!("frank: warning: no rule fired; output is the universe midpoint");
    }
    let mut out = String::new();
    if verbose {
        for (i, (rule, strength)) in fis
            .rules()
            .iter()
            .zip(&inference.firing_strengths)
            .enumerate()
        {
            writeln!(
                out,
                "rule {}: strength={strength:.6}  {}",
                i + 1,
                print_rule(rule)
            )
            .expect("writing to a String cannot fail");
        }
    }
    writeln!(out, "{}={:.6}", fis.output().name(), inference.crisp)
        .expect("writing to a String cannot fail");
    Ok(out)
}

pub fn mf_data(config: &Path, variable: &str, samples: usize) -> Result<String, CliError> {
    if samples < 2 {
        return Err(CliError::Usage(format!(
            "--samples must be at least 2, got {samples}"
        )));
    }
    let doc = ConfigDocument::parse(&read_text(config)?).map_err(|e| in_file(config, e))?;
    let var = doc.variable(variable).ok_or_else(|| {
        CliError::Usage(format!(
            "no variable named '{variable}' in {}",
            config.display()
        ))
    })?;
    let mut out = String::from("x");
    for (label, _) in var.sets() {
        out.push(',');
        out.push_str(label);
    }
    out.push('\n');
    let universe = var.universe();
    for i in 0..samples {
        let x = universe.grid_point(i, samples);
        write!(out, "{x:.6}").expect("writing to a String cannot fail");
        for (_, mf) in var.sets() {
            write!(out, ",{:.6}", mf.eval(x)).expect("writing to a String cannot fail");
        }
        out.push('\n');
    }
    Ok(out)
}
