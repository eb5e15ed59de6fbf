//! `frank`: index a corpus, rank it with fuzzy rules or tf-idf, evaluate runs,
//! and inspect inference systems.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "frank",
    version,
    about = "Fuzzy-rule ranking and TREC-style evaluation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Ranker {
    Fis,
    Baseline,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Jsonl,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build an index file from a JSON Lines corpus.
    Index {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rank documents for one query or a batch of queries; prints a TREC run.
    Search {
        #[arg(long)]
        index: PathBuf,
        #[arg(long, value_enum)]
        ranker: Ranker,
        /// Ranking template (required for --ranker fis).
        #[arg(long)]
        template: Option<PathBuf>,
        #[arg(long, conflicts_with = "queries", required_unless_present = "queries")]
        query: Option<String>,
        /// Batch file of `topic_id<TAB>query text` lines.
        #[arg(long)]
        queries: Option<PathBuf>,
        /// Topic id for --query.
        #[arg(long, default_value = "1")]
        topic_id: String,
        #[arg(long, default_value_t = frank_core::ranker::DEFAULT_CUTOFF)]
        k: usize,
        /// Run tag; defaults to the ranker name.
        #[arg(long)]
        tag: Option<String>,
    },
    /// Score a run against relevance judgments.
    Eval {
        #[arg(long)]
        run: PathBuf,
        #[arg(long)]
        qrels: PathBuf,
        #[arg(long, default_value = "All")]
        topic_set: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compare two runs; the second is reported as differences from the first.
    Diff {
        #[arg(long)]
        run_a: PathBuf,
        #[arg(long)]
        run_b: PathBuf,
        #[arg(long)]
        qrels: PathBuf,
        #[arg(long, default_value = "All")]
        topic_set: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate an inference system on crisp inputs.
    FisEval {
        #[arg(long)]
        config: PathBuf,
        /// `name=value`, once per input variable.
        #[arg(long = "in", value_name = "NAME=VALUE")]
        inputs: Vec<String>,
        /// Also print every rule's firing strength.
        #[arg(long)]
        verbose: bool,
    },
    /// Sample a variable's membership functions as CSV.
    MfData {
        #[arg(long)]
        config: PathBuf,
        #[arg(long = "var")]
        variable: String,
        #[arg(long)]
        samples: usize,
    },
}

/// Exit 1 for usage errors, 2 for unreadable or inconsistent data.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
}

impl CliError {
    pub fn data(e: impl std::fmt::Display) -> Self {
        CliError::Data(e.to_string())
    }

    pub fn usage(e: impl std::fmt::Display) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn one_line(message: &str) -> String {
    message.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Index { corpus, out } => commands::index(&corpus, &out),
        Command::Search {
            index,
            ranker,
            template,
            query,
            queries,
            topic_id,
            k,
            tag,
        } => commands::search(commands::SearchArgs {
            index: &index,
            ranker,
            template: template.as_deref(),
            query: query.as_deref(),
            queries: queries.as_deref(),
            topic_id: &topic_id,
            k,
            tag: tag.as_deref(),
        }),
        Command::Eval {
            run,
            qrels,
            topic_set,
            format,
        } => commands::eval(&run, &qrels, &topic_set, format),
        Command::Diff {
            run_a,
            run_b,
            qrels,
            topic_set,
            format,
        } => commands::diff(&run_a, &run_b, &qrels, &topic_set, format),
        Command::FisEval {
            config,
            inputs,
            verbose,
        } => commands::fis_eval(&config, &inputs, verbose),
        Command::MfData {
            config,
            variable,
            samples,
        } => commands::mf_data(&config, &variable, samples),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            eprintln!(
                "frank: usage error: {}",
                one_line(first.trim_start_matches("error: "))
            );
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(m)) => {
            eprintln!("frank: usage error: {}", one_line(&m));
            ExitCode::from(1)
        }
        Err(CliError::Data(m)) => {
            eprintln!("frank: data error: {}", one_line(&m));
            ExitCode::from(2)
        }
    }
}
