use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pathweave::commands::{self, CoherenceArgs, ExpandArgs, ReportArgs, RunArgs};
use pathweave::{CliError, Config, Result};

/// Topic pathways, burst events and emotion timelines over timestamped
/// short-text streams.
#[derive(Parser)]
#[command(name = "pathweave", version)]
struct Cli {
    /// TOML configuration; built-in defaults when absent.
    #[arg(long, global = true, env = "PATHWEAVE_CONFIG")]
    config: Option<PathBuf>,
    /// Input file (messages JSONL; assignments JSONL for `coherence`).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Output directory for `run`, output file for the other commands
    /// (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// State file to resume from and save to.
    #[arg(long, global = true)]
    state: Option<PathBuf>,
    /// Overrides the configured seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cluster a message stream into topic pathways and detect events.
    Run,
    /// Score every message on the sixteen emotion categories.
    Emotions,
    /// Propose lexicon terms from nearest neighbours in a word embedding.
    LexiconExpand {
        /// Word vectors in word2vec text format.
        #[arg(long)]
        embeddings: PathBuf,
        /// "term,category" seeds; the configured lexicon when absent.
        #[arg(long)]
        seeds: Option<PathBuf>,
        /// Neighbours per seed.
        #[arg(long, default_value_t = 10)]
        k: usize,
        /// Minimum cosine to the seed.
        #[arg(long, default_value_t = 0.5)]
        min_sim: f64,
    },
    /// Topic coherence of each pathway against a whole-corpus baseline.
    Coherence {
        /// Top terms per topic.
        #[arg(short = 'm', long = "top-terms", default_value_t = 10)]
        top_terms: usize,
        /// Count document frequencies over the whole corpus.
        #[arg(long)]
        corpus_df: bool,
    },
    /// Emotion timeline: mean intensities per interval.
    Report {
        /// Bin width in seconds; the stream interval when absent.
        #[arg(long)]
        interval: Option<i64>,
        /// One timeline per author.
        #[arg(long)]
        by_author: bool,
    },
}

fn required<'a>(flag: &'a Option<PathBuf>, name: &str) -> Result<&'a PathBuf> {
    flag.as_ref()
        .ok_or_else(|| CliError::Config(format!("--{name} is required for this command")))
}

fn dispatch(cli: Cli) -> Result<()> {
    let mut config = Config::load(cli.config.as_deref())?;
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    let out = cli.out.as_deref();
    match cli.command {
        Command::Run => commands::run(RunArgs {
            config: &config,
            input: required(&cli.input, "input")?,
            out: out.unwrap_or("pathweave-out".as_ref()),
            state: cli.state.as_deref(),
        }),
        Command::Emotions => commands::emotions(&config, required(&cli.input, "input")?, out),
        Command::LexiconExpand {
            embeddings,
            seeds,
            k,
            min_sim,
        } => commands::lexicon_expand(ExpandArgs {
            config: &config,
            embeddings: &embeddings,
            seeds: seeds.as_deref(),
            k,
            min_sim,
            out,
        }),
        Command::Coherence { top_terms, corpus_df } => commands::coherence_report(CoherenceArgs {
            state: required(&cli.state, "state")?,
            assignments: cli.input.as_deref(),
            top_terms,
            corpus_df,
            out,
        }),
        Command::Report { interval, by_author } => commands::timeline_report(ReportArgs {
            config: &config,
            input: required(&cli.input, "input")?,
            interval,
            by_author,
            out,
        }),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("PATHWEAVE_LOG", "warn")).init();
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
