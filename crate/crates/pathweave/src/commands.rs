use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use chrono::{DateTime, SecondsFormat};
use log::{info, warn};
use pathweave_core::corpus::{preprocess, PreprocessConfig, StopWords};
use pathweave_core::emotion::{
    emotion_timeline, expand_lexicon, score_post, Category, EmotionLexicon, EmotionVector,
    ModifierLexicon, TimelineBin,
};
use pathweave_core::engine::{Engine, Resources};
use pathweave_core::metrics::{coherence, collect_frequencies, top_terms};
use pathweave_core::pathways::PathwayId;

use crate::config::Config;
use crate::error::{CliError, Result};
use crate::formats;
use crate::reports::{read_rows, AssignmentRow, ReportWriter, ASSIGNMENTS_FILE};
use crate::state::{self, StateFile};

/// A CSV writer over a file, or stdout when no path is given.
fn csv_out(path: Option<&Path>) -> Result<(csv::Writer<Box<dyn Write>>, PathBuf)> {
    let (sink, shown): (Box<dyn Write>, PathBuf) = match path {
        Some(p) => (
            Box::new(std::fs::File::create(p).map_err(|e| CliError::io(p, e))?),
            p.to_path_buf(),
        ),
        None => (Box::new(std::io::stdout().lock()), PathBuf::from("<stdout>")),
    };
    let w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .flexible(true)
        .from_writer(sink);
    Ok((w, shown))
}

fn csv_error(path: &Path, e: csv::Error) -> CliError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => CliError::io(path, io),
        other => CliError::io(path, std::io::Error::other(format!("{other:?}"))),
    }
}

fn category_header() -> impl Iterator<Item = String> {
    Category::ALL.iter().map(|c| c.name().to_string())
}

fn emotion_tokens(text: &str) -> Vec<String> {
    preprocess(text, &PreprocessConfig::EMOTION, &StopWords::empty())
}

fn score(text: &str, lex: &EmotionLexicon, mods: &ModifierLexicon) -> EmotionVector {
    score_post(&emotion_tokens(text), lex, mods)
}

pub struct RunArgs<'a> {
    pub config: &'a Config,
    pub input: &'a Path,
    pub out: &'a Path,
    pub state: Option<&'a Path>,
}

/// Clusters the input into pathways, scores emotions, detects events and
/// writes the reports (appending when resuming from an existing state).
pub fn run(args: RunArgs) -> Result<()> {
    let engine_cfg = args.config.engine()?;
    let resources = Resources {
        stopwords: formats::load_stopwords(args.config.preprocess.stopwords.as_deref())?,
        lexicon: formats::load_lexicon(args.config.emotion.lexicon.as_deref())?,
        modifiers: formats::load_modifiers(args.config.emotion.modifiers.as_deref())?,
    };
    let prior = match args.state {
        Some(p) if p.exists() => Some(state::load(p)?),
        _ => None,
    };
    if let Some(prior) = &prior {
        if prior.config != engine_cfg {
            return Err(CliError::State(
                "configuration (or seed) differs from the one the state was saved with".into(),
            ));
        }
    }
    let mut ingest = formats::read_messages(args.input)?;
    if ingest.skipped > 0 {
        warn!("{} malformed input lines skipped", ingest.skipped);
    }
    if args.config.stream.sort {
        ingest.messages.sort_by_key(|m| m.timestamp);
    }
    info!("{} messages read", ingest.messages.len());

    let resumed = prior.is_some();
    let mut engine = match prior {
        Some(p) => Engine::resume(engine_cfg.clone(), &resources, p.engine)?,
        None => Engine::new(engine_cfg.clone(), &resources)?,
    };
    let reports = engine.process_messages(ingest.messages)?;
    let mut writer = ReportWriter::open(args.out, resumed, args.config.reports.top_terms)?;
    for r in &reports {
        writer.write(r, &engine.state().pathways)?;
        info!(
            "batch {}: {} messages, {} segments, {} flagged",
            r.batch_index,
            r.messages.len(),
            r.segments.len(),
            r.events.iter().filter(|e| e.flagged).count()
        );
    }
    writer.finish()?;
    if let Some(p) = args.state {
        state::save(p, &StateFile::new(engine_cfg, engine.into_state()))?;
    }
    Ok(())
}

/// Per-post emotion intensities: id, sixteen categories, token_count.
pub fn emotions(config: &Config, input: &Path, out: Option<&Path>) -> Result<()> {
    let lex = formats::load_lexicon(config.emotion.lexicon.as_deref())?;
    let mods = formats::load_modifiers(config.emotion.modifiers.as_deref())?;
    let ingest = formats::read_messages(input)?;
    let (mut w, path) = csv_out(out)?;
    let header: Vec<String> = std::iter::once("id".to_string())
        .chain(category_header())
        .chain(std::iter::once("token_count".to_string()))
        .collect();
    w.write_record(&header).map_err(|e| csv_error(&path, e))?;
    for m in &ingest.messages {
        let ev = score(&m.text, &lex, &mods);
        let mut row = vec![m.id.clone()];
        row.extend(ev.values.iter().map(|v| v.to_string()));
        row.push(ev.token_count.to_string());
        w.write_record(&row).map_err(|e| csv_error(&path, e))?;
    }
    w.flush().map_err(|e| CliError::io(&path, e))
}

pub struct ExpandArgs<'a> {
    pub config: &'a Config,
    pub embeddings: &'a Path,
    /// Seed terms; the whole lexicon when absent.
    pub seeds: Option<&'a Path>,
    pub k: usize,
    pub min_sim: f64,
    pub out: Option<&'a Path>,
}

/// Candidate terms for manual review: category, term, seed, cosine, then
/// a `# skipped` line per seed missing from the embedding.
pub fn lexicon_expand(args: ExpandArgs) -> Result<()> {
    if !(-1.0..=1.0).contains(&args.min_sim) {
        return Err(CliError::Config("--min-sim must lie in [-1, 1]".into()));
    }
    let lex = formats::load_lexicon(args.config.emotion.lexicon.as_deref())?;
    let emb = formats::load_embeddings(args.embeddings)?;
    let seeds = match args.seeds {
        Some(p) => formats::load_seeds(p)?,
        None => Category::ALL
            .iter()
            .flat_map(|&c| lex.terms_of(c).map(move |t| (c, t.to_string())))
            .collect(),
    };
    let found = expand_lexicon(&seeds, &emb, args.k, args.min_sim, &lex);
    let (mut w, path) = csv_out(args.out)?;
    w.write_record(["category", "term", "seed", "cosine"])
        .map_err(|e| csv_error(&path, e))?;
    for c in &found.candidates {
        w.write_record([c.category.name(), &c.term, &c.seed, &c.cosine.to_string()])
            .map_err(|e| csv_error(&path, e))?;
    }
    w.flush().map_err(|e| CliError::io(&path, e))?;
    let mut sink = w.into_inner().map_err(|e| CliError::io(&path, e.into_error()))?;
    for (cat, seed) in &found.skipped {
        writeln!(sink, "# skipped,{},{}", cat.name(), seed).map_err(|e| CliError::io(&path, e))?;
    }
    sink.flush().map_err(|e| CliError::io(&path, e))
}

pub struct CoherenceArgs<'a> {
    pub state: &'a Path,
    /// `assignments.jsonl`; next to the state file when absent.
    pub assignments: Option<&'a Path>,
    pub top_terms: usize,
    /// Count document frequencies over the whole corpus instead of each
    /// pathway's own messages.
    pub corpus_df: bool,
    pub out: Option<&'a Path>,
}

/// Coherence of every pathway's top terms plus a whole-corpus baseline.
pub fn coherence_report(args: CoherenceArgs) -> Result<()> {
    if args.top_terms == 0 {
        return Err(CliError::Config("-m must be at least 1".into()));
    }
    let saved = state::load(args.state)?;
    let default_path = args
        .state
        .parent()
        .unwrap_or(Path::new(""))
        .join(ASSIGNMENTS_FILE);
    let path = args.assignments.unwrap_or(&default_path);
    let rows: Vec<AssignmentRow> = read_rows(path)?;
    let corpus: Vec<&[String]> = rows.iter().map(|r| r.tokens.as_slice()).collect();
    let mut by_pathway: BTreeMap<PathwayId, Vec<&[String]>> = BTreeMap::new();
    for r in &rows {
        if let Some(p) = r.pathway_id {
            if !saved.engine.pathways.contains_key(&p) {
                return Err(CliError::input(path, 0, format!("pathway {p} is not in the state")));
            }
            by_pathway.entry(p).or_default().push(&r.tokens);
        }
    }
    let m = args.top_terms;
    let (mut w, out) = csv_out(args.out)?;
    w.write_record(["pathway_id", "m", "coherence"])
        .map_err(|e| csv_error(&out, e))?;
    for (id, docs) in &by_pathway {
        let terms = top_terms(docs, m);
        let reference = if args.corpus_df { &corpus } else { docs };
        let c = coherence(&collect_frequencies(reference, &terms))?;
        w.write_record([id.0.to_string(), m.to_string(), c.to_string()])
            .map_err(|e| csv_error(&out, e))?;
    }
    let baseline = coherence(&collect_frequencies(&corpus, &top_terms(&corpus, m)))?;
    w.write_record(["corpus".to_string(), m.to_string(), baseline.to_string()])
        .map_err(|e| csv_error(&out, e))?;
    w.flush().map_err(|e| CliError::io(&out, e))
}

pub struct ReportArgs<'a> {
    pub config: &'a Config,
    pub input: &'a Path,
    /// Bin width; the stream interval when absent.
    pub interval: Option<i64>,
    pub by_author: bool,
    pub out: Option<&'a Path>,
}

fn rfc3339(t: i64) -> String {
    DateTime::from_timestamp(t, 0)
        .map(|d| d.to_rfc3339_opts(SecondsFormat::Secs, true))
        .unwrap_or_else(|| t.to_string())
}

/// Emotion timeline: mean intensity per category per interval, optionally
/// one timeline per author.
pub fn timeline_report(args: ReportArgs) -> Result<()> {
    let interval = args.interval.unwrap_or(args.config.stream.interval_secs);
    if interval <= 0 {
        return Err(CliError::Config("interval must be positive".into()));
    }
    let lex = formats::load_lexicon(args.config.emotion.lexicon.as_deref())?;
    let mods = formats::load_modifiers(args.config.emotion.modifiers.as_deref())?;
    let ingest = formats::read_messages(args.input)?;
    let Some(first) = ingest.messages.iter().map(|m| m.timestamp).min() else {
        let (mut w, out) = csv_out(args.out)?;
        return w.flush().map_err(|e| CliError::io(&out, e));
    };
    let origin = args.config.origin()?.unwrap_or(first);
    let mut groups: BTreeMap<Option<&str>, Vec<(i64, EmotionVector)>> = BTreeMap::new();
    for m in &ingest.messages {
        let key = if args.by_author { Some(m.author.as_deref().unwrap_or("")) } else { None };
        groups
            .entry(key)
            .or_default()
            .push((m.timestamp, score(&m.text, &lex, &mods)));
    }
    let (mut w, out) = csv_out(args.out)?;
    let mut header: Vec<String> = Vec::new();
    if args.by_author {
        header.push("author".into());
    }
    header.push("bin_start".into());
    header.extend(category_header());
    header.push("n_posts".into());
    w.write_record(&header).map_err(|e| csv_error(&out, e))?;
    for (author, posts) in &groups {
        let bins: Vec<TimelineBin> = emotion_timeline(posts, interval, origin)?;
        for bin in bins {
            let mut row: Vec<String> = author.iter().map(|a| a.to_string()).collect();
            row.push(rfc3339(bin.start));
            match bin.mean {
                Some(mean) => row.extend(mean.iter().map(|v| v.to_string())),
                None => row.extend(std::iter::repeat_n(String::new(), Category::ALL.len())),
            }
            row.push(bin.posts.to_string());
            w.write_record(&row).map_err(|e| csv_error(&out, e))?;
        }
    }
    w.flush().map_err(|e| CliError::io(&out, e))
}
