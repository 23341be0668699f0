//! JSONL reports written by `run`, one file per kind, appended to when a
//! run resumes from a state file.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use pathweave_core::engine::{BatchReport, PathwayInfo};
use pathweave_core::pathways::PathwayId;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const PATHWAYS_FILE: &str = "pathways.jsonl";
pub const EVENTS_FILE: &str = "events.jsonl";
pub const ASSIGNMENTS_FILE: &str = "assignments.jsonl";
pub const BATCHES_FILE: &str = "batches.jsonl";

/// One topic segment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentRow {
    pub pathway_id: PathwayId,
    pub batch_index: u64,
    pub n_messages: usize,
    pub volume_proportion: f64,
    pub top_terms: Vec<String>,
    pub avg_pos: Option<f64>,
    pub avg_neg: Option<f64>,
    pub parent: Option<PathwayId>,
}

/// One flagged event.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventRow {
    pub pathway_id: PathwayId,
    pub batch_index: u64,
    pub i_v: f64,
    pub i_ps: f64,
    pub i_ns: f64,
    pub score: f64,
    pub trigger_terms: Vec<String>,
}

/// Where one message went, with the tokens it was clustered on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssignmentRow {
    pub id: String,
    pub batch_index: u64,
    pub timestamp: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub author: Option<String>,
    pub pathway_id: Option<PathwayId>,
    pub tokens: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BirthRow {
    pub pathway_id: PathwayId,
    pub parent: Option<PathwayId>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchRow {
    pub batch_index: u64,
    pub start: i64,
    pub end: i64,
    pub messages: usize,
    pub duplicates: usize,
    pub vocabulary_size: usize,
    pub births: Vec<BirthRow>,
    pub retired: Vec<PathwayId>,
    pub flagged_events: usize,
}

struct Sink {
    path: PathBuf,
    out: BufWriter<File>,
}

impl Sink {
    fn open(dir: &Path, name: &str, append: bool) -> Result<Sink> {
        let path = dir.join(name);
        let file = OpenOptions::new()
            .create(true)
            .write(true)
            .append(append)
            .truncate(!append)
            .open(&path)
            .map_err(|e| CliError::io(&path, e))?;
        Ok(Sink {
            path,
            out: BufWriter::new(file),
        })
    }

    fn row<T: Serialize>(&mut self, row: &T) -> Result<()> {
        let line = serde_json::to_string(row).expect("report rows serialize");
        writeln!(self.out, "{line}").map_err(|e| CliError::io(&self.path, e))
    }

    fn finish(mut self) -> Result<()> {
        self.out.flush().map_err(|e| CliError::io(&self.path, e))
    }
}

pub struct ReportWriter {
    pathways: Sink,
    events: Sink,
    assignments: Sink,
    batches: Sink,
    top_terms: usize,
}

impl ReportWriter {
    /// Opens the four report files in `dir`, truncating them unless
    /// `append`.
    pub fn open(dir: &Path, append: bool, top_terms: usize) -> Result<ReportWriter> {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        Ok(ReportWriter {
            pathways: Sink::open(dir, PATHWAYS_FILE, append)?,
            events: Sink::open(dir, EVENTS_FILE, append)?,
            assignments: Sink::open(dir, ASSIGNMENTS_FILE, append)?,
            batches: Sink::open(dir, BATCHES_FILE, append)?,
            top_terms,
        })
    }

    pub fn write(&mut self, report: &BatchReport, registry: &BTreeMap<PathwayId, PathwayInfo>) -> Result<()> {
        for seg in &report.segments {
            self.pathways.row(&SegmentRow {
                pathway_id: seg.pathway_id,
                batch_index: seg.batch_index,
                n_messages: seg.len(),
                volume_proportion: seg.volume_proportion,
                top_terms: seg.top_terms(self.top_terms),
                avg_pos: seg.avg_pos,
                avg_neg: seg.avg_neg,
                parent: registry.get(&seg.pathway_id).and_then(|p| p.parent),
            })?;
        }
        let flagged: Vec<_> = report.events.iter().filter(|e| e.flagged).collect();
        for e in &flagged {
            self.events.row(&EventRow {
                pathway_id: e.pathway_id,
                batch_index: e.batch_index,
                i_v: e.i_v,
                i_ps: e.i_ps,
                i_ns: e.i_ns,
                score: e.score,
                trigger_terms: e.trigger_terms.clone(),
            })?;
        }
        for m in &report.messages {
            self.assignments.row(&AssignmentRow {
                id: m.id.clone(),
                batch_index: report.batch_index,
                timestamp: m.timestamp,
                author: m.author.clone(),
                pathway_id: m.pathway_id,
                tokens: m.tokens.clone(),
            })?;
        }
        self.batches.row(&BatchRow {
            batch_index: report.batch_index,
            start: report.start,
            end: report.end,
            messages: report.messages.len(),
            duplicates: report.duplicates,
            vocabulary_size: report.vocabulary_size,
            births: report
                .births
                .iter()
                .map(|b| BirthRow {
                    pathway_id: b.pathway_id,
                    parent: b.parent,
                })
                .collect(),
            retired: report.retired.clone(),
            flagged_events: flagged.len(),
        })
    }

    pub fn finish(self) -> Result<()> {
        self.pathways.finish()?;
        self.events.finish()?;
        self.assignments.finish()?;
        self.batches.finish()
    }
}

/// Reads a JSONL file of `T`, failing on the first malformed line.
pub fn read_rows<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| CliError::input(path, i as u64 + 1, e.to_string())))
        .collect()
}
