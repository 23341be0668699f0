//! Readers for the input files: messages (JSONL), emotion and modifier
//! lexicons (CSV), stopword lists and word embeddings (word2vec text).

use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use chrono::DateTime;
use log::warn;
use pathweave_core::corpus::StopWords;
use pathweave_core::emotion::{Category, EmbeddingTable, EmotionLexicon, ModifierLexicon};
use pathweave_core::Message;
use serde::Deserialize;

use crate::error::{CliError, Result};

pub const DEFAULT_LEXICON: &str = include_str!("../assets/emotion_lexicon.csv");
pub const DEFAULT_MODIFIERS: &str = include_str!("../assets/modifiers.csv");

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| CliError::io(path, e))
}

fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
struct RawMessage {
    id: Scalar,
    text: String,
    timestamp: Scalar,
    #[serde(default)]
    author: Option<String>,
}

fn parse_timestamp(t: Scalar) -> std::result::Result<i64, String> {
    match t {
        Scalar::Int(secs) => Ok(secs),
        Scalar::Text(s) => DateTime::parse_from_rfc3339(&s)
            .map(|d| d.timestamp())
            .map_err(|e| format!("timestamp {s:?}: {e}")),
    }
}

fn parse_message(line: &str) -> std::result::Result<Message, String> {
    let raw: RawMessage = serde_json::from_str(line).map_err(|e| e.to_string())?;
    let id = match raw.id {
        Scalar::Int(n) => n.to_string(),
        Scalar::Text(s) => s,
    };
    let mut m = Message::new(id, raw.text, parse_timestamp(raw.timestamp)?);
    m.author = raw.author;
    Ok(m)
}

/// Messages of a JSONL file plus how many lines were skipped.
#[derive(Debug, Default)]
pub struct Ingest {
    pub messages: Vec<Message>,
    pub skipped: usize,
}

/// Reads one message per line: `id`, `text`, `timestamp` (epoch seconds
/// or RFC 3339) and an optional `author`. Blank lines are ignored;
/// malformed ones are logged and skipped.
pub fn read_messages(path: &Path) -> Result<Ingest> {
    let reader = BufReader::new(open(path)?);
    let mut out = Ingest::default();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| CliError::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        match parse_message(&line) {
            Ok(m) => out.messages.push(m),
            Err(e) => {
                warn!("{}:{}: skipped: {e}", path.display(), i + 1);
                out.skipped += 1;
            }
        }
    }
    Ok(out)
}

/// Two-column CSV records with `#` comments and an optional header whose
/// first cell is `header`. Yields `(line, first, second)`.
fn two_columns<R: Read>(source: R, path: &Path, header: &str) -> Result<Vec<(u64, String, String)>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(source);
    let mut rows = Vec::new();
    for (k, record) in reader.records().enumerate() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            CliError::input(path, line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 2 {
            return Err(CliError::input(path, line, format!("expected 2 fields, found {}", record.len())));
        }
        if k == 0 && record[0].eq_ignore_ascii_case(header) {
            continue;
        }
        rows.push((line, record[0].to_string(), record[1].to_string()));
    }
    Ok(rows)
}

/// `term,category` rows.
pub fn parse_category_terms<R: Read>(source: R, path: &Path) -> Result<Vec<(u64, Category, String)>> {
    two_columns(source, path, "term")?
        .into_iter()
        .map(|(line, term, cat)| {
            let category = cat
                .parse::<Category>()
                .map_err(|e| CliError::input(path, line, e.to_string()))?;
            Ok((line, category, term))
        })
        .collect()
}

pub fn parse_lexicon<R: Read>(source: R, path: &Path) -> Result<EmotionLexicon> {
    let mut lex = EmotionLexicon::new();
    for (line, category, term) in parse_category_terms(source, path)? {
        lex.insert(&term, category)
            .map_err(|e| CliError::input(path, line, e.to_string()))?;
    }
    Ok(lex)
}

pub fn parse_modifiers<R: Read>(source: R, path: &Path) -> Result<ModifierLexicon> {
    let mut mods = ModifierLexicon::new();
    for (line, term, weight) in two_columns(source, path, "term")? {
        let w: f64 = weight
            .parse()
            .map_err(|_| CliError::input(path, line, format!("weight {weight:?} is not a number")))?;
        mods.insert(&term, w)
            .map_err(|e| CliError::input(path, line, e.to_string()))?;
    }
    Ok(mods)
}

/// The lexicon at `path`, or the built-in one.
pub fn load_lexicon(path: Option<&Path>) -> Result<EmotionLexicon> {
    match path {
        Some(p) => parse_lexicon(open(p)?, p),
        None => parse_lexicon(DEFAULT_LEXICON.as_bytes(), Path::new("<built-in lexicon>")),
    }
}

pub fn load_modifiers(path: Option<&Path>) -> Result<ModifierLexicon> {
    match path {
        Some(p) => parse_modifiers(open(p)?, p),
        None => parse_modifiers(DEFAULT_MODIFIERS.as_bytes(), Path::new("<built-in modifiers>")),
    }
}

/// The stopword list at `path`, or the built-in English one.
pub fn load_stopwords(path: Option<&Path>) -> Result<StopWords> {
    match path {
        Some(p) => Ok(StopWords::parse(&read_to_string(p)?)),
        None => Ok(StopWords::english()),
    }
}

/// Seeds for lexicon expansion, in the lexicon's `term,category` format.
pub fn load_seeds(path: &Path) -> Result<Vec<(Category, String)>> {
    Ok(parse_category_terms(open(path)?, path)?
        .into_iter()
        .map(|(_, c, t)| (c, t))
        .collect())
}

/// word2vec text format: an optional `count dim` header, then
/// `term v1 ... v_dim` per line.
pub fn parse_embeddings<R: Read>(source: R, path: &Path) -> Result<EmbeddingTable> {
    let mut table: Option<EmbeddingTable> = None;
    for (i, line) in BufReader::new(source).lines().enumerate() {
        let line = line.map_err(|e| CliError::io(path, e))?;
        let lineno = i as u64 + 1;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if i == 0 && fields.len() == 2 && fields.iter().all(|f| f.parse::<usize>().is_ok()) {
            let dim = fields[1].parse().unwrap_or(0);
            table = Some(EmbeddingTable::new(dim).map_err(|e| CliError::input(path, lineno, e.to_string()))?);
            continue;
        }
        let values = fields[1..]
            .iter()
            .map(|f| f.parse::<f64>())
            .collect::<std::result::Result<Vec<f64>, _>>()
            .map_err(|e| CliError::input(path, lineno, e.to_string()))?;
        if table.is_none() {
            table = Some(EmbeddingTable::new(values.len()).map_err(|e| CliError::input(path, lineno, e.to_string()))?);
        }
        if let Some(t) = table.as_mut() {
            t.insert(fields[0], values)
                .map_err(|e| CliError::input(path, lineno, e.to_string()))?;
        }
    }
    table.ok_or_else(|| CliError::input(path, 0, "no embeddings"))
}

pub fn load_embeddings(path: &Path) -> Result<EmbeddingTable> {
    parse_embeddings(open(path)?, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn here() -> &'static Path {
        Path::new("test.csv")
    }

    #[test]
    fn messages_accept_both_timestamp_forms() {
        let m = parse_message(r#"{"id": 7, "text": "hi", "timestamp": "2015-01-01T01:00:00Z", "author": "a"}"#).unwrap();
        assert_eq!((m.id.as_str(), m.timestamp, m.author.as_deref()), ("7", 1_420_074_000, Some("a")));
        let m = parse_message(r#"{"id": "x", "text": "hi", "timestamp": 5}"#).unwrap();
        assert_eq!((m.timestamp, m.author), (5, None));
        assert!(parse_message(r#"{"id": "x", "timestamp": 5}"#).is_err());
        assert!(parse_message(r#"{"id": "x", "text": "", "timestamp": "yesterday"}"#).is_err());
    }

    #[test]
    fn lexicon_with_header_and_comments() {
        let src = "# note\nterm,category\nhappy,Happy\nheart warming , happy\n";
        let lex = parse_lexicon(src.as_bytes(), here()).unwrap();
        assert_eq!(lex.len(), 2);
        assert!(lex.categories("heart warming").contains(Category::Happy));
    }

    #[test]
    fn lexicon_errors_carry_the_line() {
        let err = parse_lexicon("happy,Happy\nodd,Bored\n".as_bytes(), here()).unwrap_err();
        assert!(matches!(err, CliError::Input { line: 2, .. }), "{err}");
        assert_eq!(err.exit_code(), 2);
        let err = parse_lexicon("a,b,c\n".as_bytes(), here()).unwrap_err();
        assert!(matches!(err, CliError::Input { line: 1, .. }));
    }

    #[test]
    fn modifier_weights_are_checked() {
        let mods = parse_modifiers("very,0.293\nnot,-1\n".as_bytes(), here()).unwrap();
        assert_eq!(mods.get("not"), Some(-1.0));
        assert!(parse_modifiers("very,lots\n".as_bytes(), here()).is_err());
        assert!(parse_modifiers("very,2\n".as_bytes(), here()).is_err());
    }

    #[test]
    fn built_in_resources_parse() {
        assert!(load_lexicon(None).unwrap().len() > 100);
        assert!(load_modifiers(None).unwrap().contains("not"));
        assert!(load_stopwords(None).unwrap().contains("the"));
    }

    #[test]
    fn embeddings_with_and_without_header() {
        let with = parse_embeddings("2 3\nsad 1 0 0\ntearful 0.9 0.1 0\n".as_bytes(), here()).unwrap();
        let without = parse_embeddings("sad 1 0 0\ntearful 0.9 0.1 0\n".as_bytes(), here()).unwrap();
        assert_eq!(with, without);
        assert_eq!(with.dim(), 3);
        let err = parse_embeddings("sad 1 0 0\nodd 1 0\n".as_bytes(), here()).unwrap_err();
        assert!(matches!(err, CliError::Input { line: 2, .. }));
    }
}
