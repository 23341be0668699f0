//! TOML configuration. Every key is optional; `configs/default.toml`
//! lists them all with their defaults.

use std::path::{Path, PathBuf};

use chrono::DateTime;
use pathweave_core::engine::EngineConfig;
use pathweave_core::events::EventConfig;
use pathweave_core::pathways::PathwayConfig;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const DEFAULT_CONFIG: &str = include_str!("../configs/default.toml");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StreamSection {
    pub interval_secs: i64,
    /// RFC 3339 start of batch 0; the first message's time when absent.
    pub origin: Option<String>,
    pub slack_secs: i64,
    /// Sort input by timestamp before partitioning.
    pub sort: bool,
}

impl Default for StreamSection {
    fn default() -> Self {
        StreamSection {
            interval_secs: 86_400,
            origin: None,
            slack_secs: 0,
            sort: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VocabularySection {
    pub min_doc_fraction: f64,
}

impl Default for VocabularySection {
    fn default() -> Self {
        VocabularySection { min_doc_fraction: 0.005 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PreprocessSection {
    /// One word per line; the built-in English list when absent.
    pub stopwords: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EmotionSection {
    pub lexicon: Option<PathBuf>,
    pub modifiers: Option<PathBuf>,
    pub sentiment_scale: f64,
}

impl Default for EmotionSection {
    fn default() -> Self {
        EmotionSection {
            lexicon: None,
            modifiers: None,
            sentiment_scale: pathweave_core::emotion::DEFAULT_SENTIMENT_SCALE,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReportsSection {
    /// Terms listed per segment in `pathways.jsonl`.
    pub top_terms: usize,
}

impl Default for ReportsSection {
    fn default() -> Self {
        ReportsSection { top_terms: 10 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub seed: u64,
    pub stream: StreamSection,
    pub vocabulary: VocabularySection,
    pub preprocess: PreprocessSection,
    pub emotion: EmotionSection,
    pub pathways: PathwayConfig,
    pub events: EventConfig,
    pub reports: ReportsSection,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    /// Reads `path` and resolves its file references against the file's
    /// directory. Without a path the defaults are used.
    pub fn load(path: Option<&Path>) -> Result<Config> {
        let Some(path) = path else {
            return Ok(Config::default());
        };
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut cfg = Config::parse(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [
            &mut cfg.preprocess.stopwords,
            &mut cfg.emotion.lexicon,
            &mut cfg.emotion.modifiers,
        ]
        .into_iter()
        .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }

    pub fn origin(&self) -> Result<Option<i64>> {
        self.stream
            .origin
            .as_deref()
            .map(|s| {
                DateTime::parse_from_rfc3339(s)
                    .map(|d| d.timestamp())
                    .map_err(|e| CliError::Config(format!("stream.origin {s:?}: {e}")))
            })
            .transpose()
    }

    /// The engine's view of this configuration, validated.
    pub fn engine(&self) -> Result<EngineConfig> {
        let cfg = EngineConfig {
            interval: self.stream.interval_secs,
            origin: self.origin()?,
            slack: self.stream.slack_secs,
            vocab_threshold: self.vocabulary.min_doc_fraction,
            sentiment_scale: self.emotion.sentiment_scale,
            seed: self.seed,
            pathways: self.pathways,
            events: self.events.clone(),
        };
        cfg.validate().map_err(|e| CliError::Config(e.to_string()))?;
        Ok(cfg)
    }
}
