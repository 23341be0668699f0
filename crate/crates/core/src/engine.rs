//! Batch-by-batch driver: partition, clean, learn the layer, score
//! emotions and look for events.
//!
//! [`EngineState`] is all that survives between batches, so a stream can be
//! processed in several sittings by saving the state after one and handing
//! it back for the next.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::corpus::{
    build_vocabulary, dedupe, preprocess, vectorize, Batch, Message, Partitioner, PreprocessConfig,
    StopWords,
};
use crate::emotion::{score_post, sentiment_of, EmotionLexicon, EmotionVector, ModifierLexicon, SentimentScore};
use crate::error::invalid;
use crate::events::{evaluate, EventConfig, EventRecord, SegmentSummary};
use crate::pathways::{advance_layer, Birth, LayerInput, LayerMessage, LayerState, PathwayConfig, PathwayId, TopicSegment};
use crate::{Error, Result};

/// Bumped whenever [`EngineState`] changes shape.
pub const STATE_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EngineConfig {
    /// Batch width in seconds.
    pub interval: i64,
    /// Start of batch 0; the first message's timestamp when unset.
    pub origin: Option<i64>,
    /// Seconds a message may trail the latest timestamp seen.
    pub slack: i64,
    /// Minimum share of a batch's messages a term must appear in.
    pub vocab_threshold: f64,
    pub sentiment_scale: f64,
    pub seed: u64,
    pub pathways: PathwayConfig,
    pub events: EventConfig,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            interval: 86_400,
            origin: None,
            slack: 0,
            vocab_threshold: 0.005,
            sentiment_scale: crate::emotion::DEFAULT_SENTIMENT_SCALE,
            seed: 0,
            pathways: PathwayConfig::default(),
            events: EventConfig::default(),
        }
    }
}

impl EngineConfig {
    pub fn validate(&self) -> Result<()> {
        if self.interval <= 0 {
            return Err(invalid("interval", "must be positive"));
        }
        if self.slack < 0 {
            return Err(invalid("slack", "must be non-negative"));
        }
        if !(0.0..1.0).contains(&self.vocab_threshold) {
            return Err(invalid("vocab_threshold", "must lie in [0, 1)"));
        }
        if !(self.sentiment_scale > 0.0 && self.sentiment_scale.is_finite()) {
            return Err(invalid("sentiment_scale", "must be positive and finite"));
        }
        self.pathways.validate()?;
        self.events.validate()?;
        if let Some(name) = self.events.weights.extensions.keys().next() {
            // weights for indicators nothing computes
            return Err(Error::IndicatorMismatch(name.clone()));
        }
        Ok(())
    }

    fn layer_config(&self) -> PathwayConfig {
        let mut cfg = self.pathways;
        cfg.gsom.seed = self.seed;
        cfg
    }
}

/// Read-only inputs shared by every batch.
#[derive(Debug, Clone, Default)]
pub struct Resources {
    pub stopwords: StopWords,
    pub lexicon: EmotionLexicon,
    pub modifiers: ModifierLexicon,
}

/// Where a pathway came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathwayInfo {
    pub birth_layer: u64,
    pub parent: Option<PathwayId>,
    /// Layer in which it retired, if it has.
    pub retired: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EngineState {
    pub format_version: u32,
    pub origin: Option<i64>,
    pub last_batch: Option<u64>,
    pub latest_timestamp: Option<i64>,
    pub layer: LayerState,
    /// Every pathway ever created.
    pub pathways: BTreeMap<PathwayId, PathwayInfo>,
    /// The most recent segments of each live pathway, at most one window.
    pub histories: BTreeMap<PathwayId, Vec<SegmentSummary>>,
}

impl Default for EngineState {
    fn default() -> Self {
        EngineState {
            format_version: STATE_FORMAT_VERSION,
            origin: None,
            last_batch: None,
            latest_timestamp: None,
            layer: LayerState::default(),
            pathways: BTreeMap::new(),
            histories: BTreeMap::new(),
        }
    }
}

/// Per-message results of one batch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MessageReport {
    pub id: String,
    pub timestamp: i64,
    pub author: Option<String>,
    pub pathway_id: Option<PathwayId>,
    /// Feature tokens after cleaning.
    pub tokens: Vec<String>,
    pub emotion: EmotionVector,
    pub sentiment: SentimentScore,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchReport {
    pub batch_index: u64,
    pub start: i64,
    pub end: i64,
    pub duplicates: usize,
    pub vocabulary_size: usize,
    pub messages: Vec<MessageReport>,
    pub segments: Vec<TopicSegment>,
    pub births: Vec<Birth>,
    pub retired: Vec<PathwayId>,
    /// Every evaluated segment, flagged or not.
    pub events: Vec<EventRecord>,
}

pub struct Engine<'r> {
    cfg: EngineConfig,
    res: &'r Resources,
    state: EngineState,
}

impl<'r> Engine<'r> {
    pub fn new(cfg: EngineConfig, res: &'r Resources) -> Result<Self> {
        Self::resume(cfg, res, EngineState::default())
    }

    /// Continues from a saved state.
    pub fn resume(cfg: EngineConfig, res: &'r Resources, state: EngineState) -> Result<Self> {
        cfg.validate()?;
        if state.format_version != STATE_FORMAT_VERSION {
            return Err(invalid("format_version", "unsupported state format"));
        }
        if let (Some(a), Some(b)) = (cfg.origin, state.origin) {
            if a != b {
                return Err(invalid("origin", "differs from the saved state's origin"));
            }
        }
        Ok(Engine { cfg, res, state })
    }

    pub fn config(&self) -> &EngineConfig {
        &self.cfg
    }

    pub fn state(&self) -> &EngineState {
        &self.state
    }

    pub fn into_state(self) -> EngineState {
        self.state
    }

    /// Partitions time-ordered messages into the batches after the last
    /// processed one and processes them all, empty batches included.
    pub fn process_messages(&mut self, messages: Vec<Message>) -> Result<Vec<BatchReport>> {
        let Some(first) = messages.first() else {
            return Ok(Vec::new());
        };
        let origin = self.state.origin.or(self.cfg.origin).unwrap_or(first.timestamp);
        if let Some(latest) = self.state.latest_timestamp {
            if let Some(m) = messages.iter().find(|m| m.timestamp < latest - self.cfg.slack) {
                return Err(Error::OutOfOrder {
                    id: m.id.clone(),
                    timestamp: m.timestamp,
                    latest,
                });
            }
        }
        let partitioner = Partitioner {
            interval: self.cfg.interval,
            origin,
            first_index: self.state.last_batch.map_or(0, |b| b + 1),
            slack: self.cfg.slack,
        };
        let batches = partitioner.split(messages)?;
        self.state.origin = Some(origin);
        batches.into_iter().map(|b| self.process_batch(b)).collect()
    }

    /// Learns one batch. Batch indices must increase from call to call.
    pub fn process_batch(&mut self, batch: Batch) -> Result<BatchReport> {
        if self.state.last_batch.is_some_and(|last| batch.index <= last) {
            return Err(invalid("batch_index", "batches must be processed in increasing order"));
        }
        let raw = batch.len();
        let batch = dedupe(batch);
        let duplicates = raw - batch.len();
        let res = self.res;

        let features: Vec<Vec<String>> = batch
            .messages
            .iter()
            .map(|m| preprocess(&m.text, &PreprocessConfig::PATHWAY, &res.stopwords))
            .collect();
        let vocab = build_vocabulary(batch.index, &features, self.cfg.vocab_threshold)?;
        let no_stopwords = StopWords::empty();
        let mut emotions = Vec::with_capacity(batch.len());
        let mut layer_msgs = Vec::with_capacity(batch.len());
        for (m, tokens) in batch.messages.iter().zip(&features) {
            let emotion_tokens = preprocess(&m.text, &PreprocessConfig::EMOTION, &no_stopwords);
            let emotion = score_post(&emotion_tokens, &res.lexicon, &res.modifiers);
            let sentiment = sentiment_of(&emotion, self.cfg.sentiment_scale)?;
            emotions.push(emotion);
            layer_msgs.push(LayerMessage {
                id: m.id.clone(),
                vector: vectorize(tokens, &vocab),
                tokens: tokens.clone(),
                sentiment,
            });
        }

        let (layer, outcome) = advance_layer(
            &self.state.layer,
            LayerInput {
                batch_index: batch.index,
                vocab: &vocab,
                messages: &layer_msgs,
            },
            &self.cfg.layer_config(),
        )?;

        for b in &outcome.births {
            self.state.pathways.insert(
                b.pathway_id,
                PathwayInfo {
                    birth_layer: batch.index,
                    parent: b.parent,
                    retired: None,
                },
            );
        }
        for id in &outcome.retired {
            if let Some(info) = self.state.pathways.get_mut(id) {
                info.retired = Some(batch.index);
            }
            self.state.histories.remove(id);
        }

        let ev = &self.cfg.events;
        let mut events = Vec::new();
        for seg in &outcome.segments {
            let summary = SegmentSummary::of(seg, ev.trigger_terms);
            let history = self.state.histories.entry(seg.pathway_id).or_default();
            events.extend(evaluate(seg.pathway_id, history, &summary, ev));
            history.push(summary);
            if history.len() > ev.window {
                history.drain(..history.len() - ev.window);
            }
        }

        let messages = batch
            .messages
            .into_iter()
            .zip(layer_msgs)
            .zip(emotions)
            .zip(&outcome.assignments)
            .map(|(((m, lm), emotion), pathway_id)| MessageReport {
                id: m.id,
                timestamp: m.timestamp,
                author: m.author,
                pathway_id: *pathway_id,
                tokens: lm.tokens,
                emotion,
                sentiment: lm.sentiment,
            })
            .collect::<Vec<_>>();

        self.state.layer = layer;
        self.state.last_batch = Some(batch.index);
        if let Some(t) = messages.iter().map(|m| m.timestamp).max() {
            self.state.latest_timestamp = Some(self.state.latest_timestamp.map_or(t, |l| l.max(t)));
        }
        Ok(BatchReport {
            batch_index: batch.index,
            start: batch.start,
            end: batch.end,
            duplicates,
            vocabulary_size: vocab.len(),
            messages,
            segments: outcome.segments,
            births: outcome.births,
            retired: outcome.retired,
            events,
        })
    }
}
