//! Layered topic-pathway learning.
//!
//! Every batch is one layer. Messages are routed to the most similar
//! cluster representation of the previous layer; each pathway trains a map
//! seeded from its representation on the messages it received, and the map
//! is generalized back into next-layer representations. Messages that match
//! nothing well enough train a fresh map whose clusters start new pathways.

mod generalize;
mod layer;
mod route;
mod similarity;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::SparseVector;
use crate::gsom::Pos;

pub use generalize::{consolidate, generalize, HitCluster};
pub use layer::{advance_layer, Birth, LayerInput, LayerMessage, LayerOutcome, LayerState, LiveRep, PathwayConfig};
pub use route::{route, Route, RouteTarget};
pub use similarity::{similarity, AnyTerm, TermUniverse};

/// Stable identity of a topic pathway; allocated in creation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PathwayId(pub u64);

impl fmt::Display for PathwayId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tp-{}", self.0)
    }
}

/// The map a cluster representation came from: the layer it was trained
/// in and the pathway that seeded it (`None` for a new-topic map).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapId {
    pub layer: u64,
    pub seeded_by: Option<PathwayId>,
}

/// A generalized summary of one hit-node neighbourhood, carrying its
/// pathway into the next layer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterRep {
    pub layer: u64,
    pub pathway_id: PathwayId,
    pub vector: SparseVector,
    pub node: Pos,
    pub map: MapId,
}

/// The part of a pathway that falls in one batch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopicSegment {
    pub pathway_id: PathwayId,
    pub batch_index: u64,
    pub message_ids: Vec<String>,
    /// Segment size over batch size.
    pub volume_proportion: f64,
    /// Mean positive sentiment, in `[1, 4]`.
    pub avg_pos: Option<f64>,
    /// Mean negative sentiment, in `[-4, -1]`.
    pub avg_neg: Option<f64>,
    /// Token counts over the segment's messages.
    pub term_freqs: BTreeMap<String, u32>,
}

impl TopicSegment {
    pub fn len(&self) -> usize {
        self.message_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.message_ids.is_empty()
    }

    /// The `k` most frequent terms, ties broken alphabetically.
    pub fn top_terms(&self, k: usize) -> Vec<String> {
        top_terms(&self.term_freqs, k)
    }
}

pub(crate) fn top_terms(freqs: &BTreeMap<String, u32>, k: usize) -> Vec<String> {
    let mut ranked: Vec<(&String, u32)> = freqs.iter().map(|(t, &c)| (t, c)).collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    ranked.into_iter().take(k).map(|(t, _)| t.clone()).collect()
}

/// A chain of segments, one per batch in which the pathway received
/// messages.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopicPathway {
    pub pathway_id: PathwayId,
    pub birth_layer: u64,
    pub parent: Option<PathwayId>,
    pub segments: Vec<TopicSegment>,
}

impl TopicPathway {
    /// Groups segments by pathway, keeping batch order. Birth layers come
    /// from the first segment seen.
    pub fn collect<'a>(segments: impl IntoIterator<Item = &'a TopicSegment>) -> Vec<TopicPathway> {
        let mut by_id: BTreeMap<PathwayId, TopicPathway> = BTreeMap::new();
        for s in segments {
            by_id
                .entry(s.pathway_id)
                .or_insert_with(|| TopicPathway {
                    pathway_id: s.pathway_id,
                    birth_layer: s.batch_index,
                    parent: None,
                    segments: Vec::new(),
                })
                .segments
                .push(s.clone());
        }
        let mut out: Vec<TopicPathway> = by_id.into_values().collect();
        for p in &mut out {
            p.segments.sort_by_key(|s| s.batch_index);
            p.birth_layer = p.segments[0].batch_index;
        }
        out
    }
}
