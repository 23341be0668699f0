use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::generalize::{consolidate, generalize, HitCluster};
use super::route::{route, RouteTarget};
use super::similarity::TermUniverse;
use super::{ClusterRep, MapId, PathwayId, TopicSegment};
use crate::corpus::{cosine, SparseVector, Vocabulary};
use crate::emotion::SentimentScore;
use crate::error::invalid;
use crate::gsom::{GsomMap, GsomParams};
use crate::{seed, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PathwayConfig {
    /// Minimum similarity for a message to join an existing pathway.
    pub topic_threshold: f64,
    /// Share of a map's inputs a node must claim to become a hit node.
    pub hit_threshold: f64,
    /// Smallest new-topic pool, as a share of the batch, that trains a map.
    pub min_new_fraction: f64,
    /// Consecutive empty layers a pathway survives before retiring.
    pub max_dormant: u32,
    /// Neighbours of a hit node are pooled into its cluster only when at
    /// least this similar to it.
    pub pool_similarity: f64,
    /// Representation weights below this share of the representation's
    /// largest weight are dropped. Similarity is measured on shared terms
    /// only, so faint leftovers of another topic would otherwise decide
    /// routing once that topic leaves the vocabulary.
    pub rep_floor: f64,
    /// Hit clusters of one map at least this similar are one topic; below
    /// it they fork into separate pathways.
    pub merge_similarity: f64,
    pub gsom: GsomParams,
}

impl Default for PathwayConfig {
    fn default() -> Self {
        PathwayConfig {
            topic_threshold: 0.1,
            hit_threshold: 0.05,
            min_new_fraction: 0.01,
            max_dormant: 3,
            pool_similarity: 0.5,
            rep_floor: 0.1,
            merge_similarity: 0.5,
            gsom: GsomParams::default(),
        }
    }
}

impl PathwayConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.topic_threshold) {
            return Err(invalid("topic_threshold", "must lie in [0, 1]"));
        }
        if !(self.hit_threshold > 0.0 && self.hit_threshold < 1.0) {
            return Err(invalid("hit_threshold", "must lie in (0, 1)"));
        }
        if !(0.0..=1.0).contains(&self.min_new_fraction) {
            return Err(invalid("min_new_fraction", "must lie in [0, 1]"));
        }
        if !(0.0..=1.0).contains(&self.pool_similarity) {
            return Err(invalid("pool_similarity", "must lie in [0, 1]"));
        }
        if !(0.0..1.0).contains(&self.rep_floor) {
            return Err(invalid("rep_floor", "must lie in [0, 1)"));
        }
        if !(self.merge_similarity > 0.0) {
            return Err(invalid("merge_similarity", "must be positive"));
        }
        self.gsom.validate()
    }
}

/// A cluster representation that is still routable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiveRep {
    pub rep: ClusterRep,
    pub birth_layer: u64,
    pub parent: Option<PathwayId>,
    /// Consecutive layers without messages.
    pub dormant: u32,
}

/// Everything the next layer needs; no raw messages are kept.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct LayerState {
    pub last_layer: Option<u64>,
    /// Ordered by birth layer, then pathway id.
    pub reps: Vec<LiveRep>,
    /// Vocabularies still referenced by a live representation.
    pub vocabularies: BTreeMap<u64, BTreeSet<String>>,
    pub next_pathway: u64,
}

impl LayerState {
    pub fn pathway_ids(&self) -> impl Iterator<Item = PathwayId> + '_ {
        self.reps.iter().map(|r| r.rep.pathway_id)
    }

    fn vocab_of(&self, layer: u64) -> &BTreeSet<String> {
        static EMPTY: BTreeSet<String> = BTreeSet::new();
        self.vocabularies.get(&layer).unwrap_or(&EMPTY)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayerMessage {
    pub id: String,
    pub vector: SparseVector,
    /// Feature tokens, used for segment term counts.
    pub tokens: Vec<String>,
    pub sentiment: SentimentScore,
}

pub struct LayerInput<'a> {
    pub batch_index: u64,
    pub vocab: &'a Vocabulary,
    pub messages: &'a [LayerMessage],
}

/// A pathway created in this layer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Birth {
    pub pathway_id: PathwayId,
    pub parent: Option<PathwayId>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct LayerOutcome {
    /// One per pathway that received messages, ordered by pathway id.
    pub segments: Vec<TopicSegment>,
    /// Per input message, the pathway it ended up in.
    pub assignments: Vec<Option<PathwayId>>,
    pub births: Vec<Birth>,
    pub retired: Vec<PathwayId>,
}

struct Child {
    cluster: HitCluster,
    members: Vec<usize>,
}

/// Learns one layer from the current batch and the previous layer's
/// representations.
pub fn advance_layer(
    prior: &LayerState,
    input: LayerInput<'_>,
    cfg: &PathwayConfig,
) -> Result<(LayerState, LayerOutcome)> {
    cfg.validate()?;
    let layer = input.batch_index;
    if let Some(last) = prior.last_layer {
        if layer <= last {
            return Err(invalid("batch_index", "layers must strictly increase"));
        }
    }
    let msgs = input.messages;
    let mut next = LayerState {
        last_layer: Some(layer),
        reps: Vec::new(),
        vocabularies: BTreeMap::new(),
        next_pathway: prior.next_pathway,
    };
    let mut out = LayerOutcome {
        assignments: alloc::vec![None; msgs.len()],
        ..LayerOutcome::default()
    };

    let vectors: Vec<SparseVector> = msgs.iter().map(|m| m.vector.clone()).collect();
    let targets: Vec<RouteTarget<'_>> = prior
        .reps
        .iter()
        .map(|r| RouteTarget {
            pathway: r.rep.pathway_id,
            birth_layer: r.birth_layer,
            vector: &r.rep.vector,
            vocab: prior.vocab_of(r.rep.layer) as &dyn TermUniverse,
        })
        .collect();
    let routes = route(&vectors, input.vocab, &targets, cfg.topic_threshold);

    let mut routed: Vec<Vec<usize>> = alloc::vec![Vec::new(); prior.reps.len()];
    let mut pool = Vec::new();
    for (i, r) in routes.iter().enumerate() {
        match r {
            Some(t) => routed[*t].push(i),
            None if !vectors[i].is_empty() => pool.push(i),
            None => {}
        }
    }

    let vocab_terms: Vec<String> = input.vocab.terms().map(String::from).collect();
    let mut fresh_reps = Vec::new();

    for (t, live) in prior.reps.iter().enumerate() {
        let members = &routed[t];
        if members.is_empty() {
            let dormant = live.dormant + 1;
            if dormant > cfg.max_dormant {
                out.retired.push(live.rep.pathway_id);
            } else {
                next.reps.push(LiveRep {
                    dormant,
                    ..live.clone()
                });
            }
            continue;
        }
        let id = live.rep.pathway_id;
        let mut seed_vec = live.rep.vector.clone();
        seed_vec.retain(|term| input.vocab.contains(term));
        let params = GsomParams {
            seed: seed::derive(cfg.gsom.seed, &[layer, id.0 + 1]),
            ..cfg.gsom
        };
        let inputs: Vec<SparseVector> = members.iter().map(|&i| vectors[i].clone()).collect();
        let map = if seed_vec.is_empty() {
            GsomMap::new(None, &vocab_terms, params, layer)?
        } else {
            GsomMap::new(Some(&seed_vec), &vocab_terms, params, layer)?
        };
        let children = learn_children(map, &inputs, members, cfg, false);
        for (k, child) in children.into_iter().enumerate() {
            let (pathway_id, birth_layer, parent) = if k == 0 {
                (id, live.birth_layer, live.parent)
            } else {
                let fresh = PathwayId(next.next_pathway);
                next.next_pathway += 1;
                out.births.push(Birth {
                    pathway_id: fresh,
                    parent: Some(id),
                });
                (fresh, layer, Some(id))
            };
            let map_id = MapId {
                layer,
                seeded_by: Some(id),
            };
            fresh_reps.push(finish(
                child,
                pathway_id,
                birth_layer,
                parent,
                map_id,
                layer,
                &mut out,
            ));
        }
    }

    let min_pool = min_pool_size(cfg.min_new_fraction, msgs.len());
    if !pool.is_empty() && pool.len() >= min_pool {
        let params = GsomParams {
            seed: seed::derive(cfg.gsom.seed, &[layer, 0]),
            ..cfg.gsom
        };
        let inputs: Vec<SparseVector> = pool.iter().map(|&i| vectors[i].clone()).collect();
        let map = GsomMap::new(None, &vocab_terms, params, layer)?;
        for child in learn_children(map, &inputs, &pool, cfg, true) {
            let fresh = PathwayId(next.next_pathway);
            next.next_pathway += 1;
            out.births.push(Birth {
                pathway_id: fresh,
                parent: None,
            });
            let map_id = MapId {
                layer,
                seeded_by: None,
            };
            fresh_reps.push(finish(child, fresh, layer, None, map_id, layer, &mut out));
        }
    }

    next.reps.extend(fresh_reps);
    next.reps.sort_by_key(|r| (r.birth_layer, r.rep.pathway_id));

    let referenced: BTreeSet<u64> = next.reps.iter().map(|r| r.rep.layer).collect();
    for l in referenced {
        let vocab = if l == layer {
            input.vocab.term_set()
        } else {
            prior.vocab_of(l).clone()
        };
        next.vocabularies.insert(l, vocab);
    }

    out.segments = build_segments(layer, msgs, &out.assignments);
    Ok((next, out))
}

fn min_pool_size(fraction: f64, batch: usize) -> usize {
    let raw = fraction * batch as f64;
    let mut n = raw as usize;
    if (n as f64) < raw {
        n += 1;
    }
    n.max(1)
}

/// Trains `map` on `inputs`, generalizes it, and assigns each member to the
/// most similar cluster. Clusters that attract nobody are dropped; the rest
/// come back largest first. With `require_overlap`, members similar to no
/// cluster stay unassigned.
fn learn_children(
    mut map: GsomMap,
    inputs: &[SparseVector],
    members: &[usize],
    cfg: &PathwayConfig,
    require_overlap: bool,
) -> Vec<Child> {
    map.train(inputs);
    let clusters = consolidate(
        generalize(&map, inputs, cfg.hit_threshold, cfg.pool_similarity),
        cfg.merge_similarity,
    );
    let mut children: Vec<Child> = clusters
        .into_iter()
        .map(|cluster| Child {
            cluster,
            members: Vec::new(),
        })
        .collect();
    for (k, v) in inputs.iter().enumerate() {
        let mut best: Option<(usize, f64)> = None;
        for (c, child) in children.iter().enumerate() {
            let s = cosine(v, &child.cluster.vector);
            if best.is_none_or(|(_, b)| s > b) {
                best = Some((c, s));
            }
        }
        if let Some((c, s)) = best {
            if !require_overlap || s > 0.0 {
                children[c].members.push(members[k]);
            }
        }
    }
    children.retain(|c| !c.members.is_empty());
    for c in &mut children {
        c.cluster.vector.prune_relative(cfg.rep_floor);
    }
    // stable: equal sizes keep cluster order (most hits first)
    children.sort_by_key(|c| core::cmp::Reverse(c.members.len()));
    children
}

fn finish(
    child: Child,
    pathway_id: PathwayId,
    birth_layer: u64,
    parent: Option<PathwayId>,
    map: MapId,
    layer: u64,
    out: &mut LayerOutcome,
) -> LiveRep {
    for &m in &child.members {
        out.assignments[m] = Some(pathway_id);
    }
    LiveRep {
        rep: ClusterRep {
            layer,
            pathway_id,
            vector: child.cluster.vector,
            node: child.cluster.pos,
            map,
        },
        birth_layer,
        parent,
        dormant: 0,
    }
}

fn build_segments(
    layer: u64,
    msgs: &[LayerMessage],
    assignments: &[Option<PathwayId>],
) -> Vec<TopicSegment> {
    let mut groups: BTreeMap<PathwayId, Vec<usize>> = BTreeMap::new();
    for (i, a) in assignments.iter().enumerate() {
        if let Some(id) = a {
            groups.entry(*id).or_default().push(i);
        }
    }
    let batch = msgs.len() as f64;
    groups
        .into_iter()
        .map(|(pathway_id, members)| {
            let n = members.len() as f64;
            let mut term_freqs: BTreeMap<String, u32> = BTreeMap::new();
            let (mut pos, mut neg) = (0.0, 0.0);
            for &i in &members {
                pos += msgs[i].sentiment.positive;
                neg += msgs[i].sentiment.negative;
                for t in &msgs[i].tokens {
                    *term_freqs.entry(t.clone()).or_default() += 1;
                }
            }
            TopicSegment {
                pathway_id,
                batch_index: layer,
                message_ids: members.iter().map(|&i| msgs[i].id.clone()).collect(),
                volume_proportion: n / batch,
                avg_pos: Some(pos / n),
                avg_neg: Some(neg / n),
                term_freqs,
            }
        })
        .collect()
}
