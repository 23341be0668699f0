//! Growing Self-Organising Map over sparse term vectors.
//!
//! Nodes sit on a square grid. Each input pulls the most similar node (by
//! cosine) and its Gaussian grid neighbourhood toward itself; the winner
//! accumulates the part of `1 - similarity` above a tolerance as
//! quantisation error, and a node whose error exceeds the growth threshold
//! sprouts new nodes into every vacant 4-neighbour cell.
//!
//! The tolerance plays the role of a spread factor: short texts sampled
//! from one topic never match a prototype exactly, and charging that
//! irreducible spread would grow the map until it memorises every input.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::SparseVector;
use crate::error::invalid;
use crate::{math, seed, Result};

/// Grid coordinate `(row, col)`.
pub type Pos = (i32, i32);

/// Neighbourhood factors below this are not applied.
const NEIGHBOUR_CUTOFF: f64 = 1e-6;

const DIRECTIONS: [Pos; 4] = [(-1, 0), (0, -1), (0, 1), (1, 0)];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GsomParams {
    /// Learning rate at the first ordering epoch.
    pub learning_rate: f64,
    /// Learning rate at the last ordering epoch and throughout smoothing.
    pub min_learning_rate: f64,
    pub ordering_epochs: u32,
    pub smoothing_epochs: u32,
    /// Gaussian neighbourhood radius (grid units) at the first epoch.
    pub radius: f64,
    pub min_radius: f64,
    /// Accumulated quantisation error that triggers growth.
    pub growth_threshold: f64,
    /// Dissimilarity a winner absorbs per input without charge.
    pub error_tolerance: f64,
    /// Random terms per node when a map starts without a seed.
    pub init_terms: usize,
    /// Half-width of the uniform jitter used for seeded copies and for new
    /// nodes without an opposite neighbour.
    pub jitter: f64,
    /// Set by the caller per map; not part of a configuration file.
    #[serde(skip)]
    pub seed: u64,
}

impl Default for GsomParams {
    fn default() -> Self {
        GsomParams {
            learning_rate: 0.3,
            min_learning_rate: 0.05,
            ordering_epochs: 40,
            smoothing_epochs: 20,
            radius: 2.0,
            min_radius: 0.5,
            growth_threshold: 4.0,
            error_tolerance: 0.6,
            init_terms: 3,
            jitter: 0.01,
            seed: 0,
        }
    }
}

impl GsomParams {
    pub fn validate(&self) -> Result<()> {
        let lr = (self.min_learning_rate, self.learning_rate);
        if !(lr.0 > 0.0 && lr.0 <= lr.1 && lr.1 <= 1.0) {
            return Err(invalid(
                "learning_rate",
                "need 0 < min_learning_rate <= learning_rate <= 1",
            ));
        }
        if self.ordering_epochs == 0 {
            return Err(invalid("ordering_epochs", "must be positive"));
        }
        if !(self.min_radius > 0.0 && self.min_radius <= self.radius) {
            return Err(invalid("radius", "need 0 < min_radius <= radius"));
        }
        if !(self.growth_threshold > 0.0) {
            return Err(invalid("growth_threshold", "must be positive"));
        }
        if !(0.0..1.0).contains(&self.error_tolerance) {
            return Err(invalid("error_tolerance", "must lie in [0, 1)"));
        }
        if !(self.jitter >= 0.0) {
            return Err(invalid("jitter", "must be non-negative"));
        }
        Ok(())
    }

    /// Learning rate for an ordering epoch, linear from `learning_rate` down
    /// to `min_learning_rate`.
    pub fn rate_at(&self, epoch: u32) -> f64 {
        lerp(self.learning_rate, self.min_learning_rate, self.progress(epoch))
    }

    pub fn radius_at(&self, epoch: u32) -> f64 {
        lerp(self.radius, self.min_radius, self.progress(epoch))
    }

    fn progress(&self, epoch: u32) -> f64 {
        if self.ordering_epochs <= 1 {
            return 0.0;
        }
        (epoch.min(self.ordering_epochs - 1)) as f64 / (self.ordering_epochs - 1) as f64
    }
}

fn lerp(from: f64, to: f64, t: f64) -> f64 {
    from + (to - from) * t
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GsomNode {
    pub pos: Pos,
    pub weights: SparseVector,
    /// Accumulated quantisation error.
    pub qe: f64,
    pub hits: u32,
    #[serde(skip)]
    norm: f64,
}

impl GsomNode {
    fn new(pos: Pos, weights: SparseVector) -> Self {
        let norm = weights.norm();
        GsomNode {
            pos,
            weights,
            qe: 0.0,
            hits: 0,
            norm,
        }
    }

    fn similarity(&self, v: &SparseVector, v_norm: f64) -> f64 {
        let denom = self.norm * v_norm;
        if denom == 0.0 {
            0.0
        } else {
            self.weights.dot(v) / denom
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GsomMap {
    nodes: Vec<GsomNode>,
    index: BTreeMap<Pos, usize>,
    params: GsomParams,
    birth_vocab: u64,
    rng: ChaCha8Rng,
}

impl GsomMap {
    /// Starts a map. Without a seed, four nodes at `(0,0)..(1,1)` get
    /// uniform random weights on a few terms sampled from `terms`. With a
    /// seed, `(0,0)` carries the seed exactly and the other three cells get
    /// jittered copies.
    pub fn new(
        seed_vector: Option<&SparseVector>,
        terms: &[String],
        params: GsomParams,
        birth_vocab: u64,
    ) -> Result<Self> {
        params.validate()?;
        let mut rng = seed::rng(params.seed);
        let cells: [Pos; 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];
        let mut nodes = Vec::with_capacity(4);
        for (k, &pos) in cells.iter().enumerate() {
            let weights = match seed_vector {
                Some(s) if k == 0 => s.clone().with_vocab_ref(birth_vocab),
                Some(s) => jittered(s, params.jitter, &mut rng).with_vocab_ref(birth_vocab),
                None => random_weights(terms, params.init_terms, birth_vocab, &mut rng),
            };
            nodes.push(GsomNode::new(pos, weights));
        }
        let index = cells.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        Ok(GsomMap {
            nodes,
            index,
            params,
            birth_vocab,
            rng,
        })
    }

    /// Builds a map from explicit node weights, e.g. a restored or
    /// hand-crafted grid. Positions must be unique.
    pub fn from_cells(
        cells: Vec<(Pos, SparseVector)>,
        params: GsomParams,
        birth_vocab: u64,
    ) -> Result<Self> {
        params.validate()?;
        let mut index = BTreeMap::new();
        let mut nodes = Vec::with_capacity(cells.len());
        for (pos, weights) in cells {
            if index.insert(pos, nodes.len()).is_some() {
                return Err(invalid("cells", "duplicate grid position"));
            }
            nodes.push(GsomNode::new(pos, weights));
        }
        if nodes.is_empty() {
            return Err(invalid("cells", "a map needs at least one node"));
        }
        Ok(GsomMap {
            nodes,
            index,
            params,
            birth_vocab,
            rng: seed::rng(params.seed),
        })
    }

    pub fn params(&self) -> &GsomParams {
        &self.params
    }

    pub fn birth_vocab(&self) -> u64 {
        self.birth_vocab
    }

    pub fn nodes(&self) -> &[GsomNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node_at(&self, pos: Pos) -> Option<&GsomNode> {
        self.index.get(&pos).map(|&i| &self.nodes[i])
    }

    /// Existing 4-neighbours of `pos`.
    pub fn neighbours(&self, pos: Pos) -> impl Iterator<Item = &GsomNode> + '_ {
        DIRECTIONS
            .iter()
            .filter_map(move |d| self.node_at((pos.0 + d.0, pos.1 + d.1)))
    }

    /// Index of the most similar node; ties go to the smallest position.
    pub fn find_winner(&self, v: &SparseVector) -> usize {
        self.winner_and_similarity(v).0
    }

    pub fn winner_and_similarity(&self, v: &SparseVector) -> (usize, f64) {
        let v_norm = v.norm();
        let mut best = (0, f64::NEG_INFINITY);
        for (i, node) in self.nodes.iter().enumerate() {
            let s = node.similarity(v, v_norm);
            if s > best.1 || (s == best.1 && node.pos < self.nodes[best.0].pos) {
                best = (i, s);
            }
        }
        best
    }

    /// One ordering step at `epoch`: decayed rate and radius, growth on.
    pub fn train_step(&mut self, v: &SparseVector, epoch: u32) -> usize {
        let rate = self.params.rate_at(epoch);
        let radius = self.params.radius_at(epoch);
        self.adapt(v, rate, radius, true)
    }

    /// Moves the winner for `v` and its neighbourhood toward `v` with
    /// factor `rate * exp(-d^2 / (2 radius^2))`, charges the winner
    /// `1 - similarity - error_tolerance` when positive, and grows the winner when allowed and its error
    /// exceeds the threshold. Returns the winner's index.
    pub fn adapt(&mut self, v: &SparseVector, rate: f64, radius: f64, allow_growth: bool) -> usize {
        let (winner, sim) = self.winner_and_similarity(v);
        let centre = self.nodes[winner].pos;
        if rate > 0.0 {
            let two_sigma_sq = 2.0 * radius * radius;
            for node in &mut self.nodes {
                let factor = if node.pos == centre {
                    rate
                } else if two_sigma_sq > 0.0 {
                    rate * math::exp(-grid_dist_sq(node.pos, centre) / two_sigma_sq)
                } else {
                    0.0
                };
                if factor < NEIGHBOUR_CUTOFF {
                    continue;
                }
                node.weights.move_toward(v, factor);
                node.norm = node.weights.norm();
            }
        }
        self.nodes[winner].qe += (1.0 - sim - self.params.error_tolerance).max(0.0);
        if allow_growth && self.nodes[winner].qe > self.params.growth_threshold {
            self.grow(winner);
        }
        winner
    }

    /// Adds a node to every vacant 4-neighbour cell of `node` and resets its
    /// error to half the threshold. A new node extrapolates `2w - w_opp`
    /// when the cell opposite the new one is occupied; otherwise it copies
    /// `w` with jitter. Returns how many nodes were added.
    pub fn grow(&mut self, node: usize) -> usize {
        let pos = self.nodes[node].pos;
        let mut added = 0;
        for d in DIRECTIONS {
            let target = (pos.0 + d.0, pos.1 + d.1);
            if self.index.contains_key(&target) {
                continue;
            }
            let base = &self.nodes[node].weights;
            let weights = match self.index.get(&(pos.0 - d.0, pos.1 - d.1)) {
                Some(&opp) => base.extrapolate_from(&self.nodes[opp].weights),
                None => jittered(base, self.params.jitter, &mut self.rng),
            };
            self.index.insert(target, self.nodes.len());
            self.nodes.push(GsomNode::new(target, weights));
            added += 1;
        }
        self.nodes[node].qe = self.params.growth_threshold / 2.0;
        added
    }

    /// Ordering then smoothing over `inputs`, each pass in a freshly
    /// shuffled order; hit counts are recomputed at the end.
    pub fn train(&mut self, inputs: &[SparseVector]) {
        self.train_ordering(inputs);
        self.train_smoothing(inputs);
        self.recount_hits(inputs);
    }

    pub fn train_ordering(&mut self, inputs: &[SparseVector]) {
        let mut order: Vec<usize> = (0..inputs.len()).collect();
        for epoch in 0..self.params.ordering_epochs {
            order.shuffle(&mut self.rng);
            for &i in &order {
                self.train_step(&inputs[i], epoch);
            }
        }
    }

    pub fn train_smoothing(&mut self, inputs: &[SparseVector]) {
        let mut order: Vec<usize> = (0..inputs.len()).collect();
        let (rate, radius) = (self.params.min_learning_rate, self.params.min_radius);
        for _ in 0..self.params.smoothing_epochs {
            order.shuffle(&mut self.rng);
            for &i in &order {
                self.adapt(&inputs[i], rate, radius, false);
            }
        }
    }

    /// Resets and recomputes each node's hit count over `inputs`.
    pub fn recount_hits(&mut self, inputs: &[SparseVector]) {
        for n in &mut self.nodes {
            n.hits = 0;
        }
        for v in inputs {
            let w = self.find_winner(v);
            self.nodes[w].hits += 1;
        }
    }

    /// Mean of `1 - similarity(v, winner)` over `inputs`.
    pub fn mean_quantisation_error(&self, inputs: &[SparseVector]) -> f64 {
        if inputs.is_empty() {
            return 0.0;
        }
        let total: f64 = inputs
            .iter()
            .map(|v| 1.0 - self.winner_and_similarity(v).1)
            .sum();
        total / inputs.len() as f64
    }
}

fn grid_dist_sq(a: Pos, b: Pos) -> f64 {
    let dr = (a.0 - b.0) as f64;
    let dc = (a.1 - b.1) as f64;
    dr * dr + dc * dc
}

fn jittered(v: &SparseVector, eps: f64, rng: &mut ChaCha8Rng) -> SparseVector {
    let pairs: Vec<(String, f64)> = v
        .iter()
        .map(|(t, w)| {
            let noise = if eps > 0.0 {
                rng.random_range(-eps..=eps)
            } else {
                0.0
            };
            (String::from(t), (w + noise).max(0.0))
        })
        .collect();
    SparseVector::from_pairs(v.vocab_ref(), pairs)
}

fn random_weights(terms: &[String], k: usize, vocab: u64, rng: &mut ChaCha8Rng) -> SparseVector {
    let picked: Vec<&String> = terms.choose_multiple(rng, k.min(terms.len())).collect();
    SparseVector::from_pairs(
        vocab,
        picked
            .into_iter()
            .map(|t| (t.clone(), 1.0 - rng.random::<f64>())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::cosine;
    use alloc::vec;

    fn v(pairs: &[(&str, f64)]) -> SparseVector {
        SparseVector::from_pairs(0, pairs.iter().map(|&(t, w)| (t, w)))
    }

    fn terms(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| String::from(*s)).collect()
    }

    fn params() -> GsomParams {
        GsomParams {
            seed: 11,
            error_tolerance: 0.0,
            ..GsomParams::default()
        }
    }

    #[test]
    fn unseeded_map_has_four_fresh_nodes() {
        let map = GsomMap::new(None, &terms(&["a", "b", "c", "d"]), params(), 0).unwrap();
        assert_eq!(map.len(), 4);
        let mut cells: Vec<Pos> = map.nodes().iter().map(|n| n.pos).collect();
        cells.sort();
        assert_eq!(cells, [(0, 0), (0, 1), (1, 0), (1, 1)]);
        for n in map.nodes() {
            assert_eq!((n.qe, n.hits), (0.0, 0));
            assert_eq!(n.weights.len(), 3);
            assert!(n.weights.iter().all(|(_, w)| w > 0.0 && w <= 1.0));
        }
    }

    #[test]
    fn seeded_map_keeps_seed_exactly() {
        let seed_vec = v(&[("a", 0.7), ("b", 1.9)]);
        let map = GsomMap::new(Some(&seed_vec), &[], params(), 0).unwrap();
        assert_eq!(map.node_at((0, 0)).unwrap().weights, seed_vec);
        for pos in [(0, 1), (1, 0), (1, 1)] {
            let w = &map.node_at(pos).unwrap().weights;
            assert!((w.get("a") - 0.7).abs() <= 0.01 && (w.get("b") - 1.9).abs() <= 0.01);
        }
    }

    #[test]
    fn construction_is_deterministic_per_seed() {
        let t = terms(&["a", "b", "c", "d", "e", "f"]);
        let a = GsomMap::new(None, &t, params(), 0).unwrap();
        let b = GsomMap::new(None, &t, params(), 0).unwrap();
        assert_eq!(a, b);
        let c = GsomMap::new(None, &t, GsomParams { seed: 12, ..params() }, 0).unwrap();
        assert_ne!(a.nodes(), c.nodes());
    }

    #[test]
    fn winner_is_the_identical_node() {
        let seed_vec = v(&[("a", 1.0), ("b", 2.0)]);
        let map = GsomMap::new(Some(&seed_vec), &[], GsomParams { jitter: 0.5, ..params() }, 0)
            .unwrap();
        let (w, s) = map.winner_and_similarity(&seed_vec);
        assert_eq!(map.nodes()[w].pos, (0, 0));
        assert!((s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn orthogonal_input_falls_back_to_smallest_position() {
        let map = GsomMap::new(None, &terms(&["a", "b"]), params(), 0).unwrap();
        let w = map.find_winner(&v(&[("zzz", 1.0)]));
        assert_eq!(map.nodes()[w].pos, (0, 0));
    }

    #[test]
    fn winner_has_the_higher_cosine() {
        // cos(v, n1) = 0.3 / 1 = 0.3 ; cos(v, n2) = 0.8
        let mut map = GsomMap::new(Some(&v(&[("z", 1.0)])), &[], params(), 0).unwrap();
        map.nodes[1].weights = v(&[("x", 0.3), ("z", 0.9539392014169456)]);
        map.nodes[1].norm = map.nodes[1].weights.norm();
        map.nodes[2].weights = v(&[("x", 0.8), ("y", 0.6)]);
        map.nodes[2].norm = map.nodes[2].weights.norm();
        map.nodes[3].weights = v(&[("z", 1.0)]);
        map.nodes[3].norm = 1.0;
        map.nodes[0].weights = v(&[("z", 1.0)]);
        map.nodes[0].norm = 1.0;
        let input = v(&[("x", 1.0)]);
        assert!((cosine(&input, &map.nodes[1].weights) - 0.3).abs() < 1e-12);
        assert_eq!(map.find_winner(&input), 2);
    }

    #[test]
    fn full_rate_with_tiny_radius_copies_the_input() {
        let mut map = GsomMap::new(None, &terms(&["a", "b", "c"]), params(), 0).unwrap();
        let input = v(&[("a", 0.4), ("q", 2.0)]);
        let w = map.adapt(&input, 1.0, 1e-3, false);
        assert_eq!(map.nodes()[w].weights, input);
        let before: Vec<_> = map.nodes().iter().map(|n| n.weights.clone()).collect();
        map.adapt(&input, 1.0, 1e-3, false);
        let after: Vec<_> = map.nodes().iter().map(|n| n.weights.clone()).collect();
        assert_eq!(before, after);
    }

    #[test]
    fn zero_rate_leaves_weights_alone() {
        let mut map = GsomMap::new(None, &terms(&["a", "b", "c"]), params(), 0).unwrap();
        let before: Vec<_> = map.nodes().iter().map(|n| n.weights.clone()).collect();
        map.adapt(&v(&[("a", 1.0)]), 0.0, 2.0, false);
        let after: Vec<_> = map.nodes().iter().map(|n| n.weights.clone()).collect();
        assert_eq!(before, after);
    }

    #[test]
    fn half_rate_update_on_the_winner() {
        let mut map = GsomMap::new(Some(&v(&[("a", 1.0)])), &[], GsomParams { jitter: 0.0, ..params() }, 0)
            .unwrap();
        for n in map.nodes.iter_mut().skip(1) {
            n.weights = v(&[("other", 1.0)]);
            n.norm = 1.0;
        }
        // v = {a: 0, b: 2}; every node scores 0 so (0,0) wins the tie
        let w = map.adapt(&v(&[("a", 0.0), ("b", 2.0)]), 0.5, 1e-3, false);
        assert_eq!(map.nodes()[w].pos, (0, 0));
        assert_eq!(map.nodes()[w].weights, v(&[("a", 0.5), ("b", 1.0)]));
        assert_eq!(map.nodes()[1].weights, v(&[("other", 1.0)]));
        assert_eq!(map.nodes()[w].qe, 1.0);
    }

    #[test]
    fn spread_within_tolerance_is_free() {
        let p = GsomParams { jitter: 0.0, error_tolerance: 0.5, ..params() };
        let mut map = GsomMap::new(Some(&v(&[("a", 1.0)])), &[], p, 0).unwrap();
        // cosine 0.8 is within tolerance, cosine 0 charges 1 - 0.5
        let w = map.adapt(&v(&[("a", 0.8), ("b", 0.6)]), 0.0, 1e-3, false);
        assert_eq!(map.nodes()[w].qe, 0.0);
        map.adapt(&v(&[("z", 1.0)]), 0.0, 1e-3, false);
        assert_eq!(map.nodes()[map.index[&(0, 0)]].qe, 0.5);
    }

    #[test]
    fn corner_growth_fills_two_vacancies() {
        let mut map = GsomMap::new(None, &terms(&["a", "b", "c"]), params(), 0).unwrap();
        let corner = map.index[&(0, 0)];
        map.nodes[corner].qe = 10.0;
        assert_eq!(map.grow(corner), 2);
        assert!(map.node_at((-1, 0)).is_some() && map.node_at((0, -1)).is_some());
        assert_eq!(map.nodes[corner].qe, 2.0);
    }

    #[test]
    fn interior_growth_adds_nothing_and_resets_error() {
        let mut map = GsomMap::new(None, &terms(&["a", "b", "c"]), params(), 0).unwrap();
        for cell in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let i = map.index[&cell];
            map.grow(i);
        }
        let inner = map.index[&(0, 0)];
        map.nodes[inner].qe = 9.0;
        let before = map.len();
        assert_eq!(map.grow(inner), 0);
        assert_eq!(map.len(), before);
        assert_eq!(map.nodes[inner].qe, map.params.growth_threshold / 2.0);
    }

    #[test]
    fn growth_extrapolates_from_the_opposite_neighbour() {
        let mut map = GsomMap::new(Some(&v(&[("a", 1.0)])), &[], GsomParams { jitter: 0.0, ..params() }, 0)
            .unwrap();
        let node = map.index[&(0, 1)];
        map.nodes[node].weights = v(&[("a", 2.0)]);
        let left = map.index[&(0, 0)];
        map.nodes[left].weights = v(&[("a", 1.0)]);
        map.grow(node);
        assert_eq!(map.node_at((0, 2)).unwrap().weights, v(&[("a", 3.0)]));
        // (-1,1) has (1,1) opposite: 2*2 - 1 = 3 as well since (1,1) holds a=1
        assert_eq!(map.node_at((-1, 1)).unwrap().weights, v(&[("a", 3.0)]));
    }

    #[test]
    fn schedules_are_linear_between_bounds() {
        let p = GsomParams::default();
        assert_eq!(p.rate_at(0), 0.3);
        assert!((p.rate_at(39) - 0.05).abs() < 1e-15);
        assert!((p.radius_at(39) - 0.5).abs() < 1e-15);
        assert!(p.rate_at(10) < p.rate_at(9));
    }

    #[test]
    fn invalid_params_are_rejected() {
        let bad = [
            GsomParams { learning_rate: 1.5, ..params() },
            GsomParams { min_learning_rate: 0.0, ..params() },
            GsomParams { min_learning_rate: 0.5, learning_rate: 0.3, ..params() },
            GsomParams { min_radius: 3.0, ..params() },
            GsomParams { growth_threshold: 0.0, ..params() },
            GsomParams { ordering_epochs: 0, ..params() },
            GsomParams { error_tolerance: 1.0, ..params() },
        ];
        for p in bad {
            assert!(p.validate().is_err(), "{p:?}");
        }
    }

    #[test]
    fn repeated_input_does_not_grow() {
        let input = v(&[("a", 1.0), ("b", 1.0)]);
        let mut map = GsomMap::new(Some(&input), &[], params(), 0).unwrap();
        map.train(&vec![input.clone(); 10]);
        assert_eq!(map.len(), 4);
        let winner = map.find_winner(&input);
        assert_eq!(map.nodes()[winner].hits, 10);
        assert!(map.nodes()[winner].qe < map.params.growth_threshold);
    }

    #[test]
    fn no_smoothing_epochs_means_ordering_output() {
        let t = terms(&["a", "b", "c", "d"]);
        let inputs = vec![v(&[("a", 1.0)]), v(&[("b", 1.0)]), v(&[("c", 1.0), ("d", 0.5)])];
        let p = GsomParams { smoothing_epochs: 0, ordering_epochs: 5, ..params() };
        let mut full = GsomMap::new(None, &t, p, 0).unwrap();
        full.train(&inputs);
        let mut ordered = GsomMap::new(None, &t, p, 0).unwrap();
        ordered.train_ordering(&inputs);
        ordered.recount_hits(&inputs);
        assert_eq!(full, ordered);
    }
}
