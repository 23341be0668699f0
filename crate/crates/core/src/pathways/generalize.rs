use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::corpus::{cosine, SparseVector};
use crate::gsom::{GsomMap, Pos};

/// A hit node of a trained map and its max-pooled neighbourhood.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HitCluster {
    /// Position of the hit node.
    pub pos: Pos,
    /// Inputs claimed by the hit node (and by any siblings merged into it).
    pub hits: u32,
    /// Every node whose weights were pooled.
    pub pooled: Vec<Pos>,
    /// Weights of the hit node alone.
    pub centre: SparseVector,
    pub vector: SparseVector,
}

/// Re-assigns `inputs` to their winners and turns every node that claims at
/// least `hit_threshold` of them into a [`HitCluster`] whose vector is the
/// element-wise maximum over the node and those of its 4-neighbours that
/// won at least one input and whose cosine to it is at least
/// `pool_similarity`. Neighbours that win nothing are interpolations
/// between prototypes; on a border between two topics they carry both, so
/// they are left out.
///
/// When no node reaches the threshold the node with the most hits is used.
/// Clusters come back ordered by hits, most first, then by position.
pub fn generalize(
    map: &GsomMap,
    inputs: &[SparseVector],
    hit_threshold: f64,
    pool_similarity: f64,
) -> Vec<HitCluster> {
    let mut hits = alloc::vec![0u32; map.len()];
    for v in inputs {
        hits[map.find_winner(v)] += 1;
    }
    let total = inputs.len().max(1) as f64;
    let mut chosen: Vec<usize> = (0..map.len())
        .filter(|&i| hits[i] > 0 && hits[i] as f64 / total >= hit_threshold)
        .collect();
    if chosen.is_empty() {
        let nodes = map.nodes();
        let best = (0..map.len()).max_by(|&a, &b| {
            hits[a]
                .cmp(&hits[b])
                .then_with(|| nodes[b].pos.cmp(&nodes[a].pos))
        });
        chosen.extend(best);
    }
    let nodes = map.nodes();
    let slot: BTreeMap<Pos, usize> = nodes.iter().enumerate().map(|(i, n)| (n.pos, i)).collect();
    chosen.sort_by(|&a, &b| hits[b].cmp(&hits[a]).then(nodes[a].pos.cmp(&nodes[b].pos)));
    chosen
        .into_iter()
        .map(|i| {
            let node = &nodes[i];
            let mut vector = node.weights.clone().with_vocab_ref(map.birth_vocab());
            let mut pooled = alloc::vec![node.pos];
            for n in map.neighbours(node.pos) {
                let won = slot.get(&n.pos).is_some_and(|&j| hits[j] > 0);
                if !won || cosine(&n.weights, &node.weights) < pool_similarity {
                    continue;
                }
                vector.max_pool(&n.weights);
                pooled.push(n.pos);
            }
            HitCluster {
                pos: node.pos,
                hits: hits[i],
                pooled,
                centre: node.weights.clone(),
                vector,
            }
        })
        .collect()
}

/// Groups clusters whose hit nodes are linked by a chain of cosines of at
/// least `min_similarity` (single linkage). Each group becomes one cluster
/// at the position of its first member, with hits summed, pooled nodes
/// united and vectors max-pooled, so the vector is still the element-wise
/// maximum over all pooled nodes. Group order follows first members.
pub fn consolidate(clusters: Vec<HitCluster>, min_similarity: f64) -> Vec<HitCluster> {
    let n = clusters.len();
    let mut group: Vec<usize> = (0..n).collect();
    fn root(group: &mut [usize], mut i: usize) -> usize {
        while group[i] != i {
            group[i] = group[group[i]];
            i = group[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if cosine(&clusters[i].centre, &clusters[j].centre) >= min_similarity {
                let (a, b) = (root(&mut group, i), root(&mut group, j));
                // the smaller index stays the root so groups keep first-member order
                group[a.max(b)] = a.min(b);
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|i| root(&mut group, i)).collect();
    let mut kept: Vec<HitCluster> = Vec::new();
    let mut slot: Vec<Option<usize>> = alloc::vec![None; n];
    for (i, c) in clusters.into_iter().enumerate() {
        match slot[roots[i]] {
            Some(k) => {
                let k = &mut kept[k];
                k.hits += c.hits;
                for p in c.pooled {
                    if !k.pooled.contains(&p) {
                        k.pooled.push(p);
                    }
                }
                k.vector.max_pool(&c.vector);
            }
            None => {
                slot[roots[i]] = Some(kept.len());
                kept.push(c);
            }
        }
    }
    kept
}
