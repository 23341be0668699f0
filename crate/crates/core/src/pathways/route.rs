use alloc::vec::Vec;

use super::similarity::{similarity, TermUniverse};
use super::PathwayId;
use crate::corpus::SparseVector;

/// A prior-layer cluster representation messages can be routed to.
pub struct RouteTarget<'a> {
    pub pathway: PathwayId,
    pub birth_layer: u64,
    pub vector: &'a SparseVector,
    pub vocab: &'a dyn TermUniverse,
}

/// Where a message goes: index of a target, or `None` for the new-topic
/// pool.
pub type Route = Option<usize>;

/// Sends each vector to the most similar target when that similarity is at
/// least `threshold`, otherwise to the new-topic pool. Ties go to the oldest
/// pathway, then the smallest id. Empty vectors carry no evidence and always
/// go to the pool.
pub fn route(
    vectors: &[SparseVector],
    vocab: &dyn TermUniverse,
    targets: &[RouteTarget<'_>],
    threshold: f64,
) -> Vec<Route> {
    let mut order: Vec<usize> = (0..targets.len()).collect();
    order.sort_by_key(|&i| (targets[i].birth_layer, targets[i].pathway));
    vectors
        .iter()
        .map(|v| {
            if v.is_empty() {
                return None;
            }
            let mut best: Option<(usize, f64)> = None;
            for &i in &order {
                let t = &targets[i];
                let s = similarity(v, vocab, t.vector, t.vocab);
                if best.is_none_or(|(_, b)| s > b) {
                    best = Some((i, s));
                }
            }
            best.filter(|&(_, s)| s >= threshold).map(|(i, _)| i)
        })
        .collect()
}
