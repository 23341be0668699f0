use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::math;

/// Weights at or below this value are treated as absent.
pub const MIN_WEIGHT: f64 = 1e-12;

/// A term-keyed vector with strictly positive weights.
///
/// Entries are kept sorted by term so that dot products and element-wise
/// merges are linear merge-joins. `vocab_ref` names the batch whose
/// vocabulary produced the vector.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SparseVector {
    entries: Vec<(String, f64)>,
    vocab_ref: u64,
}

impl SparseVector {
    pub fn new(vocab_ref: u64) -> Self {
        SparseVector {
            entries: Vec::new(),
            vocab_ref,
        }
    }

    /// Builds a vector from `(term, weight)` pairs. Later duplicates win and
    /// non-positive weights are dropped.
    pub fn from_pairs<I, S>(vocab_ref: u64, pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        let map: BTreeMap<String, f64> = pairs.into_iter().map(|(t, w)| (t.into(), w)).collect();
        SparseVector {
            entries: map.into_iter().filter(|&(_, w)| w > MIN_WEIGHT).collect(),
            vocab_ref,
        }
    }

    /// Takes already sorted, de-duplicated, positive entries.
    pub(crate) fn from_sorted(vocab_ref: u64, entries: Vec<(String, f64)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|&(_, w)| w > MIN_WEIGHT));
        SparseVector { entries, vocab_ref }
    }

    pub fn vocab_ref(&self) -> u64 {
        self.vocab_ref
    }

    pub fn with_vocab_ref(mut self, vocab_ref: u64) -> Self {
        self.vocab_ref = vocab_ref;
        self
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, term: &str) -> f64 {
        match self.entries.binary_search_by(|(t, _)| t.as_str().cmp(term)) {
            Ok(i) => self.entries[i].1,
            Err(_) => 0.0,
        }
    }

    pub fn contains(&self, term: &str) -> bool {
        self.entries
            .binary_search_by(|(t, _)| t.as_str().cmp(term))
            .is_ok()
    }

    /// Sets one weight; a non-positive weight removes the entry.
    pub fn set(&mut self, term: &str, weight: f64) {
        match self.entries.binary_search_by(|(t, _)| t.as_str().cmp(term)) {
            Ok(i) if weight > MIN_WEIGHT => self.entries[i].1 = weight,
            Ok(i) => {
                self.entries.remove(i);
            }
            Err(i) if weight > MIN_WEIGHT => self.entries.insert(i, (String::from(term), weight)),
            Err(_) => {}
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> + '_ {
        self.entries.iter().map(|(t, w)| (t.as_str(), *w))
    }

    pub fn terms(&self) -> impl Iterator<Item = &str> + '_ {
        self.entries.iter().map(|(t, _)| t.as_str())
    }

    pub fn norm(&self) -> f64 {
        math::sqrt(self.entries.iter().map(|(_, w)| w * w).sum())
    }

    pub fn dot(&self, other: &SparseVector) -> f64 {
        let (mut i, mut j, mut acc) = (0, 0, 0.0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    acc += a[i].1 * b[j].1;
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    /// Keeps only the entries whose term satisfies `keep`.
    pub fn retain(&mut self, mut keep: impl FnMut(&str) -> bool) {
        self.entries.retain(|(t, _)| keep(t));
    }

    pub fn scaled(&self, factor: f64) -> SparseVector {
        SparseVector::from_pairs(
            self.vocab_ref,
            self.entries.iter().map(|(t, w)| (t.clone(), w * factor)),
        )
    }

    /// Element-wise maximum with `other`, in place.
    /// Drops weights below `fraction` of the largest weight.
    pub fn prune_relative(&mut self, fraction: f64) {
        let peak = self.entries.iter().map(|e| e.1).fold(0.0, f64::max);
        let floor = fraction * peak;
        self.entries.retain(|e| e.1 >= floor);
    }

    pub fn max_pool(&mut self, other: &SparseVector) {
        let merged = merge(&self.entries, &other.entries, |a, b| a.max(b));
        self.entries = merged;
    }

    /// Moves every weight toward `target` by `rate` over the union of both
    /// supports: `w + rate * (target - w)`.
    pub fn move_toward(&mut self, target: &SparseVector, rate: f64) {
        let merged = merge(&self.entries, &target.entries, |w, v| w + rate * (v - w));
        self.entries = merged;
    }

    /// `2 * self - other` over the union of supports, clamped at zero.
    pub fn extrapolate_from(&self, other: &SparseVector) -> SparseVector {
        SparseVector {
            entries: merge(&self.entries, &other.entries, |a, b| 2.0 * a - b),
            vocab_ref: self.vocab_ref,
        }
    }

    pub fn into_entries(self) -> Vec<(String, f64)> {
        self.entries
    }
}

/// Merge-joins two sorted entry lists, combining weights with `f` (absent
/// weights read as zero) and dropping results that are not positive.
fn merge(
    a: &[(String, f64)],
    b: &[(String, f64)],
    f: impl Fn(f64, f64) -> f64,
) -> Vec<(String, f64)> {
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    let (mut i, mut j) = (0, 0);
    let mut push = |t: &String, w: f64| {
        if w > MIN_WEIGHT {
            out.push((t.clone(), w));
        }
    };
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                push(&a[i].0, f(a[i].1, 0.0));
                i += 1;
            }
            Ordering::Greater => {
                push(&b[j].0, f(0.0, b[j].1));
                j += 1;
            }
            Ordering::Equal => {
                push(&a[i].0, f(a[i].1, b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Cosine similarity of two vectors sharing one term universe; zero when
/// either vector is zero.
pub fn cosine(a: &SparseVector, b: &SparseVector) -> f64 {
    let denom = a.norm() * b.norm();
    if denom == 0.0 {
        return 0.0;
    }
    a.dot(b) / denom
}
