use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::sparse::SparseVector;
use crate::error::invalid;
use crate::math;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermStats {
    /// Dense feature id, in term order.
    pub id: u32,
    /// Number of messages containing the term.
    pub df: u32,
}

/// The terms of one batch whose document frequency reaches the threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vocabulary {
    pub batch_index: u64,
    pub message_count: usize,
    terms: BTreeMap<String, TermStats>,
}

impl Vocabulary {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, term: &str) -> bool {
        self.terms.contains_key(term)
    }

    pub fn stats(&self, term: &str) -> Option<TermStats> {
        self.terms.get(term).copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = &str> + '_ {
        self.terms.keys().map(String::as_str)
    }

    pub fn term_set(&self) -> BTreeSet<String> {
        self.terms.keys().cloned().collect()
    }

    /// `ln(N / (1 + df))`, clamped at zero.
    pub fn idf(&self, term: &str) -> Option<f64> {
        let df = self.terms.get(term)?.df;
        Some(idf(self.message_count, df))
    }
}

pub(crate) fn idf(n: usize, df: u32) -> f64 {
    math::ln(n as f64 / (1.0 + df as f64)).max(0.0)
}

/// Builds the vocabulary of one batch from its tokenized messages. A term
/// is kept when the fraction of messages containing it is at least
/// `threshold`.
pub fn build_vocabulary<T: AsRef<str>>(
    batch_index: u64,
    docs: &[Vec<T>],
    threshold: f64,
) -> Result<Vocabulary> {
    if !(0.0..1.0).contains(&threshold) {
        return Err(invalid("vocab_threshold", "must lie in [0, 1)"));
    }
    let mut df: BTreeMap<&str, u32> = BTreeMap::new();
    for doc in docs {
        let distinct: BTreeSet<&str> = doc.iter().map(AsRef::as_ref).collect();
        for t in distinct {
            *df.entry(t).or_default() += 1;
        }
    }
    let n = docs.len();
    let mut terms = BTreeMap::new();
    for (term, count) in df {
        if count as f64 / n as f64 >= threshold {
            let id = terms.len() as u32;
            terms.insert(String::from(term), TermStats { id, df: count });
        }
    }
    Ok(Vocabulary {
        batch_index,
        message_count: n,
        terms,
    })
}

/// The idf-weighted bag of distinct in-vocabulary tokens.
pub fn vectorize<T: AsRef<str>>(tokens: &[T], vocab: &Vocabulary) -> SparseVector {
    let distinct: BTreeSet<&str> = tokens.iter().map(AsRef::as_ref).collect();
    let entries = distinct
        .into_iter()
        .filter_map(|t| vocab.idf(t).map(|w| (String::from(t), w)))
        .filter(|&(_, w)| w > super::sparse::MIN_WEIGHT)
        .collect();
    SparseVector::from_sorted(vocab.batch_index, entries)
}
