use alloc::collections::BTreeSet;
use alloc::string::String;
use core::cmp::Ordering;

use crate::corpus::{SparseVector, Vocabulary};
use crate::math;

/// A set of terms a vector was built over.
pub trait TermUniverse {
    fn has(&self, term: &str) -> bool;
}

impl TermUniverse for BTreeSet<String> {
    fn has(&self, term: &str) -> bool {
        self.contains(term)
    }
}

impl TermUniverse for Vocabulary {
    fn has(&self, term: &str) -> bool {
        self.contains(term)
    }
}

/// The universe that contains every term.
#[derive(Debug, Clone, Copy, Default)]
pub struct AnyTerm;

impl TermUniverse for AnyTerm {
    fn has(&self, _: &str) -> bool {
        true
    }
}

/// Cosine similarity of two vectors built over different vocabularies.
///
/// Both vectors are first restricted to the terms the two vocabularies
/// share; norms and the dot product are taken over that restricted set.
/// Returns 0 when the restriction leaves either vector empty.
pub fn similarity(
    a: &SparseVector,
    a_vocab: &(impl TermUniverse + ?Sized),
    b: &SparseVector,
    b_vocab: &(impl TermUniverse + ?Sized),
) -> f64 {
    let shared = |t: &str| a_vocab.has(t) && b_vocab.has(t);
    let (mut ia, mut ib) = (a.iter().peekable(), b.iter().peekable());
    let (mut dot, mut na, mut nb) = (0.0, 0.0, 0.0);
    loop {
        let ord = match (ia.peek(), ib.peek()) {
            (None, None) => break,
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (Some(x), Some(y)) => x.0.cmp(y.0),
        };
        match ord {
            Ordering::Less => {
                let (t, w) = ia.next().unwrap();
                if shared(t) {
                    na += w * w;
                }
            }
            Ordering::Greater => {
                let (t, w) = ib.next().unwrap();
                if shared(t) {
                    nb += w * w;
                }
            }
            Ordering::Equal => {
                let (t, wa) = ia.next().unwrap();
                let (_, wb) = ib.next().unwrap();
                if shared(t) {
                    na += wa * wa;
                    nb += wb * wb;
                    dot += wa * wb;
                }
            }
        }
    }
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    dot / (math::sqrt(na) * math::sqrt(nb))
}
