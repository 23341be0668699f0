//! Topic coherence by document co-occurrence.
//!
//! For the top terms `v1..vM` of a topic,
//! `C = sum over m >= 2, l < m of ln((D(vm, vl) + 1) / D(vl))`, where `D(v)`
//! counts documents containing `v` and `D(vm, vl)` documents containing
//! both. Values closer to zero mean the terms travel together.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::math::ln;
use crate::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CoherenceInput {
    /// Ordered by descending topic frequency.
    pub top_terms: Vec<String>,
    pub doc_freq: BTreeMap<String, u32>,
    /// Keyed by the pair in lexicographic order.
    pub co_doc_freq: BTreeMap<(String, String), u32>,
}

impl CoherenceInput {
    pub fn df(&self, term: &str) -> u32 {
        self.doc_freq.get(term).copied().unwrap_or(0)
    }

    pub fn co_df(&self, a: &str, b: &str) -> u32 {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.co_doc_freq
            .get(&(String::from(key.0), String::from(key.1)))
            .copied()
            .unwrap_or(0)
    }
}

pub fn coherence(input: &CoherenceInput) -> Result<f64> {
    let v = &input.top_terms;
    let mut total = 0.0;
    for m in 1..v.len() {
        for l in 0..m {
            let d = input.df(&v[l]);
            if d == 0 {
                return Err(Error::MissingDocumentFrequency(v[l].clone()));
            }
            let co = input.co_df(&v[m], &v[l]);
            total += ln((co as f64 + 1.0) / d as f64);
        }
    }
    Ok(total)
}

/// Counts, over distinct terms per document, how many documents contain
/// each of `terms` and each pair of them.
pub fn collect_frequencies<D, S>(docs: &[D], terms: &[String]) -> CoherenceInput
where
    D: AsRef<[S]>,
    S: AsRef<str>,
{
    let wanted: BTreeSet<&str> = terms.iter().map(String::as_str).collect();
    let mut doc_freq: BTreeMap<String, u32> = terms.iter().map(|t| (t.clone(), 0)).collect();
    let mut co_doc_freq: BTreeMap<(String, String), u32> = BTreeMap::new();
    for doc in docs {
        let present: BTreeSet<&str> = doc
            .as_ref()
            .iter()
            .map(AsRef::as_ref)
            .filter(|t| wanted.contains(t))
            .collect();
        let present: Vec<&str> = present.into_iter().collect();
        for (i, a) in present.iter().enumerate() {
            *doc_freq.entry(String::from(*a)).or_default() += 1;
            for b in &present[i + 1..] {
                *co_doc_freq
                    .entry((String::from(*a), String::from(*b)))
                    .or_default() += 1;
            }
        }
    }
    CoherenceInput {
        top_terms: terms.to_vec(),
        doc_freq,
        co_doc_freq,
    }
}

/// The `m` most frequent tokens over `docs` (raw counts, ties
/// alphabetical).
pub fn top_terms<D: AsRef<[S]>, S: AsRef<str>>(docs: &[D], m: usize) -> Vec<String> {
    let mut freqs: BTreeMap<String, u32> = BTreeMap::new();
    for doc in docs {
        for t in doc.as_ref() {
            *freqs.entry(String::from(t.as_ref())).or_default() += 1;
        }
    }
    crate::pathways::top_terms(&freqs, m)
}

/// Coherence of the `m` most frequent terms of `docs`, with document
/// frequencies counted over `reference` (often `docs` itself).
pub fn topic_coherence<D, S, E, R>(docs: &[D], reference: &[E], m: usize) -> Result<f64>
where
    D: AsRef<[S]>,
    S: AsRef<str>,
    E: AsRef<[R]>,
    R: AsRef<str>,
{
    let terms = top_terms(docs, m);
    coherence(&collect_frequencies(reference, &terms))
}
