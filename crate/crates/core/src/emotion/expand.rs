use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Category, EmotionLexicon};
use crate::math::sqrt;
use crate::{Error, Result};

/// Pre-trained dense word vectors, all of one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable {
    dim: usize,
    vectors: BTreeMap<String, (Vec<f64>, f64)>,
}

impl EmbeddingTable {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(crate::error::invalid("dim", "must be positive"));
        }
        Ok(Self { dim, vectors: BTreeMap::new() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn insert(&mut self, term: &str, vector: Vec<f64>) -> Result<()> {
        if vector.len() != self.dim {
            return Err(Error::DimensionMismatch {
                term: String::from(term),
                expected: self.dim,
                found: vector.len(),
            });
        }
        let norm = sqrt(vector.iter().map(|x| x * x).sum());
        self.vectors.insert(String::from(term), (vector, norm));
        Ok(())
    }

    pub fn get(&self, term: &str) -> Option<&[f64]> {
        self.vectors.get(term).map(|(v, _)| v.as_slice())
    }

    pub fn contains(&self, term: &str) -> bool {
        self.vectors.contains_key(term)
    }

    /// Cosine of two stored terms, `None` if either is missing.
    pub fn cosine(&self, a: &str, b: &str) -> Option<f64> {
        let (va, na) = self.vectors.get(a)?;
        let (vb, nb) = self.vectors.get(b)?;
        Some(dense_cosine(va, *na, vb, *nb))
    }

    /// Up to `k` terms most similar to `term` with cosine at least
    /// `min_sim`, best first (ties alphabetical), skipping `term` itself and
    /// anything `exclude` rejects.
    pub fn nearest(
        &self,
        term: &str,
        k: usize,
        min_sim: f64,
        exclude: impl Fn(&str) -> bool,
    ) -> Vec<(String, f64)> {
        let Some((v, n)) = self.vectors.get(term) else {
            return Vec::new();
        };
        if k == 0 {
            return Vec::new();
        }
        let mut scored: Vec<(&String, f64)> = self
            .vectors
            .iter()
            .filter(|(t, _)| t.as_str() != term && !exclude(t))
            .map(|(t, (u, m))| (t, dense_cosine(v, *n, u, *m)))
            .filter(|&(_, s)| s >= min_sim)
            .collect();
        scored.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
        scored.truncate(k);
        scored.into_iter().map(|(t, s)| (t.clone(), s)).collect()
    }
}

fn dense_cosine(a: &[f64], na: f64, b: &[f64], nb: f64) -> f64 {
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    dot / (na * nb)
}

/// A term proposed for a category because it sits close to `seed`.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub category: Category,
    pub term: String,
    pub seed: String,
    pub cosine: f64,
}

/// Proposals for manual review, plus the seeds that had no embedding.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Expansion {
    pub candidates: Vec<Candidate>,
    pub skipped: Vec<(Category, String)>,
}

/// Looks up the `k` nearest neighbours of every seed. Terms already in the
/// lexicon are never proposed. Multi-word seeds are looked up with their
/// words joined by `_`, the usual embedding convention for phrases.
pub fn expand_lexicon(
    seeds: &[(Category, String)],
    emb: &EmbeddingTable,
    k: usize,
    min_sim: f64,
    lexicon: &EmotionLexicon,
) -> Expansion {
    let in_lexicon = |t: &str| lexicon.contains(t) || lexicon.contains(&t.replace('_', " "));
    let mut out = Expansion::default();
    for (category, seed) in seeds {
        let key = seed.split_whitespace().collect::<Vec<_>>().join("_");
        if !emb.contains(&key) {
            out.skipped.push((*category, seed.clone()));
            continue;
        }
        for (term, cosine) in emb.nearest(&key, k, min_sim, in_lexicon) {
            out.candidates.push(Candidate {
                category: *category,
                term: term.replace('_', " "),
                seed: seed.clone(),
                cosine,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn toy() -> EmbeddingTable {
        let mut e = EmbeddingTable::new(3).unwrap();
        e.insert("sad", vec![1.0, 0.0, 0.0]).unwrap();
        // cos(sad, tearful) = 0.9
        e.insert("tearful", vec![0.9, 0.435_889_894_354_067_4, 0.0]).unwrap();
        e.insert("table", vec![0.0, 0.0, 1.0]).unwrap();
        e.insert("gloomy", vec![0.8, 0.6, 0.0]).unwrap();
        e
    }

    fn seeds(terms: &[&str]) -> Vec<(Category, String)> {
        terms.iter().map(|t| (Category::Sad, String::from(*t))).collect()
    }

    #[test]
    fn near_terms_are_proposed() {
        let mut lex = EmotionLexicon::new();
        lex.insert("sad", Category::Sad).unwrap();
        let x = expand_lexicon(&seeds(&["sad"]), &toy(), 5, 0.5, &lex);
        let terms: Vec<&str> = x.candidates.iter().map(|c| c.term.as_str()).collect();
        assert_eq!(terms, ["tearful", "gloomy"]);
        assert!((x.candidates[0].cosine - 0.9).abs() < 1e-12);
        assert!(x.skipped.is_empty());
    }

    #[test]
    fn lexicon_terms_are_excluded() {
        let mut lex = EmotionLexicon::new();
        lex.insert("tearful", Category::Sad).unwrap();
        let x = expand_lexicon(&seeds(&["sad"]), &toy(), 5, 0.5, &lex);
        assert!(x.candidates.iter().all(|c| c.term != "tearful"));
    }

    #[test]
    fn k_zero_and_missing_seeds() {
        let lex = EmotionLexicon::new();
        assert!(expand_lexicon(&seeds(&["sad"]), &toy(), 0, 0.5, &lex).candidates.is_empty());
        let x = expand_lexicon(&seeds(&["weepy"]), &toy(), 5, 0.5, &lex);
        assert!(x.candidates.is_empty());
        assert_eq!(x.skipped, seeds(&["weepy"]));
    }

    #[test]
    fn dimension_is_enforced() {
        let mut e = EmbeddingTable::new(3).unwrap();
        assert!(matches!(e.insert("x", vec![1.0]), Err(Error::DimensionMismatch { .. })));
    }
}
