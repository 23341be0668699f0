use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::Category;
use crate::{Error, Result};

/// Lexicon phrases span at most this many tokens.
pub const MAX_PHRASE_TOKENS: usize = 3;

/// A set of categories packed in a bit mask.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CategorySet(u16);

impl CategorySet {
    pub const EMPTY: CategorySet = CategorySet(0);

    pub fn contains(self, c: Category) -> bool {
        self.0 & (1 << c.index()) != 0
    }

    pub fn insert(&mut self, c: Category) {
        self.0 |= 1 << c.index();
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Category> {
        Category::ALL.into_iter().filter(move |c| self.contains(*c))
    }
}

/// Lowercases and re-joins a term with single spaces, checking its length.
fn normalize_term(term: &str) -> Result<String> {
    let tokens: Vec<String> = term.split_whitespace().map(str::to_lowercase).collect();
    if tokens.is_empty() {
        return Err(Error::EmptyTerm);
    }
    if tokens.len() > MAX_PHRASE_TOKENS {
        return Err(Error::PhraseTooLong(String::from(term)));
    }
    Ok(tokens.join(" "))
}

/// Emotion terms (words or phrases of up to three tokens) and the
/// categories each one signals. A term may belong to several categories.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EmotionLexicon {
    terms: BTreeMap<String, CategorySet>,
}

impl EmotionLexicon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `term` to `category`; repeating a pair is harmless.
    pub fn insert(&mut self, term: &str, category: Category) -> Result<()> {
        let key = normalize_term(term)?;
        self.terms.entry(key).or_default().insert(category);
        Ok(())
    }

    /// Categories of a unit (a token or a space-joined phrase).
    pub fn categories(&self, unit: &str) -> CategorySet {
        self.terms.get(unit).copied().unwrap_or(CategorySet::EMPTY)
    }

    pub fn contains(&self, unit: &str) -> bool {
        self.terms.contains_key(unit)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, CategorySet)> + '_ {
        self.terms.iter().map(|(t, c)| (t.as_str(), *c))
    }

    /// Terms listed under `category`.
    pub fn terms_of(&self, category: Category) -> impl Iterator<Item = &str> + '_ {
        self.iter()
            .filter(move |(_, c)| c.contains(category))
            .map(|(t, _)| t)
    }
}

/// Boosters and negators with their additive weight in `[-1, 1]`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ModifierLexicon {
    weights: BTreeMap<String, f64>,
}

impl ModifierLexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, term: &str, weight: f64) -> Result<()> {
        if !(-1.0..=1.0).contains(&weight) {
            return Err(Error::ModifierOutOfRange {
                term: String::from(term),
                weight,
            });
        }
        let key = normalize_term(term)?;
        self.weights.insert(key, weight);
        Ok(())
    }

    pub fn get(&self, unit: &str) -> Option<f64> {
        self.weights.get(unit).copied()
    }

    pub fn contains(&self, unit: &str) -> bool {
        self.weights.contains_key(unit)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> + '_ {
        self.weights.iter().map(|(t, w)| (t.as_str(), *w))
    }
}
