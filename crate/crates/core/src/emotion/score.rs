use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::lexicon::{EmotionLexicon, ModifierLexicon, MAX_PHRASE_TOKENS};
use super::{Category, CATEGORY_COUNT};

/// Per-category intensities of one post plus the number of units they were
/// normalized by.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmotionVector {
    pub values: [f64; CATEGORY_COUNT],
    pub token_count: usize,
}

impl Default for EmotionVector {
    fn default() -> Self {
        Self::ZERO
    }
}

impl EmotionVector {
    pub const ZERO: EmotionVector = EmotionVector {
        values: [0.0; CATEGORY_COUNT],
        token_count: 0,
    };

    pub fn get(&self, c: Category) -> f64 {
        self.values[c.index()]
    }

    /// Sum over the eight positive categories.
    pub fn positive_total(&self) -> f64 {
        self.values[..8].iter().sum()
    }

    /// Sum over the eight negative categories.
    pub fn negative_total(&self) -> f64 {
        self.values[8..].iter().sum()
    }
}

/// Splits tokens into units, greedily merging the longest run (up to three
/// tokens) that is an emotion or modifier phrase.
pub fn merge_units<S: AsRef<str>>(
    tokens: &[S],
    lex: &EmotionLexicon,
    mods: &ModifierLexicon,
) -> Vec<String> {
    let mut units = Vec::with_capacity(tokens.len());
    let mut i = 0;
    while i < tokens.len() {
        let mut taken = 1;
        let mut unit = String::from(tokens[i].as_ref());
        for n in (2..=MAX_PHRASE_TOKENS.min(tokens.len() - i)).rev() {
            let phrase = tokens[i..i + n]
                .iter()
                .map(AsRef::as_ref)
                .collect::<Vec<&str>>()
                .join(" ");
            if lex.contains(&phrase) || mods.contains(&phrase) {
                unit = phrase;
                taken = n;
                break;
            }
        }
        units.push(unit);
        i += taken;
    }
    units
}

/// Scores a post. Each emotion unit adds `1 + w` to every category it
/// belongs to, where `w` is the weight of an immediately preceding modifier
/// (0 if none), floored at 0. Totals are divided by the unit count.
pub fn score_post<S: AsRef<str>>(
    tokens: &[S],
    lex: &EmotionLexicon,
    mods: &ModifierLexicon,
) -> EmotionVector {
    let units = merge_units(tokens, lex, mods);
    if units.is_empty() {
        return EmotionVector::ZERO;
    }
    let mut values = [0.0; CATEGORY_COUNT];
    for (k, unit) in units.iter().enumerate() {
        let cats = lex.categories(unit);
        if cats.is_empty() {
            continue;
        }
        let boost = match k {
            0 => 0.0,
            _ => mods.get(&units[k - 1]).unwrap_or(0.0),
        };
        let contribution = (1.0 + boost).max(0.0);
        for c in cats.iter() {
            values[c.index()] += contribution;
        }
    }
    let n = units.len() as f64;
    for v in &mut values {
        *v /= n;
    }
    EmotionVector {
        values,
        token_count: units.len(),
    }
}
