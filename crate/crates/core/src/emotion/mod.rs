//! Sixteen-category emotion intensities.
//!
//! A post is scored by counting lexicon hits per category over its tokens,
//! with an intensity modifier ("very", "not", "kind of") directly before an
//! emotion term adjusting that term's contribution, and dividing by the
//! number of units in the post.

mod expand;
mod lexicon;
mod score;
mod sentiment;
mod timeline;

use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::Error;

pub use expand::{expand_lexicon, Candidate, EmbeddingTable, Expansion};
pub use lexicon::{CategorySet, EmotionLexicon, ModifierLexicon, MAX_PHRASE_TOKENS};
pub use score::{merge_units, score_post, EmotionVector};
pub use sentiment::{sentiment_of, SentimentScore, DEFAULT_SENTIMENT_SCALE};
pub use timeline::{emotion_timeline, TimelineBin};

/// The emotion categories, positive ones first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Category {
    Happy,
    Good,
    Alive,
    Love,
    Positive,
    Open,
    Interested,
    Strong,
    Sad,
    Afraid,
    Hurt,
    Angry,
    Depressed,
    Helpless,
    Confused,
    Indifferent,
}

pub const CATEGORY_COUNT: usize = 16;

impl Category {
    pub const ALL: [Category; CATEGORY_COUNT] = [
        Category::Happy,
        Category::Good,
        Category::Alive,
        Category::Love,
        Category::Positive,
        Category::Open,
        Category::Interested,
        Category::Strong,
        Category::Sad,
        Category::Afraid,
        Category::Hurt,
        Category::Angry,
        Category::Depressed,
        Category::Helpless,
        Category::Confused,
        Category::Indifferent,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Category> {
        Category::ALL.get(i).copied()
    }

    pub fn is_positive(self) -> bool {
        self.index() < 8
    }

    pub fn name(self) -> &'static str {
        match self {
            Category::Happy => "Happy",
            Category::Good => "Good",
            Category::Alive => "Alive",
            Category::Love => "Love",
            Category::Positive => "Positive",
            Category::Open => "Open",
            Category::Interested => "Interested",
            Category::Strong => "Strong",
            Category::Sad => "Sad",
            Category::Afraid => "Afraid",
            Category::Hurt => "Hurt",
            Category::Angry => "Angry",
            Category::Depressed => "Depressed",
            Category::Helpless => "Helpless",
            Category::Confused => "Confused",
            Category::Indifferent => "Indifferent",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Category {
    type Err = Error;

    /// Case-insensitive category name.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        Category::ALL
            .iter()
            .copied()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownCategory(s.into()))
    }
}
