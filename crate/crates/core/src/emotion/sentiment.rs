use serde::{Deserialize, Serialize};

use super::EmotionVector;
use crate::error::invalid;
use crate::Result;

pub const DEFAULT_SENTIMENT_SCALE: f64 = 10.0;

/// Positive strength in `[1, 4]` and negative strength in `[-4, -1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SentimentScore {
    pub positive: f64,
    pub negative: f64,
}

impl SentimentScore {
    pub const NEUTRAL: SentimentScore = SentimentScore {
        positive: 1.0,
        negative: -1.0,
    };
}

impl Default for SentimentScore {
    fn default() -> Self {
        Self::NEUTRAL
    }
}

/// Maps summed positive and negative intensities linearly onto the
/// sentiment scales, saturating once `scale * total` reaches 1.
pub fn sentiment_of(ev: &EmotionVector, scale: f64) -> Result<SentimentScore> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(invalid("sentiment_scale", "must be positive and finite"));
    }
    let p = (scale * ev.positive_total()).min(1.0);
    let n = (scale * ev.negative_total()).min(1.0);
    Ok(SentimentScore {
        positive: 1.0 + 3.0 * p,
        negative: -(1.0 + 3.0 * n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emotion::Category;

    #[test]
    fn zero_vector_is_neutral() {
        let s = sentiment_of(&EmotionVector::ZERO, 10.0).unwrap();
        assert_eq!(s, SentimentScore::NEUTRAL);
    }

    #[test]
    fn linear_then_saturated() {
        let mut ev = EmotionVector::ZERO;
        ev.values[Category::Happy.index()] = 0.05;
        assert_eq!(sentiment_of(&ev, 10.0).unwrap().positive, 2.5);
        ev.values[Category::Sad.index()] = 0.3;
        let s = sentiment_of(&ev, 10.0).unwrap();
        assert_eq!(s.negative, -4.0);
    }

    #[test]
    fn scale_must_be_positive() {
        assert!(sentiment_of(&EmotionVector::ZERO, 0.0).is_err());
        assert!(sentiment_of(&EmotionVector::ZERO, f64::NAN).is_err());
    }
}
