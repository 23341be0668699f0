//! Burst detection inside topic pathways.
//!
//! Each indicator compares a segment against the mean of the same quantity
//! over the pathway's previous `W` segments: the volume share of the batch,
//! the average positive sentiment and the magnitude of the average negative
//! sentiment. A weighted sum of the indicators above the threshold flags an
//! event.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::emotion::SentimentScore;
use crate::error::invalid;
use crate::pathways::{PathwayId, TopicPathway, TopicSegment};
use crate::{Error, Result};

/// Tolerance on the weights summing to one.
const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

/// Weights of the volume, positive and negative sentiment indicators, plus
/// any named extra indicators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndicatorWeights {
    pub volume: f64,
    pub positive: f64,
    pub negative: f64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extensions: BTreeMap<String, f64>,
}

impl Default for IndicatorWeights {
    /// Volume counts for less than sentiment: a busy pathway is not an
    /// event by itself.
    fn default() -> Self {
        IndicatorWeights {
            volume: 0.1,
            positive: 0.45,
            negative: 0.45,
            extensions: BTreeMap::new(),
        }
    }
}

impl IndicatorWeights {
    pub fn new(volume: f64, positive: f64, negative: f64) -> Result<Self> {
        let w = IndicatorWeights {
            volume,
            positive,
            negative,
            extensions: BTreeMap::new(),
        };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.volume, self.positive, self.negative]
            .into_iter()
            .chain(self.extensions.values().copied());
        let mut sum = 0.0;
        for w in all {
            if !(0.0..=1.0).contains(&w) {
                return Err(invalid("weights", "every weight must lie in [0, 1]"));
            }
            sum += w;
        }
        if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(invalid("weights", "weights must sum to 1"));
        }
        Ok(())
    }
}

/// Indicator values of one segment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Indicators {
    pub volume: f64,
    pub positive: f64,
    pub negative: f64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extensions: BTreeMap<String, f64>,
}

impl Indicators {
    pub fn new(volume: f64, positive: f64, negative: f64) -> Self {
        Indicators {
            volume,
            positive,
            negative,
            extensions: BTreeMap::new(),
        }
    }
}

/// `current` relative to the mean of the last `window` history values:
/// `current * W / sum(history)`. `None` while fewer than `window` values
/// exist. An all-zero history gives 0 for a zero current value and `cap`
/// otherwise.
pub fn ratio_indicator(history: &[f64], current: f64, window: usize, cap: f64) -> Option<f64> {
    if window == 0 || history.len() < window {
        return None;
    }
    let sum: f64 = history[history.len() - window..].iter().sum();
    if sum == 0.0 {
        return Some(if current == 0.0 { 0.0 } else { cap });
    }
    Some(current * window as f64 / sum)
}

/// Volume indicator over batch shares.
pub fn indicator_volume(history: &[f64], current: f64, window: usize, cap: f64) -> Option<f64> {
    ratio_indicator(history, current, window, cap)
}

/// Sentiment indicator. Values are compared by magnitude, so negative
/// averages can be passed as they are: a more negative segment scores
/// higher.
pub fn indicator_sentiment(history: &[f64], current: f64, window: usize, cap: f64) -> Option<f64> {
    let magnitudes: Vec<f64> = history.iter().map(|x| x.abs()).collect();
    ratio_indicator(&magnitudes, current.abs(), window, cap)
}

/// Weighted sum of the indicators. Extra indicators and extra weights must
/// name the same set.
pub fn event_score(ind: &Indicators, weights: &IndicatorWeights) -> Result<f64> {
    let mut score =
        weights.volume * ind.volume + weights.positive * ind.positive + weights.negative * ind.negative;
    for name in ind.extensions.keys().chain(weights.extensions.keys()) {
        if !(ind.extensions.contains_key(name) && weights.extensions.contains_key(name)) {
            return Err(Error::IndicatorMismatch(name.clone()));
        }
    }
    for (name, value) in &ind.extensions {
        score += weights.extensions[name] * value;
    }
    Ok(score)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Comparison {
    /// Flag when the score exceeds the threshold.
    #[default]
    Strict,
    /// Flag when the score reaches the threshold.
    Inclusive,
}

impl Comparison {
    pub fn flags(self, score: f64, threshold: f64) -> bool {
        match self {
            Comparison::Strict => score > threshold,
            Comparison::Inclusive => score >= threshold,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EventConfig {
    /// Number of previous segments averaged.
    pub window: usize,
    pub weights: IndicatorWeights,
    pub threshold: f64,
    pub comparison: Comparison,
    /// Segments with a smaller batch share are not evaluated.
    pub min_volume_fraction: f64,
    /// Indicator value when the history is all zero.
    pub zero_history_cap: f64,
    /// How many of a segment's most frequent terms count as its frequent
    /// terms.
    pub trigger_terms: usize,
}

impl Default for EventConfig {
    fn default() -> Self {
        EventConfig {
            window: 2,
            weights: IndicatorWeights::default(),
            threshold: 1.0,
            comparison: Comparison::Strict,
            min_volume_fraction: 0.01,
            zero_history_cap: 10.0,
            trigger_terms: 20,
        }
    }
}

impl EventConfig {
    pub fn validate(&self) -> Result<()> {
        if self.window == 0 {
            return Err(invalid("window", "must be at least 1"));
        }
        self.weights.validate()?;
        if !(self.threshold.is_finite() && self.threshold >= 0.0) {
            return Err(invalid("threshold", "must be a non-negative number"));
        }
        if !(0.0..=1.0).contains(&self.min_volume_fraction) {
            return Err(invalid("min_volume_fraction", "must lie in [0, 1]"));
        }
        if !(self.zero_history_cap.is_finite() && self.zero_history_cap > 0.0) {
            return Err(invalid("zero_history_cap", "must be positive"));
        }
        Ok(())
    }
}

/// What event detection needs to remember about a segment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentSummary {
    pub batch_index: u64,
    pub volume_proportion: f64,
    pub avg_pos: f64,
    pub avg_neg: f64,
    /// Most frequent terms, most frequent first.
    pub frequent_terms: Vec<String>,
}

impl SegmentSummary {
    /// Summarizes a segment; a segment without sentiment counts as neutral.
    pub fn of(segment: &TopicSegment, frequent_terms: usize) -> Self {
        SegmentSummary {
            batch_index: segment.batch_index,
            volume_proportion: segment.volume_proportion,
            avg_pos: segment.avg_pos.unwrap_or(SentimentScore::NEUTRAL.positive),
            avg_neg: segment.avg_neg.unwrap_or(SentimentScore::NEUTRAL.negative),
            frequent_terms: segment.top_terms(frequent_terms),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventRecord {
    pub pathway_id: PathwayId,
    pub batch_index: u64,
    pub i_v: f64,
    pub i_ps: f64,
    pub i_ns: f64,
    pub score: f64,
    pub flagged: bool,
    /// Frequent terms that were not frequent in any of the previous
    /// segments.
    pub trigger_terms: Vec<String>,
}

/// Scores `current` against the segments before it. Returns `None` during
/// warm-up (fewer than `window` earlier segments) and for segments below
/// the minimum volume share.
pub fn evaluate(
    pathway_id: PathwayId,
    history: &[SegmentSummary],
    current: &SegmentSummary,
    cfg: &EventConfig,
) -> Option<EventRecord> {
    let w = cfg.window;
    if history.len() < w || current.volume_proportion < cfg.min_volume_fraction {
        return None;
    }
    let recent = &history[history.len() - w..];
    let cap = cfg.zero_history_cap;
    let series = |f: fn(&SegmentSummary) -> f64| recent.iter().map(f).collect::<Vec<f64>>();
    let i_v = indicator_volume(&series(|s| s.volume_proportion), current.volume_proportion, w, cap)?;
    let i_ps = indicator_sentiment(&series(|s| s.avg_pos), current.avg_pos, w, cap)?;
    let i_ns = indicator_sentiment(&series(|s| s.avg_neg), current.avg_neg, w, cap)?;
    let score = event_score(&Indicators::new(i_v, i_ps, i_ns), &cfg.weights).ok()?;
    let seen: BTreeSet<&str> = recent
        .iter()
        .flat_map(|s| s.frequent_terms.iter().map(String::as_str))
        .collect();
    let trigger_terms = current
        .frequent_terms
        .iter()
        .filter(|t| !seen.contains(t.as_str()))
        .cloned()
        .collect();
    Some(EventRecord {
        pathway_id,
        batch_index: current.batch_index,
        i_v,
        i_ps,
        i_ns,
        score,
        flagged: cfg.comparison.flags(score, cfg.threshold),
        trigger_terms,
    })
}

/// Evaluates every segment of every pathway, in pathway then batch order.
pub fn detect(pathways: &[TopicPathway], cfg: &EventConfig) -> Result<Vec<EventRecord>> {
    cfg.validate()?;
    if !cfg.weights.extensions.is_empty() {
        // no extra indicators are computed from segments
        let name = cfg.weights.extensions.keys().next().cloned().unwrap_or_default();
        return Err(Error::IndicatorMismatch(name));
    }
    let mut out = Vec::new();
    for p in pathways {
        let summaries: Vec<SegmentSummary> = p
            .segments
            .iter()
            .map(|s| SegmentSummary::of(s, cfg.trigger_terms))
            .collect();
        for (k, current) in summaries.iter().enumerate() {
            out.extend(evaluate(p.pathway_id, &summaries[..k], current, cfg));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn volume_ratio_examples() {
        assert_eq!(indicator_volume(&[0.1, 0.1], 0.2, 2, 10.0), Some(2.0));
        assert_eq!(indicator_volume(&[0.3, 0.3], 0.3, 2, 10.0), Some(1.0));
        assert_eq!(indicator_volume(&[0.0, 0.0], 0.05, 2, 10.0), Some(10.0));
        assert_eq!(indicator_volume(&[0.0, 0.0], 0.0, 2, 10.0), Some(0.0));
        assert_eq!(indicator_volume(&[0.1], 0.2, 2, 10.0), None);
    }

    #[test]
    fn only_the_last_window_counts() {
        assert_eq!(indicator_volume(&[9.0, 0.1, 0.1], 0.2, 2, 10.0), Some(2.0));
    }

    #[test]
    fn sentiment_ratio_examples() {
        assert_eq!(indicator_sentiment(&[2.0, 2.0], 3.0, 2, 10.0), Some(1.5));
        assert_eq!(indicator_sentiment(&[-1.0, -1.0], -2.0, 2, 10.0), Some(2.0));
    }

    #[test]
    fn score_examples() {
        let w = IndicatorWeights::default();
        let s = event_score(&Indicators::new(2.0, 1.5, 1.0), &w).unwrap();
        assert!((s - 1.325).abs() < 1e-12);
        assert!((event_score(&Indicators::new(1.0, 1.0, 1.0), &w).unwrap() - 1.0).abs() < 1e-12);
        let only_volume = IndicatorWeights::new(1.0, 0.0, 0.0).unwrap();
        assert_eq!(event_score(&Indicators::new(3.5, 9.0, 9.0), &only_volume).unwrap(), 3.5);
    }

    #[test]
    fn weights_must_sum_to_one() {
        assert!(IndicatorWeights::new(0.1, 0.4, 0.4).is_err());
        assert!(IndicatorWeights::new(-0.1, 0.6, 0.5).is_err());
    }

    #[test]
    fn extension_names_must_match() {
        let mut weights = IndicatorWeights {
            negative: 0.35,
            ..IndicatorWeights::default()
        };
        weights.extensions.insert("domain".into(), 0.1);
        weights.validate().unwrap();
        let mut ind = Indicators::new(1.0, 1.0, 1.0);
        let err = event_score(&ind, &weights).unwrap_err();
        assert_eq!(err, Error::IndicatorMismatch("domain".into()));
        ind.extensions.insert("domain".into(), 2.0);
        assert!((event_score(&ind, &weights).unwrap() - 1.1).abs() < 1e-12);
    }

    fn summary(batch: u64, vol: f64, pos: f64, neg: f64, terms: &[&str]) -> SegmentSummary {
        SegmentSummary {
            batch_index: batch,
            volume_proportion: vol,
            avg_pos: pos,
            avg_neg: neg,
            frequent_terms: terms.iter().map(|t| String::from(*t)).collect(),
        }
    }

    #[test]
    fn steady_segments_do_not_flag_under_strict() {
        let h = vec![summary(0, 0.3, 1.5, -1.2, &["a"]), summary(1, 0.3, 1.5, -1.2, &["a"])];
        let cur = summary(2, 0.3, 1.5, -1.2, &["a"]);
        let r = evaluate(PathwayId(0), &h, &cur, &EventConfig::default()).unwrap();
        assert_eq!((r.i_v, r.i_ps, r.i_ns), (1.0, 1.0, 1.0));
        assert!((r.score - 1.0).abs() < 1e-12);
        assert!(!r.flagged);
        let inclusive = EventConfig { comparison: Comparison::Inclusive, ..EventConfig::default() };
        let r = evaluate(PathwayId(0), &h, &cur, &inclusive).unwrap();
        assert_eq!(r.flagged, r.score >= 1.0);
    }

    #[test]
    fn warm_up_and_small_segments_are_skipped() {
        let cfg = EventConfig::default();
        let h = [summary(0, 0.3, 1.0, -1.0, &[])];
        assert!(evaluate(PathwayId(0), &h, &summary(1, 0.9, 1.0, -1.0, &[]), &cfg).is_none());
        let h = [summary(0, 0.3, 1.0, -1.0, &[]), summary(1, 0.3, 1.0, -1.0, &[])];
        assert!(evaluate(PathwayId(0), &h, &summary(2, 0.009, 4.0, -4.0, &[]), &cfg).is_none());
    }

    #[test]
    fn burst_flags_with_new_terms() {
        let h = [
            summary(0, 0.25, 1.0, -1.0, &["game", "score"]),
            summary(1, 0.25, 1.0, -1.0, &["game", "team"]),
        ];
        let cur = summary(2, 0.5, 1.0, -1.9, &["game", "injury", "team"]);
        let r = evaluate(PathwayId(3), &h, &cur, &EventConfig::default()).unwrap();
        assert_eq!(r.i_v, 2.0);
        assert!((r.i_ns - 1.9).abs() < 1e-12);
        assert!(r.flagged);
        assert_eq!(r.trigger_terms, ["injury"]);
    }
}
