use alloc::vec::Vec;
use core::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{EmotionVector, CATEGORY_COUNT};
use crate::error::invalid;
use crate::Result;

/// One interval of an emotion timeline. `mean` is `None` when no post fell
/// in the interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimelineBin {
    pub start: i64,
    pub posts: usize,
    pub mean: Option<[f64; CATEGORY_COUNT]>,
}

fn lexicographic(a: &[f64; CATEGORY_COUNT], b: &[f64; CATEGORY_COUNT]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Averages emotion vectors per fixed-width interval, from the interval of
/// the earliest post to that of the latest. Members are summed in a
/// canonical order, so the result does not depend on input order.
pub fn emotion_timeline(
    posts: &[(i64, EmotionVector)],
    interval: i64,
    origin: i64,
) -> Result<Vec<TimelineBin>> {
    if interval <= 0 {
        return Err(invalid("interval", "must be positive"));
    }
    let bin_of = |t: i64| (t - origin).div_euclid(interval);
    let Some(first) = posts.iter().map(|p| bin_of(p.0)).min() else {
        return Ok(Vec::new());
    };
    let last = posts.iter().map(|p| bin_of(p.0)).max().unwrap_or(first);
    let mut members: Vec<Vec<[f64; CATEGORY_COUNT]>> = (first..=last).map(|_| Vec::new()).collect();
    for (t, ev) in posts {
        members[(bin_of(*t) - first) as usize].push(ev.values);
    }
    let bins = members
        .into_iter()
        .enumerate()
        .map(|(i, mut vs)| {
            let start = origin + (first + i as i64) * interval;
            if vs.is_empty() {
                return TimelineBin { start, posts: 0, mean: None };
            }
            vs.sort_by(lexicographic);
            let n = vs.len() as f64;
            let mut mean = [0.0; CATEGORY_COUNT];
            for c in 0..CATEGORY_COUNT {
                let sum: f64 = vs.iter().map(|v| v[c]).sum();
                let lo = vs.iter().map(|v| v[c]).fold(f64::INFINITY, f64::min);
                let hi = vs.iter().map(|v| v[c]).fold(f64::NEG_INFINITY, f64::max);
                mean[c] = (sum / n).clamp(lo, hi);
            }
            TimelineBin { start, posts: vs.len(), mean: Some(mean) }
        })
        .collect();
    Ok(bins)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(happy: f64, sad: f64) -> EmotionVector {
        let mut e = EmotionVector::ZERO;
        e.values[0] = happy;
        e.values[8] = sad;
        e.token_count = 1;
        e
    }

    #[test]
    fn two_posts_are_averaged_and_gaps_marked() {
        let posts = [(0, ev(0.2, 0.0)), (30, ev(0.4, 1.0)), (250, ev(0.1, 0.1))];
        let bins = emotion_timeline(&posts, 100, 0).unwrap();
        assert_eq!(bins.len(), 3);
        let m = bins[0].mean.unwrap();
        assert!((m[0] - 0.3).abs() < 1e-15);
        assert_eq!(m[8], 0.5);
        assert_eq!(bins[1], TimelineBin { start: 100, posts: 0, mean: None });
        assert_eq!(bins[2].mean.unwrap(), ev(0.1, 0.1).values);
    }

    #[test]
    fn bins_before_origin_use_floor() {
        let bins = emotion_timeline(&[(-1, ev(1.0, 0.0))], 10, 0).unwrap();
        assert_eq!(bins[0].start, -10);
    }

    #[test]
    fn empty_and_invalid() {
        assert!(emotion_timeline(&[], 10, 0).unwrap().is_empty());
        assert!(emotion_timeline(&[], 0, 0).is_err());
    }
}
