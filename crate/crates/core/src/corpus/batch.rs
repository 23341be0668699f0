use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::text::normalized_text;
use crate::error::invalid;
use crate::{Error, Result};

/// A timestamped short text. Timestamps are seconds since the Unix epoch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Message {
    pub id: String,
    pub text: String,
    pub timestamp: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub author: Option<String>,
}

impl Message {
    pub fn new(id: impl Into<String>, text: impl Into<String>, timestamp: i64) -> Self {
        Message {
            id: id.into(),
            text: text.into(),
            timestamp,
            author: None,
        }
    }

    pub fn with_author(mut self, author: impl Into<String>) -> Self {
        self.author = Some(author.into());
        self
    }
}

/// The messages of one interval `[start, end)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Batch {
    pub index: u64,
    pub start: i64,
    pub end: i64,
    pub messages: Vec<Message>,
}

impl Batch {
    pub fn len(&self) -> usize {
        self.messages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.messages.is_empty()
    }
}

/// Removes messages whose normalized text repeats an earlier message of the
/// same batch. First occurrences are kept in order.
pub fn dedupe(mut batch: Batch) -> Batch {
    let mut seen = BTreeSet::new();
    batch
        .messages
        .retain(|m| seen.insert(normalized_text(&m.text)));
    batch
}

/// Splits a time-ordered message stream into fixed-width batches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Partitioner {
    /// Batch width in seconds.
    pub interval: i64,
    pub origin: i64,
    /// Index of the first batch emitted; earlier windows are closed.
    pub first_index: u64,
    /// How far (seconds) a timestamp may fall behind the latest one seen.
    pub slack: i64,
}

impl Partitioner {
    pub fn new(interval: i64, origin: i64) -> Self {
        Partitioner {
            interval,
            origin,
            first_index: 0,
            slack: 0,
        }
    }

    pub fn window_start(&self, index: u64) -> i64 {
        self.origin + index as i64 * self.interval
    }

    /// Batch index holding `timestamp`, or `None` before the origin.
    pub fn index_of(&self, timestamp: i64) -> Option<u64> {
        let offset = timestamp.checked_sub(self.origin)?;
        (offset >= 0).then(|| (offset / self.interval) as u64)
    }

    /// Every batch from `first_index` through the batch of the latest
    /// message, empty ones included.
    pub fn split(&self, messages: Vec<Message>) -> Result<Vec<Batch>> {
        if self.interval <= 0 {
            return Err(invalid("interval", "batch interval must be positive"));
        }
        if self.slack < 0 {
            return Err(invalid("slack", "out-of-order slack must be non-negative"));
        }
        let mut batches: Vec<Batch> = Vec::new();
        let mut latest = i64::MIN;
        let open = self.window_start(self.first_index);
        for m in messages {
            if m.timestamp < latest.saturating_sub(self.slack) {
                return Err(Error::OutOfOrder {
                    id: m.id,
                    timestamp: m.timestamp,
                    latest,
                });
            }
            latest = latest.max(m.timestamp);
            let index = match self.index_of(m.timestamp) {
                Some(i) if i >= self.first_index => i,
                _ => {
                    return Err(Error::BeforeWindow {
                        id: m.id,
                        timestamp: m.timestamp,
                        window_start: open,
                    })
                }
            };
            let slot = (index - self.first_index) as usize;
            while batches.len() <= slot {
                let i = self.first_index + batches.len() as u64;
                batches.push(Batch {
                    index: i,
                    start: self.window_start(i),
                    end: self.window_start(i + 1),
                    messages: Vec::new(),
                });
            }
            batches[slot].messages.push(m);
        }
        Ok(batches)
    }
}

/// Partitions `messages` into batches of width `interval` seconds starting
/// at `origin`, with no out-of-order slack.
pub fn partition(messages: Vec<Message>, interval: i64, origin: i64) -> Result<Vec<Batch>> {
    Partitioner::new(interval, origin).split(messages)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    const DAY: i64 = 86_400;
    const WEEK: i64 = 7 * DAY;

    fn msg(id: &str, t: i64) -> Message {
        Message::new(id, id, t)
    }

    fn ids(b: &Batch) -> Vec<&str> {
        b.messages.iter().map(|m| m.id.as_str()).collect()
    }

    #[test]
    fn weekly_batches() {
        let batches = partition(vec![msg("m0", 0), msg("m1", 8 * DAY)], WEEK, 0).unwrap();
        assert_eq!(batches.len(), 2);
        assert_eq!(ids(&batches[0]), ["m0"]);
        assert_eq!(ids(&batches[1]), ["m1"]);
        assert_eq!((batches[1].start, batches[1].end), (WEEK, 2 * WEEK));
    }

    #[test]
    fn single_interval_gives_one_batch() {
        let batches = partition(vec![msg("a", 1), msg("b", 2), msg("c", 3)], WEEK, 0).unwrap();
        assert_eq!(batches.len(), 1);
        assert_eq!(batches[0].len(), 3);
    }

    #[test]
    fn empty_intervals_are_kept() {
        let batches = partition(vec![msg("m0", 0), msg("m1", 15 * DAY)], WEEK, 0).unwrap();
        assert_eq!(batches.iter().map(Batch::len).collect::<Vec<_>>(), [1, 0, 1]);
        assert_eq!(batches[1].index, 1);
    }

    #[test]
    fn out_of_order_is_fatal_without_slack() {
        let err = partition(vec![msg("a", 10), msg("b", 5)], WEEK, 0).unwrap_err();
        assert!(matches!(err, Error::OutOfOrder { .. }));
        let p = Partitioner {
            slack: 5,
            ..Partitioner::new(WEEK, 0)
        };
        assert_eq!(p.split(vec![msg("a", 10), msg("b", 5)]).unwrap()[0].len(), 2);
    }

    #[test]
    fn messages_before_the_open_window_are_rejected() {
        let p = Partitioner {
            first_index: 2,
            ..Partitioner::new(WEEK, 0)
        };
        assert!(matches!(
            p.split(vec![msg("a", WEEK)]),
            Err(Error::BeforeWindow { .. })
        ));
        let resumed = p.split(vec![msg("b", 3 * WEEK + 1)]).unwrap();
        assert_eq!(resumed.iter().map(|b| b.index).collect::<Vec<_>>(), [2, 3]);
    }

    #[test]
    fn dedupe_keeps_first_occurrence() {
        let batch = |texts: &[&str]| Batch {
            index: 0,
            start: 0,
            end: 1,
            messages: texts
                .iter()
                .enumerate()
                .map(|(i, t)| Message::new(alloc::format!("{i}"), *t, 0))
                .collect(),
        };
        let texts = |b: &Batch| b.messages.iter().map(|m| m.text.clone()).collect::<Vec<_>>();
        assert_eq!(texts(&dedupe(batch(&["a", "a", "b"]))), ["a", "b"]);
        assert_eq!(texts(&dedupe(batch(&["a", "A "]))), ["a"]);
        assert_eq!(texts(&dedupe(batch(&["a", "b", "c"]))), ["a", "b", "c"]);
    }
}
