//! Planted-topic message streams shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use pathweave_core::Message;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const ORIGIN: i64 = 1_420_070_400; // 2015-01-01T00:00:00Z
pub const INTERVAL: i64 = 3_600;
pub const BATCHES: u64 = 12;
pub const PER_BATCH: usize = 300;

/// Batch in which the fourth topic appears.
pub const NEW_TOPIC_BATCH: u64 = 6;
/// Batch in which the first topic triples and turns negative.
pub const BURST_BATCH: u64 = 9;

pub const TOPICS: [[&str; 10]; 4] = [
    [
        "striker", "goalkeeper", "penalty", "stadium", "referee", "midfield", "transfer", "league",
        "kickoff", "derby",
    ],
    [
        "rainfall", "thunder", "forecast", "humidity", "drizzle", "monsoon", "barometer",
        "hailstorm", "lightning", "floodwater",
    ],
    [
        "ballot", "senator", "campaign", "polling", "candidate", "caucus", "voters", "debate",
        "manifesto", "incumbent",
    ],
    [
        "vaccine", "epidemic", "quarantine", "pathogen", "symptoms", "hospital", "outbreak",
        "antibody", "contagion", "clinic",
    ],
];

const FILLER: [&str; 24] = [
    "coffee", "laptop", "garden", "bicycle", "kitchen", "pencil", "mirror", "ladder", "blanket",
    "teapot", "carpet", "wallet", "lantern", "violin", "compass", "saddle", "kettle", "marble",
    "ribbon", "anchor", "basket", "chimney", "feather", "helmet",
];

const GLUE: [&str; 8] = ["the", "and", "is", "of", "at", "this", "with", "for"];

/// Negative lexicon words carried by part of the burst.
pub const NEGATIVE: [&str; 8] = [
    "sad", "afraid", "angry", "hurt", "miserable", "terrified", "upset", "lonely",
];

const CORE_TOKENS: usize = 6;
const NOISE_RATE: f64 = 0.05;
const NEGATIVE_SHARE: f64 = 0.3;

pub struct Stream {
    pub messages: Vec<Message>,
    /// Planted topic (0-based) of every message id.
    pub labels: BTreeMap<String, usize>,
}

impl Stream {
    pub fn batch(&self, index: u64) -> Vec<Message> {
        let start = ORIGIN + index as i64 * INTERVAL;
        self.messages
            .iter()
            .filter(|m| m.timestamp >= start && m.timestamp < start + INTERVAL)
            .cloned()
            .collect()
    }

    /// Messages of batches `[from, to)`.
    pub fn range(&self, from: u64, to: u64) -> Vec<Message> {
        let (a, b) = (ORIGIN + from as i64 * INTERVAL, ORIGIN + to as i64 * INTERVAL);
        self.messages
            .iter()
            .filter(|m| m.timestamp >= a && m.timestamp < b)
            .cloned()
            .collect()
    }
}

/// Messages per topic in a batch.
pub fn topic_counts(batch: u64) -> Vec<usize> {
    if batch < NEW_TOPIC_BATCH {
        vec![100, 100, 100]
    } else if batch == BURST_BATCH {
        // 3x the first topic's usual 75, total kept at 300
        vec![150, 50, 50, 50]
    } else {
        vec![75, 75, 75, 75]
    }
}

fn universe() -> Vec<&'static str> {
    TOPICS.iter().flatten().chain(FILLER.iter()).copied().collect()
}

/// Twelve hourly batches of 300 messages. Each message draws six terms of
/// its topic's ten-term core, every term replaced by a uniform draw from the
/// whole vocabulary with probability 0.05.
pub fn planted_stream(seed: u64) -> Stream {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all = universe();
    let mut messages = Vec::new();
    let mut labels = BTreeMap::new();
    for b in 0..BATCHES {
        let mut plan: Vec<usize> = topic_counts(b)
            .iter()
            .enumerate()
            .flat_map(|(t, &n)| std::iter::repeat_n(t, n))
            .collect();
        plan.shuffle(&mut rng);
        let burst_negatives = (NEGATIVE_SHARE * topic_counts(b)[0] as f64).round() as usize;
        let mut negatives_left = if b == BURST_BATCH { burst_negatives } else { 0 };
        for (i, &topic) in plan.iter().enumerate() {
            let mut words: Vec<&str> = TOPICS[topic]
                .choose_multiple(&mut rng, CORE_TOKENS)
                .copied()
                .collect();
            for w in words.iter_mut() {
                if rng.random::<f64>() < NOISE_RATE {
                    *w = all.choose(&mut rng).copied().unwrap();
                }
            }
            if topic == 0 && negatives_left > 0 {
                negatives_left -= 1;
                words.push(NEGATIVE.choose(&mut rng).copied().unwrap());
            }
            let mut text = String::new();
            for (k, w) in words.iter().enumerate() {
                if k > 0 {
                    text.push(' ');
                    if rng.random::<f64>() < 0.3 {
                        text.push_str(GLUE.choose(&mut rng).unwrap());
                        text.push(' ');
                    }
                }
                text.push_str(w);
            }
            let id = format!("b{b:02}-m{i:03}");
            let timestamp = ORIGIN + b as i64 * INTERVAL + (i as i64 * INTERVAL) / PER_BATCH as i64;
            labels.insert(id.clone(), topic);
            messages.push(Message::new(id, text, timestamp));
        }
    }
    Stream { messages, labels }
}
