//! Incremental topic pathways, burst events and emotion intensities over
//! timestamped short-text streams.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs; reading files, parsing configuration and talking
//! to the terminal live in the `pathweave` companion crate.
//!
//! The pipeline, per fixed-interval batch of messages:
//!
//! 1. [`corpus`] normalizes text, drops in-batch duplicates, builds the
//!    batch's dynamic vocabulary and turns messages into idf-weighted
//!    [`SparseVector`]s.
//! 2. [`pathways`] routes every vector to the closest cluster representation
//!    of the previous layer, trains a growing self-organising map
//!    ([`gsom`]) per pathway, and generalizes each map back into cluster
//!    representations by max-pooling hit-node neighbourhoods.
//! 3. [`emotion`] scores every message on sixteen emotion categories and
//!    derives a positive/negative sentiment pair from the scores.
//! 4. [`events`] compares each new topic segment against the moving
//!    average of its pathway and flags bursts.
//!
//! [`engine`] ties the steps together and owns the resumable state.
#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod corpus;
pub mod emotion;
pub mod engine;
pub mod error;
pub mod events;
pub mod gsom;
pub mod metrics;
pub mod pathways;

mod math;
mod seed;

pub use corpus::{Message, SparseVector};
pub use error::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;
