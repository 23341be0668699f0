//! Message batching, text normalization, dynamic vocabularies and sparse
//! idf features.

mod batch;
mod sparse;
mod text;
mod vocab;

pub use batch::{dedupe, partition, Batch, Message, Partitioner};
pub use sparse::{cosine, SparseVector, MIN_WEIGHT};
pub use text::{normalized_text, preprocess, tokenize, PreprocessConfig, StopWords};
pub use vocab::{build_vocabulary, vectorize, TermStats, Vocabulary};
