use alloc::string::String;
use core::fmt;

/// Errors raised by the algorithmic core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A tunable parameter lies outside its documented range.
    InvalidParameter { name: &'static str, reason: String },
    /// A message arrived earlier than the stream allows.
    OutOfOrder { id: String, timestamp: i64, latest: i64 },
    /// A message precedes the first batch window.
    BeforeWindow { id: String, timestamp: i64, window_start: i64 },
    /// Lexicon phrases are limited to three tokens.
    PhraseTooLong(String),
    /// Lexicon entries must contain at least one token.
    EmptyTerm,
    UnknownCategory(String),
    ModifierOutOfRange { term: String, weight: f64 },
    /// An embedding vector does not match the table dimension.
    DimensionMismatch { term: String, expected: usize, found: usize },
    /// Indicator and weight names do not line up.
    IndicatorMismatch(String),
    /// A coherence term has no document frequency.
    MissingDocumentFrequency(String),
    EmptyInput,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter { name, reason } => {
                write!(f, "invalid parameter `{name}`: {reason}")
            }
            Error::OutOfOrder {
                id,
                timestamp,
                latest,
            } => write!(
                f,
                "message `{id}` at {timestamp} arrived after a message at {latest}"
            ),
            Error::BeforeWindow {
                id,
                timestamp,
                window_start,
            } => write!(
                f,
                "message `{id}` at {timestamp} precedes the batch window starting at {window_start}"
            ),
            Error::PhraseTooLong(term) => {
                write!(f, "lexicon phrase `{term}` has more than three tokens")
            }
            Error::EmptyTerm => f.write_str("lexicon term is empty"),
            Error::UnknownCategory(name) => write!(f, "unknown emotion category `{name}`"),
            Error::ModifierOutOfRange { term, weight } => {
                write!(f, "modifier `{term}` has weight {weight} outside [-1, 1]")
            }
            Error::DimensionMismatch {
                term,
                expected,
                found,
            } => write!(
                f,
                "embedding for `{term}` has {found} components, expected {expected}"
            ),
            Error::IndicatorMismatch(name) => {
                write!(f, "indicator `{name}` has no matching weight")
            }
            Error::MissingDocumentFrequency(term) => {
                write!(f, "term `{term}` does not occur in any document")
            }
            Error::EmptyInput => f.write_str("input is empty"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
