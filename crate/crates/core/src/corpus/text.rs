use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

/// Switches applied by [`preprocess`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreprocessConfig {
    pub strip_urls: bool,
    pub strip_mentions: bool,
    /// Keep `#tag` as a single token. When off, the marker is dropped and
    /// the bare word kept.
    pub keep_hashtags: bool,
    pub remove_stopwords: bool,
    /// Drop tokens made only of digits.
    pub strip_numerals: bool,
}

impl PreprocessConfig {
    /// Profile used for topic-pathway features.
    pub const PATHWAY: PreprocessConfig = PreprocessConfig {
        strip_urls: true,
        strip_mentions: true,
        keep_hashtags: true,
        remove_stopwords: true,
        strip_numerals: true,
    };

    /// Profile used for emotion scoring. Stopwords stay: "not", "very" and
    /// friends carry intensity.
    pub const EMOTION: PreprocessConfig = PreprocessConfig {
        strip_urls: true,
        strip_mentions: true,
        keep_hashtags: false,
        remove_stopwords: false,
        strip_numerals: true,
    };
}

impl Default for PreprocessConfig {
    fn default() -> Self {
        PreprocessConfig::PATHWAY
    }
}

/// A lowercase stopword set.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StopWords {
    words: BTreeSet<String>,
}

// English function words plus Twitter noise. "now" is deliberately absent.
const DEFAULT_STOPWORDS: &[&str] = &[
    "a", "about", "above", "after", "again", "against", "all", "am", "amp", "an", "and", "any",
    "are", "as", "at", "be", "because", "been", "before", "being", "below", "between", "both",
    "but", "by", "can", "could", "did", "do", "does", "doing", "down", "during", "each", "few",
    "for", "from", "further", "had", "has", "have", "having", "he", "her", "here", "hers",
    "herself", "him", "himself", "his", "how", "i", "if", "in", "into", "is", "it", "it's", "its",
    "itself", "just", "me", "more", "most", "my", "myself", "of", "off", "on", "once", "only",
    "or", "other", "our", "ours", "ourselves", "out", "over", "own", "rt", "same", "she",
    "should", "so", "some", "such", "than", "that", "the", "their", "theirs", "them",
    "themselves", "then", "there", "these", "they", "this", "those", "through", "to", "too",
    "under", "until", "up", "us", "via", "was", "we", "were", "what", "when", "where", "which",
    "while", "who", "whom", "why", "will", "with", "would", "you", "your", "yours", "yourself",
    "yourselves",
];

impl StopWords {
    pub fn empty() -> Self {
        StopWords::default()
    }

    /// The built-in English list, including `rt` and `via`.
    pub fn english() -> Self {
        DEFAULT_STOPWORDS.iter().copied().collect()
    }

    /// Parses one term per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Self {
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn insert(&mut self, word: &str) {
        self.words.insert(word.to_lowercase());
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

impl<'a> FromIterator<&'a str> for StopWords {
    fn from_iter<T: IntoIterator<Item = &'a str>>(iter: T) -> Self {
        let mut s = StopWords::empty();
        for w in iter {
            s.insert(w);
        }
        s
    }
}

fn is_url(chunk: &str) -> bool {
    let lower = chunk.trim_start_matches(|c: char| !c.is_alphanumeric());
    let starts = |p: &str| {
        lower.len() >= p.len() && lower[..p.len()].eq_ignore_ascii_case(p)
    };
    starts("http://") || starts("https://") || starts("www.")
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

/// Splits lowercase text into word tokens.
///
/// Boundaries are whitespace and punctuation, except that a `#` or `@`
/// directly followed by a word character starts a token and an apostrophe
/// between two word characters stays inside one (normalized to `'`).
pub fn tokenize(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut cur = String::new();
    for (i, &c) in chars.iter().enumerate() {
        let next_is_word = chars.get(i + 1).is_some_and(|n| n.is_alphanumeric());
        if c.is_alphanumeric() {
            cur.extend(c.to_lowercase());
        } else if (c == '#' || c == '@') && cur.is_empty() && next_is_word {
            cur.push(c);
        } else if is_apostrophe(c)
            && next_is_word
            && cur.chars().last().is_some_and(|p| p.is_alphanumeric())
        {
            cur.push('\'');
        } else if !cur.is_empty() {
            tokens.push(core::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        tokens.push(cur);
    }
    tokens
}

/// Normalizes one message into tokens according to `cfg`.
pub fn preprocess(text: &str, cfg: &PreprocessConfig, stopwords: &StopWords) -> Vec<String> {
    let mut out = Vec::new();
    for chunk in text.split_whitespace() {
        if cfg.strip_urls && is_url(chunk) {
            continue;
        }
        for mut tok in tokenize(chunk) {
            if tok.starts_with('@') {
                if cfg.strip_mentions {
                    continue;
                }
            } else if tok.starts_with('#') && !cfg.keep_hashtags {
                tok.remove(0);
            }
            if cfg.strip_numerals && tok.chars().all(|c| c.is_numeric()) {
                continue;
            }
            if cfg.remove_stopwords && stopwords.contains(&tok) {
                continue;
            }
            out.push(tok);
        }
    }
    out
}

/// The key two messages must share to count as duplicates: lowercase text
/// with whitespace runs collapsed.
pub fn normalized_text(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for (i, word) in text.split_whitespace().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.extend(word.chars().flat_map(char::to_lowercase));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pathway(text: &str) -> Vec<String> {
        preprocess(text, &PreprocessConfig::PATHWAY, &StopWords::english())
    }

    #[test]
    fn urls_are_removed_and_case_folded() {
        assert_eq!(pathway("Check http://x.co NOW"), vec!["check", "now"]);
    }

    #[test]
    fn retweet_marker_and_mentions_are_dropped_hashtags_kept() {
        assert_eq!(pathway("RT @bob #Obama rocks"), vec!["#obama", "rocks"]);
    }

    #[test]
    fn empty_text_gives_no_tokens() {
        assert!(pathway("").is_empty());
        assert!(tokenize("  ...  ").is_empty());
    }

    #[test]
    fn numerals_and_punctuation_are_stripped() {
        assert_eq!(pathway("2015: budget, 3pm!!"), vec!["budget", "3pm"]);
    }

    #[test]
    fn apostrophes_inside_words_survive() {
        assert_eq!(tokenize("can't 'quoted' don\u{2019}t"), vec!["can't", "quoted", "don't"]);
    }

    #[test]
    fn emotion_profile_keeps_stopwords_and_unmarks_hashtags() {
        let toks = preprocess(
            "I am SO happy #blessed https://t.co/x",
            &PreprocessConfig::EMOTION,
            &StopWords::english(),
        );
        assert_eq!(toks, vec!["i", "am", "so", "happy", "blessed"]);
    }

    #[test]
    fn lone_markers_are_punctuation() {
        assert_eq!(tokenize("# @ a#b"), vec!["a", "b"]);
    }

    #[test]
    fn stopword_file_format() {
        let s = StopWords::parse("# comment\nThe\n\n  rt  \n");
        assert_eq!(s.len(), 2);
        assert!(s.contains("the") && s.contains("rt"));
    }

    #[test]
    fn normalization_collapses_case_and_spacing() {
        assert_eq!(normalized_text("  A  b\tC "), "a b c");
    }
}
