//! The state file: pretty-printed JSON followed by a `sha256 <hex>` line
//! over the JSON bytes.

use std::fmt::Write as _;
use std::path::Path;

use pathweave_core::engine::{EngineConfig, EngineState, STATE_FORMAT_VERSION};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

const CHECKSUM_PREFIX: &str = "sha256 ";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub format_version: u32,
    /// The configuration the state was built with; a resumed run must use
    /// the same one.
    pub config: EngineConfig,
    pub engine: EngineState,
}

impl StateFile {
    pub fn new(config: EngineConfig, engine: EngineState) -> Self {
        StateFile {
            format_version: STATE_FORMAT_VERSION,
            config,
            engine,
        }
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

pub fn encode(state: &StateFile) -> String {
    let mut body = serde_json::to_string_pretty(state).expect("state serializes");
    body.push('\n');
    let sum = sha256_hex(body.as_bytes());
    body.push_str(CHECKSUM_PREFIX);
    body.push_str(&sum);
    body.push('\n');
    body
}

pub fn decode(text: &str) -> Result<StateFile> {
    let trimmed = text.strip_suffix('\n').unwrap_or(text);
    let (body, sum) = match trimmed.rfind('\n') {
        Some(i) => (&text[..=i], &trimmed[i + 1..]),
        None => return Err(CliError::State("missing checksum line".into())),
    };
    let Some(expected) = sum.strip_prefix(CHECKSUM_PREFIX) else {
        return Err(CliError::State("missing checksum line".into()));
    };
    if sha256_hex(body.as_bytes()) != expected {
        return Err(CliError::State("checksum mismatch (file truncated or edited)".into()));
    }
    let version: serde_json::Value =
        serde_json::from_str(body).map_err(|e| CliError::State(e.to_string()))?;
    let found = version.get("format_version").and_then(|v| v.as_u64());
    if found != Some(u64::from(STATE_FORMAT_VERSION)) {
        return Err(CliError::State(format!(
            "format version {} is not supported (expected {STATE_FORMAT_VERSION})",
            found.map_or_else(|| "missing".to_string(), |v| v.to_string())
        )));
    }
    serde_json::from_value(version).map_err(|e| CliError::State(e.to_string()))
}

/// Writes through a temporary file so a crash never leaves half a state.
pub fn save(path: &Path, state: &StateFile) -> Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, encode(state)).map_err(|e| CliError::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| CliError::io(path, e))
}

/// Any failure, a missing file included, is a state error.
pub fn load(path: &Path) -> Result<StateFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::State(format!("{}: {e}", path.display())))?;
    decode(&text).map_err(|e| match e {
        CliError::State(m) => CliError::State(format!("{}: {m}", path.display())),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> StateFile {
        let engine = EngineState {
            last_batch: Some(4),
            origin: Some(100),
            ..EngineState::default()
        };
        StateFile::new(EngineConfig::default(), engine)
    }

    #[test]
    fn round_trip() {
        let s = sample();
        let text = encode(&s);
        assert!(text.ends_with('\n'));
        assert_eq!(decode(&text).unwrap(), s);
    }

    #[test]
    fn truncated_or_edited_files_fail_the_checksum() {
        let text = encode(&sample());
        let cut = &text[..text.len() / 2];
        assert!(decode(cut).is_err());
        let edited = text.replacen("\"last_batch\": 4", "\"last_batch\": 5", 1);
        assert_ne!(edited, text);
        let err = decode(&edited).unwrap_err();
        assert!(err.to_string().contains("checksum"), "{err}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn other_versions_are_rejected() {
        let mut s = sample();
        s.format_version = STATE_FORMAT_VERSION + 1;
        let err = decode(&encode(&s)).unwrap_err();
        assert!(err.to_string().contains("format version"), "{err}");
    }

    #[test]
    fn missing_file_is_a_state_error() {
        let err = load(Path::new("/definitely/not/here.json")).unwrap_err();
        assert!(matches!(err, CliError::State(_)));
        assert_eq!(err.exit_code(), 2);
    }
}
