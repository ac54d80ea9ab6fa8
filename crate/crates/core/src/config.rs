//! Flat `key = value` configuration text.
//!
//! One assignment per line, `#` starts a comment, blank lines are ignored.
//! Entries keep their order and line numbers so callers can report precise
//! errors and honor later-entry-wins semantics.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KvEntry {
    pub key: String,
    pub value: String,
    /// 1-based line number in the source text.
    pub line: usize,
}

/// Parse `key = value` lines. `source_name` labels errors, typically the
/// file path.
pub fn parse_kv(source_name: &str, text: &str) -> Result<Vec<KvEntry>> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let content = content.trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(Error::Parse {
                source_name: source_name.to_string(),
                line,
                msg: format!("expected `key = value`, got `{content}`"),
            });
        };
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if key.is_empty() || value.is_empty() {
            return Err(Error::Parse {
                source_name: source_name.to_string(),
                line,
                msg: "key and value must both be non-empty".into(),
            });
        }
        entries.push(KvEntry { key, value, line });
    }
    Ok(entries)
}
