//! Flat `key = value` run files. `#` starts a comment, blank lines are ignored.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigFileError {
    #[error("line {line}: expected `key = value`, got {text:?}")]
    MissingEquals { line: usize, text: String },
    #[error("line {line}: empty key")]
    EmptyKey { line: usize },
    #[error("line {line}: key {key:?} has no value")]
    EmptyValue { line: usize, key: String },
    #[error("line {line}: duplicate key {key:?}")]
    Duplicate { line: usize, key: String },
}

/// Parses run-file text into `(key, value)` pairs in file order.
///
/// Keys are case-sensitive and may use `-` or `_` interchangeably; they are
/// returned with `_` folded to `-` so they match the command-line flag names.
pub fn parse_config_text(text: &str) -> Result<Vec<(String, String)>, ConfigFileError> {
    let mut entries: Vec<(String, String)> = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| ConfigFileError::MissingEquals {
            line,
            text: content.to_string(),
        })?;
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        if key.is_empty() {
            return Err(ConfigFileError::EmptyKey { line });
        }
        if value.is_empty() {
            return Err(ConfigFileError::EmptyValue { line, key });
        }
        if entries.iter().any(|(k, _)| *k == key) {
            return Err(ConfigFileError::Duplicate { line, key });
        }
        entries.push((key, value.to_string()));
    }
    Ok(entries)
}
