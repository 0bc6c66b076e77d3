//! JSON plumbing shared by every module: path-aware decoding errors and
//! rational fields.

use crate::rational::{self, Q};
use serde::de::DeserializeOwned;
use serde_json::Value;

/// A decoding failure together with the JSON path of the offending value,
/// written like `levels[1].sets[0][0][1]`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{}: {message}", if path.is_empty() { "<root>" } else { path.as_str() })]
pub struct JsonError {
    pub path: String,
    pub message: String,
}

impl JsonError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        JsonError { path: path.into(), message: message.into() }
    }
}

pub fn join(base: &str, suffix: &str) -> String {
    match (base.is_empty(), suffix.starts_with('[')) {
        (true, _) => suffix.to_string(),
        (false, true) => format!("{}{}", base, suffix),
        (false, false) => format!("{}.{}", base, suffix),
    }
}

/// Deserialises `v`, reporting the path of the first mismatch relative to
/// `base`.
pub fn decode<T: DeserializeOwned>(v: &Value, base: &str) -> Result<T, JsonError> {
    serde_path_to_error::deserialize::<_, T>(v).map_err(|e| {
        let inner = e.path().to_string();
        let path = if inner == "." { base.to_string() } else { join(base, &inner) };
        JsonError::new(path, e.into_inner().to_string())
    })
}

pub fn rational_at(text: &str, path: &str) -> Result<Q, JsonError> {
    rational::parse(text).map_err(|e| JsonError::new(path, e.to_string()))
}

/// Parses a whole document from text.
pub fn parse_document(text: &str) -> Result<Value, JsonError> {
    serde_json::from_str(text).map_err(|e| JsonError::new("", format!("invalid JSON: {}", e)))
}
