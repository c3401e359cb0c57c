//! Shared helpers for the versioned JSON schemas.

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

pub fn schema_err(path: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::Schema { path: path.into(), reason: reason.into() }
}

/// Parses `text`, checks its `"format"` tag against `expected` and decodes
/// it. Syntax errors report line and column.
pub fn parse_versioned<T: DeserializeOwned>(text: &str, expected: &str) -> Result<T> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| schema_err(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    from_versioned(value, expected)
}

pub fn from_versioned<T: DeserializeOwned>(value: Value, expected: &str) -> Result<T> {
    match value.get("format") {
        Some(Value::String(f)) if f == expected => {}
        Some(Value::String(f)) => {
            return Err(schema_err("format", format!("unsupported format `{f}`, expected `{expected}`")))
        }
        _ => return Err(schema_err("format", format!("missing format tag `{expected}`"))),
    }
    serde_json::from_value(value).map_err(|e| schema_err("$", e.to_string()))
}

/// Canonical serialization: pretty-printed with a trailing newline.
pub fn to_canonical<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
