//! The `qreport/1` envelope.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "qreport/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    /// `file`, `expr` or `params`.
    pub kind: &'static str,
    pub name: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn new(kind: &'static str, name: impl Into<String>, content: &[u8]) -> Self {
        InputDigest {
            kind,
            name: name.into(),
            sha256: sha256_hex(content),
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub result: Value,
    pub verdict: Option<String>,
    pub seed: Option<u64>,
    pub coverage: Option<Value>,
    pub timing_ms: u64,
}

impl Report {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

/// Drops every `timing_ms` field, for comparing reports across runs.
pub fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("timing_ms");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}
