use std::path::Path;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const OK: u8 = 0;
pub const USAGE: u8 = 1;
pub const NEGATIVE: u8 = 2;
pub const BUDGET: u8 = 3;

pub struct Outcome {
    pub report: Value,
    pub summary: String,
    pub code: u8,
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Failure {
        Failure { code: USAGE, message: message.into() }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Reads an input file, returning its text and a digest record.
pub fn read_input(path: &Path) -> Result<(String, Value), Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let digest = json!({ "path": path.display().to_string(), "sha256": sha256_hex(&bytes) });
    let text =
        String::from_utf8(bytes).map_err(|_| Failure::usage(format!("{} is not UTF-8 text", path.display())))?;
    Ok((text, digest))
}

pub fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

/// Assembles the report common to every command.
pub fn report(argv: &[String], inputs: Vec<Value>, result: Value) -> Value {
    json!({ "command": argv, "inputs": inputs, "result": result })
}
