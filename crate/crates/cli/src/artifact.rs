//! Run records and input loading.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use anyhow::{anyhow, Context, Result};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// What every command writes: its configuration, the hash of that
/// configuration, and the result.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Artifact {
    pub command: String,
    pub config: Value,
    pub config_hash: String,
    pub result: Value,
}

impl Artifact {
    pub fn new(command: &str, config: Value, result: Value) -> Self {
        let config_hash = config_hash(command, &config);
        Self { command: command.to_string(), config, config_hash, result }
    }
}

/// SHA-256 of the compact JSON `{"command": ..., "config": ...}`.
pub fn config_hash(command: &str, config: &Value) -> String {
    let text = json!({ "command": command, "config": config }).to_string();
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Read a file, or standard input for `-`.
pub fn read_text(path: &str) -> Result<String> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).context("reading standard input")?;
        Ok(text)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

pub fn read_json(path: &str) -> Result<Value> {
    let text = read_text(path)?;
    serde_json::from_str(&text).with_context(|| format!("{path} is not JSON"))
}

/// Deserialize `T` from a bare value or from inside a run record.
///
/// Tries the value itself, then `result`, then each of `keys` under the
/// value and under `result`.
pub fn extract<T: DeserializeOwned>(value: &Value, keys: &[&str]) -> Result<T> {
    let mut candidates = vec![value];
    let result = value.get("result");
    candidates.extend(result);
    for base in [Some(value), result].into_iter().flatten() {
        candidates.extend(keys.iter().filter_map(|k| base.get(*k)));
    }
    let mut first_error = None;
    for v in candidates {
        match serde_json::from_value::<T>(v.clone()) {
            Ok(t) => return Ok(t),
            Err(e) => {
                first_error.get_or_insert(e);
            }
        }
    }
    Err(anyhow!(
        "expected {} (as a bare value or inside a run record): {}",
        keys.first().unwrap_or(&"a value"),
        first_error.map_or_else(|| "nothing found".to_string(), |e| e.to_string())
    ))
}

pub fn load<T: DeserializeOwned>(path: &str, keys: &[&str]) -> Result<T> {
    extract(&read_json(path)?, keys).with_context(|| format!("loading {path}"))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Pretty JSON to `out`, or to standard output.
pub fn emit(artifact: &Artifact, out: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(artifact)?;
    text.push('\n');
    match out {
        Some(path) => write_text(path, &text),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}
