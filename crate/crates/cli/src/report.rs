//! The JSON report written by `--json`.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use sea_core::CheckSet;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictLine {
    pub name: String,
    pub passed: bool,
}

/// Everything a command found. Given the same inputs and seed the
/// serialization is byte-identical except for `timestamp`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: u64,
    /// sha256 over the command, its normalized arguments and the contents of
    /// every input file.
    pub inputs_digest: String,
    pub passed: bool,
    pub verdicts: Vec<VerdictLine>,
    pub witnesses: Vec<String>,
    pub statistics: BTreeMap<String, Value>,
    /// Command-specific payload.
    pub result: Value,
    pub checks: Vec<CheckSet>,
    /// Unix seconds. Not part of the digest.
    pub timestamp: u64,
}

impl Report {
    pub fn new(command: &str, seed: u64, inputs: &Inputs) -> Self {
        Self {
            schema: SCHEMA,
            tool: "sea".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            seed,
            inputs_digest: inputs.digest(command, seed),
            passed: true,
            verdicts: Vec::new(),
            witnesses: Vec::new(),
            statistics: BTreeMap::new(),
            result: Value::Null,
            checks: Vec::new(),
            timestamp: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
        }
    }

    pub fn verdict(&mut self, name: impl Into<String>, passed: bool) {
        self.passed &= passed;
        self.verdicts.push(VerdictLine { name: name.into(), passed });
    }

    pub fn stat(&mut self, key: &str, v: impl Into<Value>) {
        self.statistics.insert(key.to_string(), v.into());
    }

    /// Adds a check set: one verdict per check, failing witnesses collected.
    pub fn add_set(&mut self, set: CheckSet) {
        for c in &set.checks {
            self.verdict(format!("{}: {}", set.title, c.name), c.passed);
            if let Some(w) = &c.witness {
                self.witnesses.push(format!("{}: {}: {w}", set.title, c.name));
            }
        }
        let checked: u64 = set.checks.iter().map(|c| c.checked).sum();
        let total = self.statistics.get("instances_checked").and_then(Value::as_u64).unwrap_or(0);
        self.stat("instances_checked", total + checked);
        self.checks.push(set);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// The inputs a command actually consumed, for the digest.
#[derive(Debug, Default, Clone)]
pub struct Inputs {
    items: Vec<(String, Vec<u8>)>,
}

impl Inputs {
    pub fn arg(&mut self, key: &str, value: impl ToString) {
        self.items.push((key.to_string(), value.to_string().into_bytes()));
    }

    pub fn file(&mut self, key: &str, contents: &str) {
        self.items.push((format!("file:{key}"), contents.as_bytes().to_vec()));
    }

    pub fn digest(&self, command: &str, seed: u64) -> String {
        let mut h = Sha256::new();
        let mut field = |k: &[u8], v: &[u8]| {
            h.update((k.len() as u64).to_le_bytes());
            h.update(k);
            h.update((v.len() as u64).to_le_bytes());
            h.update(v);
        };
        field(b"command", command.as_bytes());
        field(b"seed", seed.to_string().as_bytes());
        for (k, v) in &self.items {
            field(k.as_bytes(), v);
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}
