use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "multalg/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    ClaimFailed,
    Error,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Error => 1,
            Status::ClaimFailed => 2,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub command: String,
    pub input_digest: String,
    pub status: Status,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, u128>>,
}

/// SHA-256 of the command name and the canonical JSON of its input.
pub fn digest(command: &str, input: &Value) -> String {
    let mut h = Sha256::new();
    h.update(command.as_bytes());
    h.update(b"\n");
    h.update(serde_json::to_string(input).expect("json value").as_bytes());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Wall-clock time per named phase.
#[derive(Debug, Default)]
pub struct Timings {
    phases: BTreeMap<String, u128>,
}

impl Timings {
    pub fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        *self.phases.entry(phase.to_string()).or_default() += start.elapsed().as_millis();
        out
    }

    pub fn into_map(self) -> BTreeMap<String, u128> {
        self.phases
    }
}

pub fn write_output(out: Option<&Path>, text: &str) -> std::io::Result<()> {
    match out {
        Some(p) => fs::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
