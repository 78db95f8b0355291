//! Machine-readable run reports.
//!
//! Field names are frozen under `schema = 1`. Timing lives only in fields
//! named `wall_time_ms`; everything else is a function of the command line
//! and the input bytes.

use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

impl Tool {
    pub fn current() -> Self {
        Tool { name: "nilp2", version: env!("CARGO_PKG_VERSION") }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(path: &Path, bytes: &[u8]) -> Self {
        InputDigest { path: path.display().to_string(), sha256: hex::encode(Sha256::digest(bytes)) }
    }
}

/// One checked statement. `holds` is the verdict itself; `refutation`
/// marks outcomes that contradict a proven statement or universal identity.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub name: String,
    pub subject: String,
    pub holds: bool,
    pub refutation: bool,
    pub cases_checked: u64,
    pub detail: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl Verdict {
    pub fn new(name: impl Into<String>, subject: impl Into<String>, holds: bool, cases_checked: u64, detail: Value) -> Self {
        Verdict {
            name: name.into(),
            subject: subject.into(),
            holds,
            refutation: false,
            cases_checked,
            detail,
            wall_time_ms: None,
        }
    }

    pub fn refuting_if(mut self, flag: bool) -> Self {
        self.refutation = flag;
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Counts {
    pub verdicts: usize,
    pub holding: usize,
    pub failing: usize,
    pub refutations: usize,
    pub cases_checked: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub tool: Tool,
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub seed: Option<u64>,
    pub verdicts: Vec<Verdict>,
    pub counts: Counts,
    pub exit_code: i32,
    pub wall_time_ms: u64,
}

impl RunReport {
    pub fn new(
        command: Vec<String>,
        inputs: Vec<InputDigest>,
        seed: Option<u64>,
        verdicts: Vec<Verdict>,
        exit_code: i32,
        wall_time_ms: u64,
    ) -> Self {
        let counts = Counts {
            verdicts: verdicts.len(),
            holding: verdicts.iter().filter(|v| v.holds).count(),
            failing: verdicts.iter().filter(|v| !v.holds).count(),
            refutations: verdicts.iter().filter(|v| v.refutation).count(),
            cases_checked: verdicts.iter().map(|v| v.cases_checked).sum(),
        };
        RunReport {
            schema: SCHEMA,
            tool: Tool::current(),
            command,
            inputs,
            seed,
            verdicts,
            counts,
            exit_code,
            wall_time_ms,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// The command line as echoed in reports: worker count and output path do
/// not affect results, so they are dropped.
pub fn echo_args(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--threads" || a == "--out" {
            it.next();
        } else if !(a.starts_with("--threads=") || a.starts_with("--out=")) {
            out.push(a.clone());
        }
    }
    out
}

/// Removes every `wall_time_ms` field, recursively.
pub fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("wall_time_ms");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}
