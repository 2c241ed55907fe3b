//! The JSON document every command prints.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub parameters: Value,
    pub seed: Option<u64>,
    pub force: bool,
    pub passed: bool,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, f64>>,
}

impl Report {
    pub fn render(&self, pretty: bool) -> String {
        let out = if pretty {
            serde_json::to_string_pretty(self)
        } else {
            serde_json::to_string(self)
        };
        out.expect("report values are plain JSON")
    }
}

/// Named wall-clock spans, reported only on request.
#[derive(Debug, Default)]
pub struct Timings {
    spans: BTreeMap<String, f64>,
}

impl Timings {
    pub fn time<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.spans.insert(name.to_string(), start.elapsed().as_secs_f64() * 1e3);
        out
    }

    pub fn into_map(self) -> BTreeMap<String, f64> {
        self.spans
    }
}
