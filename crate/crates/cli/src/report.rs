//! The JSON run report shared by every command.

use std::collections::BTreeMap;
use std::time::Instant;

use algebra_spec::{to_canonical_json, WhaSpec};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Direction of a check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    /// Passes when `residual ≤ tolerance`.
    AtMost,
    /// Passes when `residual > tolerance`.
    Above,
}

/// One named check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    /// Measured value.
    pub residual: f64,
    /// Threshold it is compared with.
    pub tolerance: f64,
    /// Direction of the comparison.
    pub bound: Bound,
    /// Outcome.
    pub pass: bool,
}

/// Report of one command run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    /// Command-line arguments after the program name.
    pub command: Vec<String>,
    /// SHA-256 of the canonical JSON of the input algebra.
    pub spec_sha256: String,
    /// Checks by name.
    pub checks: BTreeMap<String, Check>,
    /// Values reported without a pass criterion.
    pub measurements: BTreeMap<String, Value>,
    /// Conjunction of all checks.
    pub pass: bool,
    /// Seconds per phase, present only when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

/// SHA-256 of the canonical JSON of `spec`, as lowercase hex.
pub fn spec_fingerprint(spec: &WhaSpec) -> String {
    hex(&Sha256::digest(to_canonical_json(spec).as_bytes()))
}

/// Lowercase hex of a byte string.
pub fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

impl RunReport {
    /// An empty passing report for `spec`.
    pub fn new(command: Vec<String>, spec: &WhaSpec, timings: bool) -> Self {
        RunReport {
            command,
            spec_sha256: spec_fingerprint(spec),
            checks: BTreeMap::new(),
            measurements: BTreeMap::new(),
            pass: true,
            timings: timings.then(BTreeMap::new),
        }
    }

    /// Record `residual ≤ tolerance`. A NaN residual fails.
    pub fn at_most(&mut self, name: impl Into<String>, residual: f64, tolerance: f64) {
        self.push(
            name.into(),
            residual,
            tolerance,
            Bound::AtMost,
            residual <= tolerance,
        );
    }

    /// Record `value > threshold`. A NaN value fails.
    pub fn above(&mut self, name: impl Into<String>, value: f64, threshold: f64) {
        self.push(
            name.into(),
            value,
            threshold,
            Bound::Above,
            value > threshold,
        );
    }

    fn push(&mut self, name: String, residual: f64, tolerance: f64, bound: Bound, pass: bool) {
        self.pass &= pass;
        self.checks.insert(
            name,
            Check {
                residual,
                tolerance,
                bound,
                pass,
            },
        );
    }

    /// Record a value without a pass criterion.
    pub fn measure(&mut self, name: impl Into<String>, value: impl Serialize) {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.measurements.insert(name.into(), v);
    }

    /// Record the time since `start` under `phase` if timings are enabled.
    pub fn time(&mut self, phase: &str, start: Instant) {
        if let Some(t) = self.timings.as_mut() {
            t.insert(phase.to_string(), start.elapsed().as_secs_f64());
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
