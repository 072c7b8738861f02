//! Report layout and canonical output.
//!
//! JSON: keys sorted at every level, two-space indent, trailing newline.
//! Wall-clock figures live only under `"timing"`.
//!
//! CSV columns, fixed: `index,input_sha256,kind,value,certificate_sha256,error`.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::spec::ExperimentSpec;

pub const SCHEMA: &str = "1";
pub const CSV_HEADER: &str = "index,input_sha256,kind,value,certificate_sha256,error";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Ok,
    /// A hypothesis on the input was disproved; the result holds the witness.
    Refuted,
    Failure,
    Budget,
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub index: usize,
    pub input_sha256: String,
    pub kind: Kind,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate_sha256: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub ok: usize,
    pub refuted: usize,
    pub failed: usize,
    pub budget: usize,
    pub failures: Vec<Value>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Timing {
    pub total_ms: f64,
    pub per_instance_ms: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub spec: ExperimentSpec,
    pub outcomes: Vec<Record>,
    pub summary: Summary,
    pub timing: Timing,
}

impl Report {
    pub fn new(spec: ExperimentSpec, outcomes: Vec<Record>, timing: Timing) -> Report {
        let mut summary = Summary { total: outcomes.len(), ..Summary::default() };
        for r in &outcomes {
            match r.kind {
                Kind::Ok => summary.ok += 1,
                Kind::Refuted => summary.refuted += 1,
                Kind::Failure => summary.failed += 1,
                Kind::Budget => summary.budget += 1,
            }
            if matches!(r.kind, Kind::Failure | Kind::Budget) {
                summary.failures.push(serde_json::json!({
                    "index": r.index,
                    "error": r.error.clone().unwrap_or_default(),
                }));
            }
        }
        Report { schema: SCHEMA, spec, outcomes, summary, timing }
    }

    pub fn to_json(&self) -> String {
        // serde_json's map is ordered, so a round trip through Value sorts keys.
        let value = serde_json::to_value(self).expect("report serializes");
        let mut out = serde_json::to_string_pretty(&value).expect("value serializes");
        out.push('\n');
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.outcomes {
            let value = match r.result.get("value") {
                Some(Value::String(s)) => s.clone(),
                Some(v) => v.to_string(),
                None => String::new(),
            };
            let kind = serde_json::to_value(r.kind).expect("kind serializes");
            writeln!(
                out,
                "{},{},{},{},{},{}",
                r.index,
                r.input_sha256,
                kind.as_str().unwrap_or_default(),
                csv_field(&value),
                r.certificate_sha256.as_deref().unwrap_or_default(),
                csv_field(r.error.as_deref().unwrap_or_default())
            )
            .expect("writing to a string");
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Digest of a value's canonical (sorted, compact) JSON.
pub fn digest_of<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("value serializes");
    sha256_hex(v.to_string().as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_awkward_fields() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"x\""), "\"say \"\"x\"\"\"");
    }
}
