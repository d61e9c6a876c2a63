//! Reports and their serializations.
//!
//! JSON objects are `serde_json` maps, which keep keys sorted, so equal
//! payloads serialize to equal bytes. Undefined values are `null`; an
//! infinite grade is the string `"infinity"`.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use generica_core::ideal_theory::Grade;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("csv output needs a tabular payload, `{0}` has none")]
    NotTabular(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    /// The command as it would be written in a session.
    pub command: String,
    pub input_sha256: String,
    pub seed: u64,
    pub elapsed_ms: u64,
    pub engine_version: String,
    pub payload: Value,
}

impl Report {
    pub fn new(command: String, input: &str, seed: u64, elapsed_ms: u64, payload: Value) -> Report {
        Report {
            command,
            input_sha256: sha256_hex(input),
            seed,
            elapsed_ms,
            engine_version: generica_core::VERSION.to_string(),
            payload,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "input_sha256": self.input_sha256,
            "seed": self.seed,
            "elapsed_ms": self.elapsed_ms,
            "engine_version": self.engine_version,
            "payload": self.payload,
        })
    }

    pub fn from_json(v: &Value) -> Option<Report> {
        Some(Report {
            command: v.get("command")?.as_str()?.to_string(),
            input_sha256: v.get("input_sha256")?.as_str()?.to_string(),
            seed: v.get("seed")?.as_u64()?,
            elapsed_ms: v.get("elapsed_ms")?.as_u64()?,
            engine_version: v.get("engine_version")?.as_str()?.to_string(),
            payload: v.get("payload")?.clone(),
        })
    }

    /// The per-row records of a tabular payload.
    pub fn rows(&self) -> Option<&Vec<Value>> {
        self.payload.get("rows")?.as_array()
    }
}

pub fn sha256_hex(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn grade_value(g: Grade) -> Value {
    match g {
        Grade::Finite(n) => json!(n),
        Grade::Infinite => json!("infinity"),
    }
}

pub fn opt_value<T: Into<Value>>(v: Option<T>) -> Value {
    v.map_or(Value::Null, Into::into)
}

/// Rates are written with four decimals so that output bytes do not depend
/// on float printing.
pub fn rate(successes: usize, total: usize) -> Value {
    if total == 0 {
        return Value::Null;
    }
    let scaled = (successes as u128 * 10_000 + total as u128 / 2) / total as u128;
    json!(format!("{}.{:04}", scaled / 10_000, scaled % 10_000))
}

pub fn emit(report: &Report, format: Format) -> Result<String, FormatError> {
    match format {
        Format::Json => Ok(format!("{}\n", report.to_json())),
        Format::Csv => emit_csv(report),
        Format::Text => Ok(emit_text(report)),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    }
}

fn emit_csv(report: &Report) -> Result<String, FormatError> {
    let rows = report.rows().ok_or_else(|| FormatError::NotTabular(report.command.clone()))?;
    let mut header: Vec<String> = Vec::new();
    for row in rows {
        let obj = row.as_object().ok_or_else(|| FormatError::NotTabular(report.command.clone()))?;
        for k in obj.keys() {
            if !header.contains(k) {
                header.push(k.clone());
            }
        }
    }
    header.sort();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header)?;
    for row in rows {
        let obj = row.as_object().expect("checked above");
        w.write_record(header.iter().map(|k| obj.get(k).map_or(String::new(), cell)))?;
    }
    let bytes = w.into_inner().map_err(|e| FormatError::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 cells"))
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn emit_text(report: &Report) -> String {
    let mut out = format!("> {}\n", report.command);
    let Some(obj) = report.payload.as_object() else {
        out.push_str(&format!("  {}\n", text_value(&report.payload)));
        return out;
    };
    for (k, v) in obj {
        if k == "rows" {
            continue;
        }
        out.push_str(&format!("  {k}: {}\n", text_value(v)));
    }
    if let Some(rows) = obj.get("rows").and_then(Value::as_array) {
        for row in rows {
            match row.as_object() {
                Some(r) => {
                    let cells: Vec<String> = r.iter().map(|(k, v)| format!("{k}={}", text_value(v))).collect();
                    out.push_str(&format!("  | {}\n", cells.join(" ")));
                }
                None => out.push_str(&format!("  | {}\n", text_value(row))),
            }
        }
    }
    out
}

/// Builds an object from key-value pairs.
pub fn object<I: IntoIterator<Item = (&'static str, Value)>>(pairs: I) -> Value {
    let map: Map<String, Value> = pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    Value::Object(map)
}
