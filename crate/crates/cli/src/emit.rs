//! CSV and JSON emission. Floats carry 15 significant digits and files end
//! lines with LF, so identical configurations give identical bytes.

use serde_json::{json, Value};

use crate::CliError;

/// JSON Schema of every `--format json` document, shown in `--help`.
pub const JSON_SCHEMA: &str = r#"{
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "title": "abflux output",
  "type": "object",
  "required": ["config", "records", "diagnostics"],
  "additionalProperties": false,
  "properties": {
    "config": {
      "type": "object",
      "required": ["command", "alpha", "B"],
      "properties": {
        "command": {"enum": ["spectrum", "sweep", "verify", "green"]},
        "alpha": {"type": "number"},
        "B": {"type": "number"}
      }
    },
    "records": {
      "type": "array",
      "items": {
        "oneOf": [
          {"title": "spectrum", "type": "object",
           "required": ["lambda", "z", "source", "sectors", "multiplicity", "truncated"],
           "properties": {
             "lambda": {"type": "number"}, "z": {"type": ["number", "null"]},
             "source": {"enum": ["StableLandau", "StableShifted", "Critical", "CriticalEndpoint"]},
             "sectors": {"type": "array", "items": {"type": "integer"}},
             "multiplicity": {"type": "integer"}, "truncated": {"type": "boolean"}}},
          {"title": "sweep", "type": "object", "required": ["t", "branch_id", "lambda"],
           "properties": {"t": {"type": "number"}, "branch_id": {"type": "integer"}, "lambda": {"type": "number"}}},
          {"title": "verify", "type": "object", "required": ["suite", "check", "measured", "lo", "hi", "passed"],
           "properties": {"suite": {"type": "string"}, "check": {"type": "string"},
             "measured": {"type": ["number", "null"]}, "lo": {"type": ["number", "null"]},
             "hi": {"type": ["number", "null"]}, "passed": {"type": "boolean"}}},
          {"title": "green", "type": "object", "required": ["m", "z_re", "z_im", "r1", "r2", "closed_re", "closed_im"],
           "properties": {"m": {"type": "integer"}, "z_re": {"type": "number"}, "z_im": {"type": "number"},
             "r1": {"type": "number"}, "r2": {"type": "number"},
             "closed_re": {"type": "number"}, "closed_im": {"type": "number"},
             "series_re": {"type": ["number", "null"]}, "series_im": {"type": ["number", "null"]},
             "relative_difference": {"type": ["number", "null"]}}}
        ]
      }
    },
    "diagnostics": {
      "type": "array",
      "items": {"type": "object", "required": ["level", "message"],
        "properties": {"level": {"enum": ["info", "warning", "error"]}, "message": {"type": "string"}}}
    }
  }
}"#;

/// `x` rounded to 15 significant digits.
pub fn sig15(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().expect("exponent form round-trips")
}

/// Shortest text of `sig15(x)`; exponent form outside `[1e-5, 1e16)`.
pub fn fmt(x: f64) -> String {
    let r = sig15(x);
    let a = r.abs();
    if r != 0.0 && a.is_finite() && !(1e-5..1e16).contains(&a) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

/// A JSON number with 15 significant digits; non-finite values become null.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(sig15(x))
    } else {
        Value::Null
    }
}

pub fn diagnostic(level: &str, message: impl Into<String>) -> Value {
    json!({"level": level, "message": message.into()})
}

pub fn json_document(config: Value, records: Vec<Value>, diagnostics: Vec<Value>) -> String {
    let doc = json!({"config": config, "records": records, "diagnostics": diagnostics});
    let mut s = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
    s.push('\n');
    s
}

/// CSV text with a header row; fields are quoted only when needed.
pub fn csv_document(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header).map_err(|e| CliError::Io(e.to_string()))?;
    for row in rows {
        w.write_record(&row).map_err(|e| CliError::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}
