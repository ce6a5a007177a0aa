//! Report envelope shared by the command-line front end.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub payload: Value,
    pub version: String,
}

impl Report {
    pub fn new(command: &str, params: BTreeMap<String, Value>, payload: Value) -> Self {
        Self {
            command: command.to_string(),
            params,
            payload,
            version: VERSION.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// A `{columns, rows}` payload as CSV text.
pub fn table_csv(payload: &Value) -> Result<String> {
    let unsupported = || Error::UnsupportedFormat("csv needs a {columns, rows} table payload".into());
    let columns = payload.get("columns").and_then(Value::as_array).ok_or_else(unsupported)?;
    let rows = payload.get("rows").and_then(Value::as_array).ok_or_else(unsupported)?;
    let cell = |v: &Value| -> Result<String> {
        match v {
            Value::Null => Ok(String::new()),
            Value::String(s) if !s.contains([',', '"', '\n']) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            Value::Bool(b) => Ok(u8::from(*b).to_string()),
            _ => Err(unsupported()),
        }
    };
    let mut out = String::new();
    let header: Vec<String> = columns.iter().map(cell).collect::<Result<_>>()?;
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        let row = row.as_array().ok_or_else(unsupported)?;
        if row.len() != columns.len() {
            return Err(unsupported());
        }
        let cells: Vec<String> = row.iter().map(cell).collect::<Result<_>>()?;
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    Ok(out)
}

/// JSON writes the whole envelope (pretty, keys sorted); CSV writes the
/// table payload only.
pub fn emit_report(r: &Report, format: Format, dest: &mut impl Write) -> Result<()> {
    let text = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).map_err(|e| Error::Parse(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Csv => table_csv(&r.payload)?,
    };
    dest.write_all(text.as_bytes()).map_err(|e| Error::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_tables() {
        let r = Report::new(
            "t",
            BTreeMap::new(),
            json!({"columns": ["r", "m", "class"], "rows": [[1, 4, "Unknown"], [0, 1, null]]}),
        );
        let mut buf = Vec::new();
        emit_report(&r, Format::Csv, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "r,m,class\n1,4,Unknown\n0,1,\n");
        let empty = Report::new("t", BTreeMap::new(), json!({"columns": ["a"], "rows": []}));
        let mut buf = Vec::new();
        emit_report(&empty, Format::Csv, &mut buf).unwrap();
        assert_eq!(buf, b"a\n");
        let bad = Report::new("t", BTreeMap::new(), json!({"o": [1]}));
        assert!(matches!(
            emit_report(&bad, Format::Csv, &mut Vec::new()),
            Err(Error::UnsupportedFormat(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let mut params = BTreeMap::new();
        params.insert("r".to_string(), json!(1));
        let r = Report::new("family check", params, json!({"deterministic": true}));
        let mut buf = Vec::new();
        emit_report(&r, Format::Json, &mut buf).unwrap();
        let back: Report = serde_json::from_slice(&buf).unwrap();
        assert_eq!(back, r);
    }
}
