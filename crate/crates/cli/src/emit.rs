//! Report emission: canonical JSON, or a lossy CSV projection for tables.

use anyhow::{bail, Result};
use serde::Serialize;
use serde_json::Value;
use std::io::Write;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => bail!("unknown format `{other}` (expected json or csv)"),
        }
    }
}

fn csv_field(v: &Value) -> String {
    let raw = match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if raw.contains(',') || raw.contains('"') || raw.contains('\n') {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw
    }
}

/// Project a report to CSV: the named array field supplies the rows, and
/// every scalar top-level field is repeated into each row as context.
fn to_csv(report: &Value, rows_field: &str) -> Result<String> {
    let obj = report.as_object().expect("reports are objects");
    let rows = obj
        .get(rows_field)
        .and_then(Value::as_array)
        .cloned()
        .unwrap_or_default();
    let mut scalar_cols: Vec<(&String, &Value)> = obj
        .iter()
        .filter(|(k, v)| *k != rows_field && !v.is_array() && !v.is_object())
        .collect();
    scalar_cols.sort_by_key(|(k, _)| (*k).clone());
    // row columns: union of keys in row objects, in first-seen order
    let mut row_cols: Vec<String> = Vec::new();
    for row in &rows {
        if let Some(o) = row.as_object() {
            for k in o.keys() {
                if !row_cols.contains(k) {
                    row_cols.push(k.clone());
                }
            }
        }
    }
    let mut out = String::new();
    let header: Vec<String> = scalar_cols
        .iter()
        .map(|(k, _)| (*k).clone())
        .chain(row_cols.iter().cloned())
        .collect();
    out.push_str(&header.join(","));
    out.push('\n');
    if rows.is_empty() {
        let fields: Vec<String> = scalar_cols.iter().map(|(_, v)| csv_field(v)).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
        return Ok(out);
    }
    for row in &rows {
        let mut fields: Vec<String> = scalar_cols.iter().map(|(_, v)| csv_field(v)).collect();
        if let Some(o) = row.as_object() {
            for k in &row_cols {
                fields.push(o.get(k).map(csv_field).unwrap_or_default());
            }
        } else {
            fields.push(csv_field(row));
        }
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    Ok(out)
}

/// Serialize and write the report to the path (or stdout).
pub fn emit<T: Serialize>(
    report: &T,
    format: Format,
    rows_field: &str,
    out: Option<&Path>,
) -> Result<()> {
    let value = serde_json::to_value(report)?;
    let text = match format {
        Format::Json => {
            let mut t = serde_json::to_string_pretty(&value)?;
            t.push('\n');
            t
        }
        Format::Csv => to_csv(&value, rows_field)?,
    };
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let stdout = std::io::stdout();
            let mut handle = stdout.lock();
            handle.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}
