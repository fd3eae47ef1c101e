//! Report headers and the JSON / CSV / human renderings of a report.
//!
//! A report is one JSON object. CSV holds it as a single row: nested objects
//! are flattened into dotted column names, arrays and empty objects become
//! JSON text, and a cell decodes as JSON when it parses, else as a string.
//! The human form is printed from the same JSON value.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::gf::FieldCtx;

pub const TOOL: &str = "msls";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldInfo {
    pub p: u32,
    pub e: u32,
    pub q: u32,
    /// Coefficients of the defining polynomial over F_p, constant term first.
    pub modulus: Vec<u32>,
    pub generator: u32,
    pub gamma: u32,
}

impl FieldInfo {
    pub fn of(ctx: &FieldCtx) -> FieldInfo {
        FieldInfo {
            p: ctx.p(),
            e: ctx.e(),
            q: ctx.q(),
            modulus: ctx.modulus().to_vec(),
            generator: ctx.to_int(ctx.generator()),
            gamma: ctx.to_int(ctx.gamma()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub tool: String,
    pub version: String,
    pub seed: u64,
    pub fields: Vec<FieldInfo>,
}

impl Header {
    pub fn new(seed: u64, fields: Vec<FieldInfo>) -> Header {
        Header { tool: TOOL.into(), version: VERSION.into(), seed, fields }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Human,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "human" => Ok(Format::Human),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

pub fn render(v: &Value, fmt: Format) -> Result<String> {
    match fmt {
        Format::Json => Ok(serde_json::to_string_pretty(v)? + "\n"),
        Format::Csv => to_csv(v),
        Format::Human => Ok(to_human(v)),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut BTreeMap<String, String>) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, child) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, child, out);
            }
        }
        Value::String(s) => {
            out.insert(prefix.to_string(), s.clone());
        }
        Value::Null => {}
        other => {
            out.insert(prefix.to_string(), other.to_string());
        }
    }
}

/// One header row of dotted keys and one data row.
pub fn to_csv(v: &Value) -> Result<String> {
    if !v.is_object() {
        return Err(Error::Internal("CSV export needs a JSON object".into()));
    }
    let mut cells = BTreeMap::new();
    flatten("", v, &mut cells);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(cells.keys()).map_err(csv_err)?;
    w.write_record(cells.values()).map_err(csv_err)?;
    let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(format!("csv: {e}"))
}

/// Inverse of `to_csv`.
pub fn from_csv(text: &str) -> Result<Value> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let keys: Vec<String> = r.headers().map_err(csv_err)?.iter().map(String::from).collect();
    let mut rows = r.records();
    let row = rows
        .next()
        .ok_or_else(|| Error::Parse("csv: missing data row".into()))?
        .map_err(csv_err)?;
    if rows.next().is_some() {
        return Err(Error::Parse("csv: more than one data row".into()));
    }
    if row.len() != keys.len() {
        return Err(Error::Parse("csv: row length differs from header".into()));
    }
    let mut root = Map::new();
    for (k, cell) in keys.iter().zip(row.iter()) {
        if cell.is_empty() {
            continue;
        }
        if k.is_empty() || k.split('.').any(str::is_empty) {
            return Err(Error::Parse(format!("csv: bad column name {k:?}")));
        }
        let value = serde_json::from_str(cell).unwrap_or_else(|_| Value::String(cell.to_string()));
        insert_path(&mut root, k, value)?;
    }
    Ok(Value::Object(root))
}

fn insert_path(root: &mut Map<String, Value>, key: &str, value: Value) -> Result<()> {
    let mut parts = key.split('.').peekable();
    let mut cur = root;
    while let Some(part) = parts.next() {
        if parts.peek().is_none() {
            if cur.insert(part.to_string(), value).is_some() {
                return Err(Error::Parse(format!("csv: duplicate column {key:?}")));
            }
            return Ok(());
        }
        let slot = cur.entry(part.to_string()).or_insert_with(|| Value::Object(Map::new()));
        cur = slot
            .as_object_mut()
            .ok_or_else(|| Error::Parse(format!("csv: column {key:?} conflicts with a value")))?;
    }
    Ok(())
}

pub fn to_human(v: &Value) -> String {
    let mut out = String::new();
    human(v, 0, &mut out);
    out
}

fn human(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, child) in m {
                match child {
                    Value::Object(c) if !c.is_empty() => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        human(child, depth + 1, out);
                    }
                    Value::Array(a) if a.iter().any(|x| x.is_object()) => {
                        out.push_str(&format!("{pad}{k}: {} entries\n", a.len()));
                        for item in a {
                            out.push_str(&format!("{pad}  - {}\n", item));
                        }
                    }
                    Value::String(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    other => out.push_str(&format!("{pad}{k}: {other}\n")),
                }
            }
        }
        other => out.push_str(&format!("{pad}{other}\n")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_round_trip() {
        let v = json!({
            "header": {"tool": "msls", "version": "0.1.0", "seed": 7,
                       "fields": [{"p": 3, "e": 1, "q": 3, "modulus": [1, 2, 0, 0, 0, 1]}]},
            "body": {"counters": {"NotScattered": 12, "Sheekey": 0}, "hits": [], "empty": {},
                     "pass": true, "note": "a, \"quoted\" string"},
        });
        let text = to_csv(&v).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert_eq!(from_csv(&text).unwrap(), v);
    }

    #[test]
    fn csv_rejects_garbage() {
        assert!(from_csv("").is_err());
        assert!(from_csv("a,b\n1\n").is_err());
        assert!(from_csv("a,a.b\n1,2\n").is_err());
        assert!(from_csv("a..b\n1\n").is_err());
    }

    #[test]
    fn human_is_projection() {
        let v = json!({"body": {"pass": true, "tag": "Sheekey"}});
        let h = to_human(&v);
        assert!(h.contains("body:\n  pass: true\n  tag: Sheekey"));
    }
}
