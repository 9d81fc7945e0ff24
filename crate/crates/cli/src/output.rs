//! Deterministic table serialization: CSV with a schema comment line and
//! 17-significant-digit floats, or JSON with exact round-trip numbers.
//! Files are written atomically (temp file in the same directory, then
//! rename).

use serde_json::{json, Map, Value};
use std::fs;
use std::io::Write;
use std::path::Path;

pub const SCHEMA: &str = "corrlimit-schema v1";

/// 17 significant digits: enough to reproduce any f64 exactly on re-parse.
pub fn fmt_g17(v: f64) -> String {
    format!("{v:.16e}")
}

pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
    /// Label/value pairs emitted as comment rows after the data (CSV) or as
    /// a "fits" object (JSON).
    pub footer: Vec<(String, f64)>,
    pub config: Map<String, Value>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>, config: Map<String, Value>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
            footer: Vec::new(),
            config,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("# ");
        out.push_str(SCHEMA);
        out.push('\n');
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|&v| fmt_g17(v)).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        for (label, value) in &self.footer {
            out.push_str(&format!("# {label},{}\n", fmt_g17(*value)));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| Value::Array(row.iter().map(|&v| json_number(v)).collect()))
            .collect();
        let mut doc = Map::new();
        doc.insert("schema".into(), Value::String(SCHEMA.into()));
        doc.insert("config".into(), Value::Object(self.config.clone()));
        doc.insert(
            "columns".into(),
            Value::Array(
                self.columns
                    .iter()
                    .map(|c| Value::String((*c).into()))
                    .collect(),
            ),
        );
        doc.insert("rows".into(), Value::Array(rows));
        if !self.footer.is_empty() {
            let mut fits = Map::new();
            for (label, value) in &self.footer {
                fits.insert(label.clone(), json_number(*value));
            }
            doc.insert("fits".into(), Value::Object(fits));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("serializable");
        s.push('\n');
        s
    }
}

fn json_number(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or_else(|| json!(null), Value::Number)
}

/// Write to the path via a sibling temp file and rename, or to stdout.
pub fn write_output(path: Option<&Path>, content: &str) -> std::io::Result<()> {
    match path {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            stdout.flush()
        }
        Some(path) => {
            let tmp = path.with_extension("tmp");
            {
                let mut f = fs::File::create(&tmp)?;
                f.write_all(content.as_bytes())?;
                f.sync_all()?;
            }
            fs::rename(&tmp, path)
        }
    }
}
