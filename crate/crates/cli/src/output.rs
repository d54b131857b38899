//! Output envelope: CSV with a commented metadata header, or JSON with a
//! versioned schema. Identical inputs produce byte-identical output — rows
//! are pre-ordered by the callers and JSON object keys are sorted by the
//! default `serde_json` map.

use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub struct Envelope {
    pub format: Format,
    pub out: Option<PathBuf>,
    pub command: String,
    pub meta: Vec<(String, String)>,
}

impl Envelope {
    pub fn new(format: Format, out: Option<PathBuf>, command: &str) -> Envelope {
        Envelope { format, out, command: command.to_string(), meta: Vec::new() }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.meta.push((key.to_string(), value.to_string()));
    }

    fn deliver(&self, text: String) -> std::io::Result<()> {
        match &self.out {
            Some(path) => std::fs::write(path, text),
            None => std::io::stdout().write_all(text.as_bytes()),
        }
    }

    /// Emit tabular data: CSV rows under a commented metadata header, or the
    /// same table embedded in the JSON envelope.
    pub fn emit_table(&self, header: &[&str], rows: &[Vec<String>]) -> std::io::Result<()> {
        match self.format {
            Format::Csv => {
                let mut text = String::new();
                text.push_str(&format!("# schema: {SCHEMA_VERSION}\n"));
                text.push_str(&format!(
                    "# tool: penning {}\n",
                    env!("CARGO_PKG_VERSION")
                ));
                text.push_str(&format!("# command: {}\n", self.command));
                for (k, v) in &self.meta {
                    text.push_str(&format!("# {k}: {v}\n"));
                }
                text.push_str(&header.join(","));
                text.push('\n');
                for row in rows {
                    text.push_str(&row.join(","));
                    text.push('\n');
                }
                self.deliver(text)
            }
            Format::Json => {
                let rows_json: Vec<Value> = rows
                    .iter()
                    .map(|row| {
                        let obj: serde_json::Map<String, Value> = header
                            .iter()
                            .zip(row)
                            .map(|(k, v)| (k.to_string(), Value::String(v.clone())))
                            .collect();
                        Value::Object(obj)
                    })
                    .collect();
                self.emit_json(json!({ "rows": rows_json }))
            }
        }
    }

    /// Emit an arbitrary JSON payload inside the envelope (JSON format), or
    /// flatten `payload["rows"]` when CSV was requested by the caller.
    pub fn emit_json(&self, payload: Value) -> std::io::Result<()> {
        let mut root = serde_json::Map::new();
        root.insert("schema".into(), json!(SCHEMA_VERSION));
        root.insert("tool".into(), json!("penning"));
        root.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        root.insert("command".into(), json!(self.command));
        for (k, v) in &self.meta {
            root.insert(k.clone(), json!(v));
        }
        if let Value::Object(extra) = payload {
            for (k, v) in extra {
                root.insert(k, v);
            }
        }
        let mut text = serde_json::to_string_pretty(&Value::Object(root)).expect("valid json");
        text.push('\n');
        self.deliver(text)
    }
}

/// Render an `f64` deterministically (shortest round-trip form).
pub fn fmt_f64(x: f64) -> String {
    format!("{x}")
}
