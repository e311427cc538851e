use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// What a command produced. `object` is the artifact (written to `--out` when
/// given), `report` its verification, `extra` any diagnostics that belong next
/// to the report.
pub struct Emit {
    pub pass: bool,
    pub object: Option<Value>,
    pub report: Value,
    pub extra: Map<String, Value>,
    pub summary: Vec<String>,
}

impl Emit {
    pub fn new(pass: bool, report: impl Serialize) -> Self {
        Self { pass, object: None, report: to_value(report), extra: Map::new(), summary: Vec::new() }
    }

    pub fn object(mut self, object: impl Serialize) -> Self {
        self.object = Some(to_value(object));
        self
    }

    pub fn extra(mut self, key: &str, value: impl Serialize) -> Self {
        self.extra.insert(key.to_owned(), to_value(value));
        self
    }

    pub fn line(mut self, line: impl Into<String>) -> Self {
        self.summary.push(line.into());
        self
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("library types serialize to JSON")
}

pub fn write(emit: Emit, format: Format, out: Option<&Path>) -> std::io::Result<()> {
    let mut doc = Map::new();
    if let Some(obj) = &emit.object {
        match out {
            Some(path) => {
                let mut body = serde_json::to_string(obj).expect("values serialize");
                body.push('\n');
                fs::write(path, body)?;
                doc.insert("written".into(), Value::String(path.display().to_string()));
            }
            None => {
                doc.insert("object".into(), obj.clone());
            }
        }
    }
    doc.insert("pass".into(), Value::Bool(emit.pass));
    doc.insert("report".into(), emit.report);
    doc.extend(emit.extra);

    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut lock, &Value::Object(doc)).expect("values serialize");
            writeln!(lock)
        }
        Format::Text => {
            for line in &emit.summary {
                writeln!(lock, "{line}")?;
            }
            if let Some(Value::String(path)) = doc.get("written") {
                writeln!(lock, "wrote {path}")?;
            }
            writeln!(lock, "{}", if emit.pass { "PASS" } else { "FAIL" })
        }
    }
}

/// Reads a JSON document; a CLI output document is unwrapped to its `object`.
pub fn read_object(path: &PathBuf) -> Result<String, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let inner = match value {
        Value::Object(mut m) if m.contains_key("object") => m.remove("object").expect("checked"),
        other => other,
    };
    Ok(inner.to_string())
}
