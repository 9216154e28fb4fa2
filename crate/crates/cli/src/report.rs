use std::fmt::Display;
use std::io::{self, Write};
use std::str::FromStr;

use serde_json::{json, Map, Number, Value};

use crate::config::{Config, OutputFormat};

pub(crate) const SCHEMA: u32 = 1;

/// Integer of any size as a JSON number.
pub(crate) fn big(v: impl Display) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("integer literal"))
}

/// Run parameters recorded in every report. Thread count is left out since
/// it never changes the output.
fn provenance(config: &Config, extra: &[(&'static str, Value)]) -> Map<String, Value> {
    let mut map = Map::new();
    for (k, v) in extra {
        map.insert((*k).into(), v.clone());
    }
    map.insert("sieve_limit".into(), json!(config.sieve_limit));
    map.insert("scan_cap".into(), json!(config.scan_cap));
    map.insert("exact_cap".into(), json!(config.exact_cap));
    map.insert(
        "probable_prime_rounds".into(),
        json!(config.probable_prime_rounds),
    );
    map.insert("seed".into(), json!(config.seed));
    map
}

/// `# command key=value ...`, the first line of text and CSV output.
pub(crate) fn header(command: &str, config: &Config, extra: &[(&'static str, Value)]) -> String {
    let mut line = format!("# {command}");
    for (k, v) in provenance(config, extra) {
        let v = match v {
            Value::String(s) => s,
            other => other.to_string(),
        };
        line.push_str(&format!(" {k}={v}"));
    }
    line.push('\n');
    line
}

/// A finished report in all three renderings.
pub(crate) struct Report {
    pub command: &'static str,
    pub params: Vec<(&'static str, Value)>,
    pub body: Map<String, Value>,
    pub text: String,
    /// Commands without a tabular form print their text rendering for CSV.
    pub csv: Option<String>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            params: Vec::new(),
            body: Map::new(),
            text: String::new(),
            csv: None,
        }
    }

    pub fn param(&mut self, key: &'static str, value: Value) {
        self.params.push((key, value));
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.body.insert(key.into(), value);
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn emit(self, config: &Config, out: &mut dyn Write) -> io::Result<()> {
        match config.output_format {
            OutputFormat::Json => {
                let mut doc = Map::new();
                doc.insert("schema".into(), json!(SCHEMA));
                doc.insert("command".into(), json!(self.command));
                doc.extend(self.body);
                doc.insert(
                    "provenance".into(),
                    Value::Object(provenance(config, &self.params)),
                );
                serde_json::to_writer(&mut *out, &Value::Object(doc))?;
                writeln!(out)
            }
            OutputFormat::Text => {
                out.write_all(header(self.command, config, &self.params).as_bytes())?;
                out.write_all(self.text.as_bytes())
            }
            OutputFormat::Csv => {
                out.write_all(header(self.command, config, &self.params).as_bytes())?;
                out.write_all(self.csv.as_ref().unwrap_or(&self.text).as_bytes())
            }
        }
    }
}
