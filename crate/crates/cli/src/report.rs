//! Line-oriented reports.
//!
//! A report is a list of records, each a kind plus named fields. The
//! machine-readable form is one JSON object per line with the kind under
//! `record`; keys are sorted, so equal reports give equal bytes.

use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    records: Vec<(String, Map<String, Value>)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a record; `fields` must be a JSON object.
    pub fn push(&mut self, kind: &str, fields: Value) {
        let Value::Object(map) = fields else { panic!("record fields must be an object") };
        self.records.push((kind.to_string(), map));
    }

    pub fn records(&self) -> impl Iterator<Item = (&str, &Map<String, Value>)> {
        self.records.iter().map(|(k, m)| (k.as_str(), m))
    }

    /// The first record of `kind`.
    pub fn find(&self, kind: &str) -> Option<&Map<String, Value>> {
        self.records().find(|(k, _)| *k == kind).map(|(_, m)| m)
    }

    pub fn render(&self, format: OutputFormat) -> String {
        let mut out = String::new();
        for (kind, fields) in &self.records {
            match format {
                OutputFormat::Json => {
                    let mut obj = fields.clone();
                    obj.insert("record".into(), Value::String(kind.clone()));
                    out.push_str(&Value::Object(obj).to_string());
                }
                OutputFormat::Text => {
                    out.push_str(kind);
                    for (k, v) in fields {
                        out.push(' ');
                        out.push_str(k);
                        out.push('=');
                        match v {
                            Value::String(s) => out.push_str(s),
                            other => out.push_str(&other.to_string()),
                        }
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}
