use std::io::Write;

use serde_json::{Map, Value};

use crate::Format;

/// One command's result in all three renderings.
pub struct Report {
    pub json: Map<String, Value>,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub text: String,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut json = Map::new();
        json.insert("schema".into(), Value::from(1));
        json.insert("command".into(), Value::from(command));
        Report { json, header: Vec::new(), rows: Vec::new(), text: String::new() }
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.json.insert(key.into(), v.into());
    }

    /// Copies every field of a serialized struct into the top level.
    pub fn extend(&mut self, v: Value) {
        if let Value::Object(m) = v {
            self.json.extend(m);
        }
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> anyhow::Result<()> {
        match format {
            Format::Json => json(&Value::Object(self.json.clone()), out)?,
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.header)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                w.flush()?;
            }
            Format::Text => out.write_all(self.text.as_bytes())?,
        }
        Ok(())
    }
}

pub fn json(v: &Value, out: &mut dyn Write) -> anyhow::Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

/// Wide integers go out as strings.
pub fn s(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

pub fn opt_s<T: ToString>(v: Option<T>) -> Value {
    v.map_or(Value::Null, s)
}

pub fn cell<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}
