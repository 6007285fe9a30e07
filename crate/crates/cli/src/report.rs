use bst_core::report::Status;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub findings: Vec<String>,
    pub payload: Value,
}

impl Report {
    pub fn new(command: &str, status: Status, findings: Vec<String>, payload: impl Serialize) -> Report {
        Report {
            command: command.to_string(),
            status,
            findings,
            payload: canonical(serde_json::to_value(payload).expect("payload serializes")),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass | Status::Waived => 0,
            Status::Fail => 1,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Text => {
                let mut out = format!("command: {}\nstatus: {}\n", self.command, status_word(self.status));
                for f in &self.findings {
                    out.push_str(f);
                    out.push('\n');
                }
                out
            }
        }
    }
}

pub fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Waived => "waived",
    }
}

/// Rebuilds every object with its keys sorted, whatever map backing
/// serde_json was compiled with.
pub fn canonical(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            let mut out = Map::new();
            for (k, v) in entries {
                out.insert(k, canonical(v));
            }
            Value::Object(out)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(canonical).collect()),
        other => other,
    }
}

pub fn to_json(value: impl Serialize) -> String {
    let v = canonical(serde_json::to_value(value).expect("value serializes"));
    let mut s = serde_json::to_string_pretty(&v).expect("json renders");
    s.push('\n');
    s
}
