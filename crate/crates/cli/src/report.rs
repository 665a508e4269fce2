//! Report assembly and the JSON/CSV emitters.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::{Map, Value};

pub const SCHEMA: u64 = 1;

pub struct Report {
    command: &'static str,
    paper_ref: &'static str,
    fields: Map<String, Value>,
    cases: Option<Vec<Map<String, Value>>>,
    first_failure: Option<String>,
}

impl Report {
    pub fn new(command: &'static str, paper_ref: &'static str) -> Self {
        Report {
            command,
            paper_ref,
            fields: Map::new(),
            cases: None,
            first_failure: None,
        }
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        let v = serde_json::to_value(value).expect("report values serialize");
        self.fields.insert(key.to_string(), v);
        self
    }

    /// Appends one batch case; `value` must serialize to a JSON object.
    pub fn push_case(&mut self, value: impl Serialize) {
        let Value::Object(map) = serde_json::to_value(value).expect("report values serialize")
        else {
            panic!("a case must serialize to an object");
        };
        self.cases.get_or_insert_with(Vec::new).push(map);
    }

    /// Merges an object into the top-level fields.
    pub fn extend(&mut self, value: impl Serialize) {
        let Value::Object(map) = serde_json::to_value(value).expect("report values serialize")
        else {
            panic!("extend needs an object");
        };
        self.fields.extend(map);
    }

    /// Records a failed check; only the first one is kept.
    pub fn fail(&mut self, what: impl Into<String>) {
        if self.first_failure.is_none() {
            self.first_failure = Some(what.into());
        }
    }

    pub fn ok(&self) -> bool {
        self.first_failure.is_none()
    }

    fn header(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("schema".into(), SCHEMA.into());
        m.insert("command".into(), self.command.into());
        m.insert("paper_ref".into(), self.paper_ref.into());
        m.insert("ok".into(), self.ok().into());
        m.insert(
            "first_failure".into(),
            self.first_failure
                .clone()
                .map_or(Value::Null, Value::String),
        );
        m
    }

    pub fn to_json(&self) -> String {
        let mut m = self.header();
        for (k, v) in &self.fields {
            m.insert(k.clone(), v.clone());
        }
        if let Some(cases) = &self.cases {
            m.insert(
                "cases".into(),
                Value::Array(cases.iter().cloned().map(Value::Object).collect()),
            );
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("JSON values serialize");
        s.push('\n');
        s
    }

    /// One row per case, or a single row of top-level fields. Scalar columns
    /// are written as-is, nested values as compact JSON.
    pub fn to_csv(&self) -> String {
        let rows: Vec<Map<String, Value>> = match &self.cases {
            Some(cases) => cases.clone(),
            None => vec![self.fields.clone()],
        };
        let header = self.header();
        let columns: BTreeSet<&String> = rows.iter().flat_map(|r| r.keys()).collect();
        let mut w = csv::Writer::from_writer(Vec::new());
        let names = header.keys().chain(columns.iter().copied());
        w.write_record(names).expect("in-memory write");
        for row in &rows {
            let cells = header
                .values()
                .chain(columns.iter().map(|c| row.get(*c).unwrap_or(&Value::Null)))
                .map(cell);
            w.write_record(cells).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8")
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(_) | Value::Number(_) => v.to_string(),
        _ => serde_json::to_string(v).expect("JSON values serialize"),
    }
}
