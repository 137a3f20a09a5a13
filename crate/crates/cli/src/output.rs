use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// One command result, renderable in every output format.
///
/// Counts are carried as decimal strings everywhere so that no format
/// truncates them.
#[derive(Debug, Clone)]
pub struct Record {
    pub query: Map<String, Value>,
    pub result: Value,
    pub extra: Vec<(String, Value)>,
    pub text: String,
    pub csv_header: Vec<String>,
    pub csv_rows: Vec<Vec<String>>,
}

impl Record {
    pub fn new(query: Value) -> Self {
        let query = match query {
            Value::Object(map) => map,
            _ => Map::new(),
        };
        Record {
            query,
            result: Value::Null,
            extra: Vec::new(),
            text: String::new(),
            csv_header: Vec::new(),
            csv_rows: Vec::new(),
        }
    }

    /// A single decimal result.
    pub fn scalar(query: Value, value: String) -> Self {
        let mut rec = Record::new(query);
        rec.text = value.clone();
        rec.csv_header = rec.query.keys().cloned().chain(["result".into()]).collect();
        let mut row: Vec<String> = rec.query.values().map(csv_cell).collect();
        row.push(value.clone());
        rec.csv_rows = vec![row];
        rec.result = Value::String(value);
        rec
    }

    /// A list of rows. The JSON result is an array of objects keyed by
    /// `columns`; text is one tab-separated line per row.
    pub fn rows(query: Value, columns: &[&str], rows: Vec<Vec<Value>>) -> Self {
        let mut rec = Record::new(query);
        rec.text = rows
            .iter()
            .map(|r| r.iter().map(text_cell).collect::<Vec<_>>().join("\t"))
            .collect::<Vec<_>>()
            .join("\n");
        rec.csv_header = columns.iter().map(|c| c.to_string()).collect();
        rec.csv_rows = rows
            .iter()
            .map(|r| r.iter().map(csv_cell).collect())
            .collect();
        rec.result = Value::Array(
            rows.into_iter()
                .map(|row| Value::Object(columns.iter().map(|c| c.to_string()).zip(row).collect()))
                .collect(),
        );
        rec
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => {
                let mut obj = Map::new();
                obj.insert("query".into(), Value::Object(self.query.clone()));
                obj.insert("result".into(), self.result.clone());
                for (k, v) in &self.extra {
                    obj.insert(k.clone(), v.clone());
                }
                Value::Object(obj).to_string()
            }
            Format::Csv => {
                let mut lines = vec![self.csv_header.join(",")];
                lines.extend(self.csv_rows.iter().map(|r| r.join(",")));
                lines.join("\n")
            }
        }
    }
}

/// Sets inside CSV cells use spaces so the cell needs no quoting.
pub fn csv_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(csv_cell).collect::<Vec<_>>().join(" "),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Sets print as `{2,4}` in text output.
pub fn text_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(text_cell).collect();
            format!("{{{}}}", inner.join(","))
        }
        Value::Null => String::new(),
        other => other.to_string(),
    }
}
