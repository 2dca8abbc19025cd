//! Column-oriented tables written as CSV or JSON.

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Column {
    Num(Vec<f64>),
    Int(Vec<u64>),
    Text(Vec<String>),
}

impl Column {
    fn len(&self) -> usize {
        match self {
            Column::Num(v) => v.len(),
            Column::Int(v) => v.len(),
            Column::Text(v) => v.len(),
        }
    }

    fn extend(&mut self, other: Column) {
        match (self, other) {
            (Column::Num(a), Column::Num(b)) => a.extend(b),
            (Column::Int(a), Column::Int(b)) => a.extend(b),
            (Column::Text(a), Column::Text(b)) => a.extend(b),
            _ => panic!("column type mismatch"),
        }
    }

    fn cell(&self, i: usize) -> String {
        match self {
            Column::Num(v) => fmt_f64(v[i]),
            Column::Int(v) => v[i].to_string(),
            Column::Text(v) => csv_quote(&v[i]),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Column::Num(v) => v.iter().map(|&x| num(x)).collect(),
            Column::Int(v) => json!(v),
            Column::Text(v) => json!(v),
        }
    }
}

/// 17 significant digits round-trip every double.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Non-finite values become `null`.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    names: Vec<String>,
    columns: Vec<Column>,
    pub metadata: Map<String, Value>,
}

impl Table {
    pub fn push(&mut self, name: impl Into<String>, col: Column) {
        if let Some(first) = self.columns.first() {
            assert_eq!(first.len(), col.len(), "ragged table");
        }
        self.names.push(name.into());
        self.columns.push(col);
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, Column::len)
    }

    /// Stack `other` below `self`. Both must have the same columns.
    pub fn append(&mut self, other: Table) {
        if self.columns.is_empty() {
            self.names = other.names;
            self.columns = other.columns;
            return;
        }
        assert_eq!(self.names, other.names, "column mismatch");
        for (c, o) in self.columns.iter_mut().zip(other.columns) {
            c.extend(o);
        }
    }

    /// Prepend a column repeating `value` on every row.
    pub fn with_leading(mut self, name: &str, value: f64) -> Self {
        let n = self.rows();
        self.names.insert(0, name.to_string());
        self.columns.insert(0, Column::Num(vec![value; n]));
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    fn to_csv(&self) -> String {
        let mut out = self.names.iter().map(|n| csv_quote(n)).collect::<Vec<_>>().join(",");
        out.push('\n');
        for i in 0..self.rows() {
            let row: Vec<String> = self.columns.iter().map(|c| c.cell(i)).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    fn to_json(&self) -> String {
        let columns: Vec<Value> = self
            .names
            .iter()
            .zip(&self.columns)
            .map(|(n, c)| json!({ "name": n, "values": c.to_json() }))
            .collect();
        let doc = json!({ "metadata": self.metadata, "columns": columns });
        let mut s = serde_json::to_string_pretty(&doc).expect("json values are always serializable");
        s.push('\n');
        s
    }
}
