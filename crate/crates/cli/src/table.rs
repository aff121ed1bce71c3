//! Tabular output with deterministic number formatting.
//!
//! Every numeric cell is rounded to 12 significant digits before
//! serialization, so identical runs produce byte-identical CSV and JSON.

use serde_json::json;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    Null,
}

/// Rounds to 12 significant digits. Magnitudes below 1e-12 — under every
/// tolerance used in the library — are flushed to zero so float dust does
/// not surface as long decimal strings.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    if x.abs() < 1e-12 {
        return 0.0;
    }
    let mag = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(11 - mag);
    (x * scale).round() / scale
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: Vec<S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|v| match v {
                    Value::Num(x) => format!("{}", sig12(*x)),
                    Value::Int(i) => format!("{i}"),
                    Value::Bool(b) => format!("{b}"),
                    Value::Text(s) => s.clone(),
                    Value::Null => String::new(),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// JSON schema: `{"columns": [..], "rows": [[..], ..]}` with row cells
    /// in column order.
    pub fn to_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                serde_json::Value::Array(
                    row.iter()
                        .map(|v| match v {
                            Value::Num(x) => serde_json::Number::from_f64(sig12(*x))
                                .map(serde_json::Value::Number)
                                .unwrap_or(serde_json::Value::Null),
                            Value::Int(i) => json!(i),
                            Value::Bool(b) => json!(b),
                            Value::Text(s) => json!(s),
                            Value::Null => serde_json::Value::Null,
                        })
                        .collect(),
                )
            })
            .collect();
        let doc = json!({ "columns": self.columns, "rows": rows });
        let mut out = serde_json::to_string_pretty(&doc).expect("static schema");
        out.push('\n');
        out
    }
}
