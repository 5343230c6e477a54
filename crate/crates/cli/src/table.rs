//! Deterministic table output: CSV with a comment header block and a single
//! column-name row, or JSON with a `meta`/`data` split. Floats print with 17
//! significant digits in lowercase scientific notation so a parse of the
//! emitted text reproduces every bit.

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => fmt_float(*v),
            Cell::Text(v) => {
                if v.contains(',') || v.contains('"') || v.contains('\n') {
                    format!("\"{}\"", v.replace('"', "\"\""))
                } else {
                    v.clone()
                }
            }
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) => json!(v),
            Cell::Text(v) => json!(v),
        }
    }
}

/// 17 significant digits, lowercase scientific: lossless for f64.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone)]
pub struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width mismatch");
        self.rows.push(row);
    }

    pub fn to_csv(&self, meta: &[(String, String)]) -> String {
        let mut out = String::new();
        for (key, value) in meta {
            out.push_str(&format!("# {key} = {value}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, meta: &[(String, String)]) -> String {
        let mut meta_map = Map::new();
        for (key, value) in meta {
            meta_map.insert(key.clone(), json!(value));
        }
        let data: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    obj.insert((*name).to_string(), cell.json());
                }
                Value::Object(obj)
            })
            .collect();
        let doc = json!({
            "meta": { "config": Value::Object(meta_map), "version": env!("CARGO_PKG_VERSION") },
            "data": data,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("tables serialize");
        text.push('\n');
        text
    }
}
