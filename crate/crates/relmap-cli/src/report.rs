//! Result tables and their CSV/JSON emitters.
//!
//! CSV is comma-separated, header row, UTF-8, LF line endings; floats are
//! printed with 17 significant digits so a re-ingested table is bit-exact.

use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Text(String),
    Float(f64),
    Int(i64),
}

impl Cell {
    fn render_csv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Float(x) => format_float(*x),
            Cell::Int(n) => n.to_string(),
        }
    }

    fn render_json(&self) -> Value {
        match self {
            Cell::Text(s) => json!(s),
            Cell::Float(x) => json!(x),
            Cell::Int(n) => json!(n),
        }
    }
}

/// 17 significant digits: enough for bit-faithful f64 round trips.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::render_csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "columns": self.columns,
            "rows": self.rows.iter().map(|row| {
                Value::Array(row.iter().map(Cell::render_json).collect())
            }).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl ReportFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            ReportFormat::Csv => "csv",
            ReportFormat::Json => "json",
        }
    }
}

/// Writes the table in the requested format; returns the path written.
pub fn emit_report(
    table: &Table,
    out_dir: &std::path::Path,
    stem: &str,
    format: ReportFormat,
) -> std::io::Result<std::path::PathBuf> {
    std::fs::create_dir_all(out_dir)?;
    let path = out_dir.join(format!("{stem}.{}", format.extension()));
    let body = match format {
        ReportFormat::Csv => table.to_csv(),
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&table.to_json()).expect("table encodes");
            s.push('\n');
            s
        }
    };
    std::fs::write(&path, body)?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_table() -> Table {
        let mut t = Table::new(vec!["sample", "value"]);
        t.push(vec![Cell::Text("a".into()), Cell::Float(0.1 + 0.2)]);
        t.push(vec![Cell::Text("b".into()), Cell::Float(-1.0 / 3.0)]);
        t
    }

    #[test]
    fn empty_table_is_header_only() {
        let t = Table::new(vec!["sample", "residual"]);
        assert_eq!(t.to_csv(), "sample,residual\n");
    }

    #[test]
    fn csv_floats_round_trip() {
        let t = sample_table();
        let csv = t.to_csv();
        for (line, row) in csv.lines().skip(1).zip(&t.rows) {
            let printed: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
            let Cell::Float(original) = row[1] else {
                panic!()
            };
            assert_eq!(printed.to_bits(), original.to_bits());
        }
    }

    #[test]
    fn json_round_trip_reproduces_the_table() {
        let t = sample_table();
        let value = t.to_json();
        let text = serde_json::to_string(&value).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, value);
        // and the float cells re-ingest bit-exactly
        let rows = parsed["rows"].as_array().unwrap();
        for (row, expect) in rows.iter().zip(&t.rows) {
            let Cell::Float(original) = expect[1] else {
                panic!()
            };
            assert_eq!(row[1].as_f64().unwrap().to_bits(), original.to_bits());
        }
    }
}
