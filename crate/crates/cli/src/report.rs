//! Tabular output with a config header, rendered as JSON or CSV.

use std::io::Write;

use serde_json::{Map, Number, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug)]
pub enum Cell {
    Str(String),
    Int(i64),
    Float(f64),
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Str(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Str(s)
    }
}

impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

/// Rounds to `digits` significant digits so output is stable across platforms.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x).parse().unwrap_or(x)
}

pub struct Report {
    pub command: &'static str,
    pub config: Map<String, Value>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Map<String, Value>,
    pub precision: usize,
}

impl Report {
    pub fn new(command: &'static str, precision: usize) -> Self {
        Report { command, config: Map::new(), columns: Vec::new(), rows: Vec::new(), summary: Map::new(), precision }
    }

    pub fn config(&mut self, key: &str, v: impl Into<Value>) {
        self.config.insert(key.to_string(), v.into());
    }

    pub fn summary(&mut self, key: &str, v: impl Into<Value>) {
        self.summary.insert(key.to_string(), v.into());
    }

    pub fn float(&self, x: f64) -> Value {
        Number::from_f64(round_sig(x, self.precision)).map(Value::Number).unwrap_or(Value::Null)
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    fn cell_json(&self, c: &Cell) -> Value {
        match c {
            Cell::Str(s) => Value::String(s.clone()),
            Cell::Int(i) => Value::from(*i),
            Cell::Float(x) => self.float(*x),
        }
    }

    fn cell_text(&self, c: &Cell) -> String {
        match c {
            Cell::Str(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => self.float(*x).to_string(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut top = Map::new();
        top.insert("command".into(), self.command.into());
        top.insert("config".into(), Value::Object(self.config.clone()));
        top.insert("columns".into(), self.columns.iter().map(|c| Value::from(*c)).collect());
        top.insert(
            "rows".into(),
            self.rows.iter().map(|r| Value::Array(r.iter().map(|c| self.cell_json(c)).collect())).collect(),
        );
        top.insert("summary".into(), Value::Object(self.summary.clone()));
        Value::Object(top)
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
                writeln!(out)
            }
            Format::Csv => {
                writeln!(out, "# command: {}", self.command)?;
                for (k, v) in &self.config {
                    writeln!(out, "# config.{k}: {v}")?;
                }
                for (k, v) in &self.summary {
                    writeln!(out, "# summary.{k}: {v}")?;
                }
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.columns)?;
                for r in &self.rows {
                    w.write_record(r.iter().map(|c| self.cell_text(c)))?;
                }
                w.flush()
            }
        }
    }
}
