//! Tabular sweep results and their CSV / JSON serialisation.
//!
//! Floats are written with 17 significant digits in Rust's `{:.16e}` form
//! (`-1.2345678901234567e-3`), which round-trips every `f64` exactly and is
//! byte-stable across runs.

use serde::ser::{Serialize, SerializeMap, SerializeSeq, Serializer};
use serde_json::value::RawValue;

use crate::error::ScanError;

/// A single table entry.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    /// Divergent quantity (for example a sensitivity at a stationary point).
    Inf,
    /// Not computed because of an error recorded in the row.
    Empty,
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Cell::Num(v) => Some(v),
            Cell::Int(v) => Some(v as f64),
            Cell::Inf => Some(f64::INFINITY),
            Cell::Empty => None,
        }
    }

    pub fn render(&self) -> String {
        match *self {
            Cell::Num(v) => format_float(v),
            Cell::Int(v) => v.to_string(),
            Cell::Inf => "inf".into(),
            Cell::Empty => String::new(),
        }
    }
}

/// 17 significant digits, with `inf`, `-inf` and `nan` spelled out.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.16e}")
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match *self {
            Cell::Num(v) if v.is_finite() => {
                let raw = RawValue::from_string(format_float(v)).map_err(serde::ser::Error::custom)?;
                raw.serialize(s)
            }
            Cell::Num(v) => s.serialize_str(&format_float(v)),
            Cell::Int(v) => s.serialize_i64(v),
            Cell::Inf => s.serialize_str("inf"),
            Cell::Empty => s.serialize_none(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub cells: Vec<Cell>,
    pub error: Option<String>,
}

/// Result of a sweep: a self-describing header plus rows.
#[derive(Debug, Clone)]
pub struct Table {
    /// Serialised into the first line of CSV output and the `header` field
    /// of JSON output.
    pub header: serde_json::Value,
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
}

/// Output format of tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl Table {
    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Values of a column; errors and empty cells become `None`.
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r.cells[i].as_f64()).collect())
    }

    pub fn to_csv(&self) -> Result<String, ScanError> {
        let mut out = format!("# {}\n", serde_json::to_string(&self.header)?);
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        let mut names = self.columns.clone();
        names.push("error".into());
        w.write_record(&names)?;
        for row in &self.rows {
            let mut fields: Vec<String> = row.cells.iter().map(Cell::render).collect();
            fields.push(row.error.clone().unwrap_or_default());
            w.write_record(&fields)?;
        }
        let body = w.into_inner().map_err(|e| ScanError::Config(e.to_string()))?;
        out.push_str(&String::from_utf8(body).expect("csv output is utf-8"));
        Ok(out)
    }

    pub fn to_json(&self) -> Result<String, ScanError> {
        let mut text = serde_json::to_string_pretty(&JsonTable(self))?;
        text.push('\n');
        Ok(text)
    }

    pub fn render(&self, format: Format) -> Result<String, ScanError> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

struct JsonTable<'a>(&'a Table);
struct JsonRow<'a>(&'a [String], &'a Row);

impl Serialize for JsonTable<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let t = self.0;
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("header", &t.header)?;
        m.serialize_entry("columns", &t.columns)?;
        m.serialize_entry("rows", &JsonRows(t))?;
        m.end()
    }
}

struct JsonRows<'a>(&'a Table);

impl Serialize for JsonRows<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.rows.len()))?;
        for row in &self.0.rows {
            seq.serialize_element(&JsonRow(&self.0.columns, row))?;
        }
        seq.end()
    }
}

impl Serialize for JsonRow<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len() + 1))?;
        for (name, cell) in self.0.iter().zip(&self.1.cells) {
            m.serialize_entry(name, cell)?;
        }
        m.serialize_entry("error", &self.1.error)?;
        m.end()
    }
}
