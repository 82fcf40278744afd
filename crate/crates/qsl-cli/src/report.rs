//! Tabular reports with deterministic CSV and JSON encodings.
//!
//! Every command produces one [`Report`]: provenance comments, a fixed
//! column set, rows, and key/value summary entries. Rendering is free of
//! timestamps, locale, and iteration-order effects, so identical run
//! configurations produce byte-identical output.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::Path;

use serde_json::{Map, Number, Value as Json};

use crate::config::OutputFormat;

/// Format a float with 17 significant digits (lossless f64 round trip).
pub fn float17(x: f64) -> String {
    format!("{x:.16e}")
}

/// One table cell. Optional variants encode principled absences — an
/// orthogonality time that does not exist, a functional out of its domain —
/// as empty CSV fields / JSON nulls.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Integer datum (ids, counts).
    Int(u64),
    /// Optional integer datum.
    OptInt(Option<u64>),
    /// Required float datum.
    Float(f64),
    /// Optional float datum.
    OptFloat(Option<f64>),
    /// Short label (region letters, regime names, family names).
    Text(String),
}

impl Cell {
    fn to_csv_field(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::OptInt(Some(v)) => v.to_string(),
            Cell::Float(x) => float17(*x),
            Cell::OptFloat(Some(x)) => float17(*x),
            Cell::OptInt(None) | Cell::OptFloat(None) => String::new(),
            // Labels are crate-chosen short words; none contain separators.
            Cell::Text(s) => s.clone(),
        }
    }

    fn to_json_value(&self) -> Json {
        match self {
            Cell::Int(v) => Json::from(*v),
            Cell::OptInt(Some(v)) => Json::from(*v),
            Cell::Float(x) => float_json(*x),
            Cell::OptFloat(Some(x)) => float_json(*x),
            Cell::OptInt(None) | Cell::OptFloat(None) => Json::Null,
            Cell::Text(s) => Json::from(s.as_str()),
        }
    }
}

/// Finite floats become JSON numbers; non-finite values (never produced by
/// the pipeline, which reports domain errors instead) degrade to null.
fn float_json(x: f64) -> Json {
    Number::from_f64(x).map(Json::Number).unwrap_or(Json::Null)
}

/// One command's complete output.
#[derive(Debug, Clone, Default)]
pub struct Report {
    /// Provenance lines: what ran, with which resolved parameters.
    pub comments: Vec<String>,
    /// Column names, fixed for the whole report.
    pub columns: Vec<String>,
    /// Records; every row has exactly one cell per column.
    pub rows: Vec<Vec<Cell>>,
    /// Aggregate key/value entries appended after the records.
    pub summary: Vec<(String, Cell)>,
}

impl Report {
    /// CSV encoding: `#` comment lines, a header row, one line per record,
    /// then summary entries as trailing `#` lines.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for line in &self.comments {
            let _ = writeln!(out, "# {line}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            debug_assert_eq!(row.len(), self.columns.len(), "ragged report row");
            let fields: Vec<String> = row.iter().map(Cell::to_csv_field).collect();
            let _ = writeln!(out, "{}", fields.join(","));
        }
        for (key, value) in &self.summary {
            let _ = writeln!(out, "# {key} = {}", value.to_csv_field());
        }
        out
    }

    /// JSON encoding: one object with `meta`, `columns`, `records` (one
    /// object per row), and `summary` members.
    pub fn to_json(&self) -> Json {
        let records: Vec<Json> = self
            .rows
            .iter()
            .map(|row| {
                debug_assert_eq!(row.len(), self.columns.len(), "ragged report row");
                let mut object = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    object.insert(name.clone(), cell.to_json_value());
                }
                Json::Object(object)
            })
            .collect();
        let mut summary = Map::new();
        for (key, value) in &self.summary {
            summary.insert(key.clone(), value.to_json_value());
        }
        serde_json::json!({
            "meta": self.comments,
            "columns": self.columns,
            "records": records,
            "summary": summary,
        })
    }

    /// Render in the requested encoding (always newline-terminated).
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => {
                let mut text = serde_json::to_string_pretty(&self.to_json())
                    .expect("report JSON has no non-serializable values");
                text.push('\n');
                text
            }
        }
    }

    /// Write the rendered report to `path`, or to stdout when absent.
    pub fn write(&self, format: OutputFormat, path: Option<&Path>) -> io::Result<()> {
        let text = self.render(format);
        match path {
            Some(p) => fs::write(p, text),
            None => io::stdout().lock().write_all(text.as_bytes()),
        }
    }
}
