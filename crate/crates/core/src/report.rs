//! Bit-stable report serialization.
//!
//! JSON keeps struct field order, prints every float with 17 significant
//! digits (`-6.9314718055994529e-1`), writes non-finite floats as `null`, and
//! uses LF line endings. CSV is a flat table of the same numbers.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::criteria::CriterionReport;
use crate::error::{Error, Result};
use crate::products::GrowthReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Float with 17 significant digits; `None` for NaN and infinities.
pub fn fmt_f64(x: f64) -> Option<String> {
    x.is_finite().then(|| format!("{x:.16e}"))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => fmt_f64(*v).unwrap_or_else(|| v.to_string()),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

/// Anything the CLI can write as JSON or as a CSV table.
pub trait Report: Serialize {
    fn table(&self) -> Table;
}

impl Report for CriterionReport {
    fn table(&self) -> Table {
        Table {
            header: vec![
                "domain", "radius", "lhs", "lhs_stderr", "lhs_walks", "rhs", "rhs_stderr", "rhs_walks", "margin",
            ],
            rows: self
                .records
                .iter()
                .map(|r| {
                    vec![
                        r.domain.into(),
                        r.radius.into(),
                        r.lhs.value.into(),
                        r.lhs.stderr.into(),
                        r.lhs.walks_used.into(),
                        r.rhs.value.into(),
                        r.rhs.stderr.into(),
                        r.rhs.walks_used.into(),
                        r.margin.into(),
                    ]
                })
                .collect(),
        }
    }
}

impl Report for GrowthReport {
    fn table(&self) -> Table {
        Table {
            header: vec!["p", "sup_value", "j_max", "angles", "attained_re", "attained_im"],
            rows: vec![vec![
                self.p.into(),
                self.sup_value.into(),
                u64::from(self.grid_spec.j_max).into(),
                u64::from(self.grid_spec.angles).into(),
                self.attained_at.re.into(),
                self.attained_at.im.into(),
            ]],
        }
    }
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::Config(format!("cannot serialize report: {e}")))?;
    let mut out = String::new();
    write_value(&mut out, &v, 0);
    out.push('\n');
    Ok(out)
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = |out: &mut String, d: usize| out.push_str(&"  ".repeat(d));
    match v {
        Value::Number(n) => {
            if let Some(u) = n.as_u64() {
                let _ = write!(out, "{u}");
            } else if let Some(i) = n.as_i64() {
                let _ = write!(out, "{i}");
            } else {
                out.push_str(&n.as_f64().and_then(fmt_f64).unwrap_or_else(|| "null".into()));
            }
        }
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.len() <= 4 && items.iter().all(is_scalar) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(out, item, depth);
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                pad(out, depth + 1);
                write_value(out, item, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                pad(out, depth + 1);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, item, depth + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

pub fn to_csv(table: &Table) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Config(format!("cannot write CSV: {e}"));
    w.write_record(&table.header).map_err(csv_err)?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::render)).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Config(format!("cannot write CSV: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Config(e.to_string()))
}

pub fn render<R: Report + ?Sized>(report: &R, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(report),
        Format::Csv => to_csv(&report.table()),
    }
}

/// Writes the report to `path`, or to stdout when `path` is `None`.
pub fn emit_report<R: Report + ?Sized>(report: &R, format: Format, path: Option<&Path>) -> Result<()> {
    let text = render(report, format)?;
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}
