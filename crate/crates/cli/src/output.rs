use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::args::Format;
use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

pub fn schema(kind: &str) -> String {
    format!("entfluct/{kind}/v{SCHEMA_VERSION}")
}

/// Rows of optional values under named columns. `None` is an undefined
/// value (empty CSV cell, JSON null).
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Option<f64>>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// 17 significant digits, enough to round-trip any f64.
pub fn format_cell(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x:.16e}"),
        None => String::new(),
    }
}

#[derive(Serialize)]
struct RowsDocument<'a, I: Serialize> {
    schema: String,
    inputs: &'a I,
    columns: &'a [&'static str],
    rows: &'a [Vec<Option<f64>>],
}

#[derive(Serialize)]
struct ResultDocument<'a, I: Serialize, R: Serialize> {
    schema: String,
    inputs: &'a I,
    result: &'a R,
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| CliError::io(p, e))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn finish(mut w: Box<dyn Write>, path: Option<&Path>) -> Result<(), CliError> {
    w.flush().map_err(|e| CliError::io(path.unwrap_or(Path::new("<stdout>")), e))
}

pub fn write_table<I: Serialize>(
    table: &Table,
    kind: &str,
    inputs: &I,
    format: Format,
    path: Option<&Path>,
) -> Result<(), CliError> {
    let mut w = sink(path)?;
    let io_err = |e: io::Error| CliError::io(path.unwrap_or(Path::new("<stdout>")), e);
    match format {
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(&mut w);
            csv.write_record(&table.columns)
                .map_err(|e| io_err(e.into()))?;
            for row in &table.rows {
                csv.write_record(row.iter().map(|v| format_cell(*v)))
                    .map_err(|e| io_err(e.into()))?;
            }
            csv.flush().map_err(io_err)?;
        }
        Format::Json => {
            let doc = RowsDocument {
                schema: schema(kind),
                inputs,
                columns: &table.columns,
                rows: &table.rows,
            };
            serde_json::to_writer_pretty(&mut w, &doc).map_err(|e| io_err(e.into()))?;
            writeln!(w).map_err(io_err)?;
        }
    }
    finish(w, path)
}

pub fn write_record<I: Serialize, R: Serialize>(
    kind: &str,
    inputs: &I,
    result: &R,
    path: Option<&Path>,
) -> Result<(), CliError> {
    let mut w = sink(path)?;
    let io_err = |e: io::Error| CliError::io(path.unwrap_or(Path::new("<stdout>")), e);
    let doc = ResultDocument {
        schema: schema(kind),
        inputs,
        result,
    };
    serde_json::to_writer_pretty(&mut w, &doc).map_err(|e| io_err(e.into()))?;
    writeln!(w).map_err(io_err)?;
    finish(w, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cells_round_trip() {
        for x in [std::f64::consts::PI, 1e-300, -2.5, 0.1 + 0.2] {
            let s = format_cell(Some(x));
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        assert_eq!(format_cell(None), "");
    }
}
