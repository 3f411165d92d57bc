//! CSV tables and the run manifest.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(usize),
    Float(f64),
}

impl Cell {
    fn render(&self, buf: &mut String) {
        match *self {
            Cell::Int(n) => write!(buf, "{n}").unwrap(),
            Cell::Float(x) if x.is_nan() => buf.push_str("nan"),
            Cell::Float(x) if x.is_infinite() => buf.push_str(if x > 0.0 { "inf" } else { "-inf" }),
            Cell::Float(x) => write!(buf, "{x:.16e}").unwrap(),
        }
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub file: &'static str,
    pub header: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(file: &'static str, header: &'static [&'static str]) -> Self {
        Self { file, header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut buf = self.header.join(",");
        buf.push('\n');
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    buf.push(',');
                }
                cell.render(&mut buf);
            }
            buf.push('\n');
        }
        buf
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FileRecord {
    pub name: String,
    pub rows: usize,
}

pub fn write_csv(dir: &Path, table: &Table) -> Result<FileRecord, CliError> {
    std::fs::write(dir.join(table.file), table.to_csv())?;
    Ok(FileRecord { name: table.file.to_string(), rows: table.rows.len() })
}

/// Tail fit of one curve, as stored in the manifest.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitRecord {
    pub file: String,
    pub t: f64,
    /// `None` when the fit failed; `error` then says why.
    pub fit_a: Option<f64>,
    pub fit_b: Option<f64>,
    pub residual: Option<f64>,
    pub slope_stderr: Option<f64>,
    pub n_points_used: Option<usize>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentTiming {
    pub name: String,
    pub wall_clock_seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub command: String,
    pub version: String,
    pub config: ExperimentConfig,
    pub experiments: Vec<ExperimentTiming>,
    pub files: Vec<FileRecord>,
    pub fits: Vec<FitRecord>,
}

impl Manifest {
    pub fn new(
        command: &str,
        config: &ExperimentConfig,
        experiments: Vec<ExperimentTiming>,
        files: Vec<FileRecord>,
        fits: Vec<FitRecord>,
    ) -> Self {
        Self {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config: config.clone(),
            experiments,
            files,
            fits,
        }
    }

    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        let json = serde_json::to_string_pretty(self).map_err(|e| CliError::Runtime(e.to_string()))?;
        std::fs::write(dir.join("manifest.json"), json + "\n")?;
        Ok(())
    }
}
