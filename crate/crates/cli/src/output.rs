//! `result.csv` and `report.json`.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

use crate::config::Assertion;

/// One cell of a CSV row.
pub enum Cell {
    Int(i64),
    Real(f64),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<isize> for Cell {
    fn from(v: isize) -> Self {
        Cell::Int(v as i64)
    }
}

/// Streaming CSV writer: a one-line header, then reals with 17 significant
/// digits so every value round-trips exactly.
pub struct Csv {
    out: BufWriter<File>,
    width: usize,
}

impl Csv {
    pub fn create(path: &Path, header: &[String]) -> Result<Self> {
        let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
        let mut out = BufWriter::new(file);
        writeln!(out, "{}", header.join(","))?;
        Ok(Self { out, width: header.len() })
    }

    pub fn row(&mut self, cells: &[Cell]) -> Result<()> {
        debug_assert_eq!(cells.len(), self.width);
        for (k, c) in cells.iter().enumerate() {
            if k > 0 {
                self.out.write_all(b",")?;
            }
            match c {
                Cell::Int(v) => write!(self.out, "{v}")?,
                Cell::Real(v) => write!(self.out, "{v:.16e}")?,
            }
        }
        self.out.write_all(b"\n")?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<()> {
        self.out.flush()?;
        Ok(())
    }
}

#[derive(Debug, Serialize)]
pub struct AssertionResult {
    pub metric: String,
    pub min: Option<f64>,
    pub max: Option<f64>,
    /// `None` when the command does not report this metric.
    pub value: Option<f64>,
    pub passed: bool,
}

/// Contents of `report.json`.
#[derive(Debug, Serialize)]
pub struct Report<D: Serialize> {
    pub command: &'static str,
    pub parallel: bool,
    /// Named scalars that assertions can refer to.
    pub metrics: BTreeMap<String, f64>,
    pub assertions: Vec<AssertionResult>,
    pub passed: bool,
    pub details: D,
}

impl<D: Serialize> Report<D> {
    pub fn new(command: &'static str, metrics: BTreeMap<String, f64>, assertions: &[Assertion], details: D) -> Self {
        let assertions: Vec<AssertionResult> = assertions
            .iter()
            .map(|a| {
                let value = metrics.get(&a.metric).copied();
                let passed = value.is_some_and(|v| a.min.is_none_or(|lo| v >= lo) && a.max.is_none_or(|hi| v <= hi));
                AssertionResult { metric: a.metric.clone(), min: a.min, max: a.max, value, passed }
            })
            .collect();
        let passed = assertions.iter().all(|a| a.passed);
        Self { command, parallel: jumpspec::par::is_parallel(), metrics, assertions, passed, details }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
    }
}

/// NaN-aware maximum of absolute values.
pub fn max_abs(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, |m, v| if v.is_nan() || m.is_nan() { f64::NAN } else { m.max(v.abs()) })
}
