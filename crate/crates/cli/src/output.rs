use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use rjspectral::{IterationReport, SolverConfig64, SpectralSolution64};
use serde::{Deserialize, Serialize};

/// Printed precision for CSV cells.
pub const DECIMALS: usize = 10;

pub fn fmt(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.DECIMALS$}")
    } else {
        v.to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub x: f64,
    pub f: f64,
    pub fp: f64,
    pub fpp: f64,
}

/// Everything a `solve` run produces except timing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub config: SolverConfig64,
    pub coefficients: Vec<f64>,
    pub rows: Vec<Row>,
    pub reports: Vec<IterationReport>,
    pub converged: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunMeta {
    pub record: PathBuf,
    pub wall_time_s: f64,
}

pub fn rows(sol: &SpectralSolution64, xs: &[f64]) -> Result<Vec<Row>> {
    xs.iter()
        .map(|&x| {
            let [f, fp, fpp, _] = sol.derivatives(x)?;
            Ok(Row { x, f, fp, fpp })
        })
        .collect()
}

impl RunRecord {
    pub fn new(config: SolverConfig64, sol: &SpectralSolution64, xs: &[f64]) -> Result<Self> {
        Ok(Self {
            config,
            coefficients: sol.coefficients().as_slice().to_vec(),
            rows: rows(sol, xs)?,
            reports: sol.reports.clone(),
            converged: sol.converged,
        })
    }
}

/// Opens `path` for writing, or stdout when `None`.
pub fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn csv_writer(path: Option<&Path>) -> Result<csv::Writer<Box<dyn Write>>> {
    Ok(csv::Writer::from_writer(sink(path)?))
}

pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}
