//! In-memory result tables and their CSV encoding.

use std::path::Path;

use serde::Serialize;

use crate::error::RunError;

/// Shortest round-trip text for a float; exponent form for very large or
/// small magnitudes.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// UTF-8, comma separated, LF line endings, header always present.
    pub fn to_csv(&self) -> Result<Vec<u8>, RunError> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.into_inner().map_err(|e| RunError::Io(e.to_string()))
    }

    pub fn write(&self, path: &Path) -> Result<(), RunError> {
        std::fs::write(path, self.to_csv()?)?;
        Ok(())
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }
}

/// One plotting series: `n, value, stderr, theory_value`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlotSeries {
    /// Order label used in the file name, e.g. `m2` or `q4`.
    pub label: String,
    pub points: Vec<PlotPoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlotPoint {
    pub n: f64,
    pub value: f64,
    pub stderr: Option<f64>,
    pub theory_value: Option<f64>,
}

impl PlotSeries {
    pub fn table(&self) -> Table {
        let mut t = Table::new(&["n", "value", "stderr", "theory_value"]);
        for p in &self.points {
            t.push(vec![fmt_f64(p.n), fmt_f64(p.value), fmt_opt(p.stderr), fmt_opt(p.theory_value)]);
        }
        t
    }
}

/// Writes one file per series as `<dir>/<experiment>_<label>.csv` and returns
/// the file names. Series without points still get a header-only file.
pub fn emit_plotdata(dir: &Path, experiment: &str, series: &[PlotSeries]) -> Result<Vec<String>, RunError> {
    std::fs::create_dir_all(dir)?;
    let mut names = Vec::with_capacity(series.len());
    for s in series {
        let name = format!("{experiment}_{}.csv", s.label);
        s.table().write(&dir.join(&name))?;
        names.push(name);
    }
    Ok(names)
}
