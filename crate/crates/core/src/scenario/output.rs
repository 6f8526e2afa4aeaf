//! JSON-lines findings and CSV grid functions.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::grid::GridFunction;

/// One finding of a scenario run.
#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub kind: String,
    pub values: Value,
    pub tolerances: Value,
    pub pass: Option<bool>,
    pub grid_size: usize,
}

impl Record {
    pub fn new(
        kind: &str,
        grid_size: usize,
        values: Value,
        tolerances: Value,
        pass: Option<bool>,
    ) -> Self {
        Self {
            kind: kind.to_string(),
            values,
            tolerances,
            pass,
            grid_size,
        }
    }
}

pub fn report_lines(records: &[Record]) -> Result<String> {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).map_err(|e| Error::Config(e.to_string()))?);
        out.push('\n');
    }
    Ok(out)
}

pub fn write_report(path: &Path, records: &[Record]) -> Result<()> {
    std::fs::write(path, report_lines(records)?)?;
    Ok(())
}

/// Columns `t, v_1, ..., v_n` with 17 significant digits.
pub fn solution_csv(v: &[GridFunction]) -> String {
    let mut out = String::from("t");
    for i in 1..=v.len() {
        let _ = write!(out, ",v_{i}");
    }
    out.push('\n');
    for j in 0..v[0].len() {
        let _ = write!(out, "{:.16e}", v[0].t(j));
        for c in v {
            let _ = write!(out, ",{:.16e}", c.values()[j]);
        }
        out.push('\n');
    }
    out
}

pub fn write_solution_csv(path: &Path, v: &[GridFunction]) -> Result<()> {
    std::fs::write(path, solution_csv(v))?;
    Ok(())
}

/// Parses a file written by [`solution_csv`]; the `t` column must be the
/// uniform grid on `[0, 1]`.
pub fn read_solution_csv(path: &Path) -> Result<Vec<GridFunction>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_solution_csv(&text)
}

pub fn parse_solution_csv(text: &str) -> Result<Vec<GridFunction>> {
    let bad = |msg: String| Error::Config(msg);
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<&str> = lines
        .next()
        .ok_or_else(|| bad("empty CSV".into()))?
        .split(',')
        .collect();
    if header.first().map(|h| h.trim()) != Some("t") || header.len() < 2 {
        return Err(bad(
            "CSV header must start with t and name at least one component".into(),
        ));
    }
    let n = header.len() - 1;
    let mut t = Vec::new();
    let mut cols = vec![Vec::new(); n];
    for (row, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != n + 1 {
            return Err(bad(format!(
                "row {} has {} fields, expected {}",
                row + 2,
                fields.len(),
                n + 1
            )));
        }
        let parse = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| bad(format!("row {}: {e}", row + 2)))
        };
        t.push(parse(fields[0])?);
        for (c, f) in cols.iter_mut().zip(&fields[1..]) {
            c.push(parse(f)?);
        }
    }
    let m = t.len();
    if m < 3 {
        return Err(bad(format!("CSV has {m} rows")));
    }
    for (j, &tj) in t.iter().enumerate() {
        if (tj - j as f64 / (m - 1) as f64).abs() > 1e-12 {
            return Err(bad(format!(
                "t column is not the uniform grid at row {}",
                j + 2
            )));
        }
    }
    cols.into_iter()
        .map(|c| GridFunction::new(c).map_err(|e| bad(e.to_string())))
        .collect()
}
