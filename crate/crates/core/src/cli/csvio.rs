//! CSV readers for function, atom and sample files.
//!
//! Dialect: comma-separated, `.` decimal point, optional header detected by a
//! non-numeric first row. Row numbers in messages are 1-based file lines.

use std::collections::HashMap;
use std::path::Path;

use super::CliError;
use crate::function::SampledFunction;
use crate::measure::DiscreteSignedMeasure;
use crate::risk::EmpiricalDistribution;

struct Row {
    line: u64,
    values: Vec<f64>,
}

fn read_rows(path: &Path, columns: usize) -> Result<Vec<Row>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::new(format!("{}: {e}", path.display())))?;
    let name = path.display();
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::new(format!("{name}: {e}")))?;
        let line = record.position().map_or(i as u64 + 1, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        let parsed: Option<Vec<f64>> = record.iter().map(|f| f.parse::<f64>().ok()).collect();
        let values = match parsed {
            Some(v) => v,
            None if i == 0 => continue, // header
            None => {
                return Err(CliError::new(format!("{name}: row {line}: non-numeric value")));
            }
        };
        if values.len() != columns {
            return Err(CliError::new(format!(
                "{name}: row {line}: expected {columns} column(s), found {}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(CliError::new(format!("{name}: row {line}: non-finite value")));
        }
        rows.push(Row { line, values });
    }
    Ok(rows)
}

/// Two columns `x, y` with strictly increasing `x`.
pub fn read_function(path: &Path) -> Result<SampledFunction, CliError> {
    let rows = read_rows(path, 2)?;
    let name = path.display();
    if rows.len() < 2 {
        return Err(CliError::new(format!(
            "{name}: need at least 2 data rows, found {}",
            rows.len()
        )));
    }
    for w in rows.windows(2) {
        let (prev, cur) = (&w[0], &w[1]);
        if cur.values[0] == prev.values[0] {
            return Err(CliError::new(format!(
                "{name}: row {}: duplicate x value {} (also on row {})",
                cur.line, cur.values[0], prev.line
            )));
        }
        if cur.values[0] < prev.values[0] {
            return Err(CliError::new(format!(
                "{name}: row {}: x values must be strictly increasing",
                cur.line
            )));
        }
    }
    let (xs, ys) = rows.iter().map(|r| (r.values[0], r.values[1])).unzip();
    SampledFunction::new(xs, ys).map_err(|e| CliError::new(format!("{name}: {e}")))
}

/// Two columns `location, weight`. Zero-weight rows are dropped with a warning.
pub fn read_atoms(path: &Path) -> Result<(DiscreteSignedMeasure, Vec<String>), CliError> {
    let rows = read_rows(path, 2)?;
    let name = path.display();
    let mut seen: HashMap<u64, u64> = HashMap::new();
    let mut warnings = Vec::new();
    let mut atoms = Vec::new();
    for r in &rows {
        let (loc, w) = (r.values[0], r.values[1]);
        // +0.0 and −0.0 are the same location
        let key = (loc + 0.0).to_bits();
        if let Some(first) = seen.insert(key, r.line) {
            return Err(CliError::new(format!(
                "{name}: row {}: duplicate location {loc} (also on row {first})",
                r.line
            )));
        }
        if w == 0.0 {
            warnings.push(format!("row {}: zero-weight atom at {loc} dropped", r.line));
            continue;
        }
        atoms.push((loc, w));
    }
    let nu = DiscreteSignedMeasure::new(atoms).map_err(|e| CliError::new(format!("{name}: {e}")))?;
    Ok((nu, warnings))
}

/// One column of observations.
pub fn read_sample(path: &Path) -> Result<EmpiricalDistribution, CliError> {
    let rows = read_rows(path, 1)?;
    EmpiricalDistribution::new(rows.into_iter().map(|r| r.values[0]).collect())
        .map_err(|e| CliError::new(format!("{}: {e}", path.display())))
}
