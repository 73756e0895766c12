//! Plain-text matrix files: one row per line, entries space-separated.

use std::fs;
use std::path::Path;

use robust_subspace::Matrix;

use crate::error::CliError;

pub fn read_matrix(path: &Path) -> Result<Matrix, CliError> {
    let text = fs::read_to_string(path)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row: Result<Vec<f64>, _> = line.split_whitespace().map(str::parse).collect();
        let row = row.map_err(|e| {
            CliError::Dataset(format!("{}:{}: bad number: {e}", path.display(), lineno + 1))
        })?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CliError::Dataset(format!("{}: no rows", path.display())));
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(CliError::Dataset(format!("{}: ragged rows", path.display())));
    }
    let data: Vec<f64> = rows.into_iter().flatten().collect();
    Matrix::new(data.len() / cols, cols, data)
        .map_err(|e| CliError::Dataset(format!("{}: {e}", path.display())))
}

pub fn write_matrix(path: &Path, m: &Matrix) -> Result<(), CliError> {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|v| format!("{v}")).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}
