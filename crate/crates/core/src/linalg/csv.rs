//! Matrix CSV: one row per line, comma-separated decimal literals, no header.

use std::fs;
use std::path::Path;

use super::Matrix;
use crate::error::{Error, Result};

pub fn parse_csv(text: &str) -> Result<Matrix> {
    let lines: Vec<&str> = text.trim_end().lines().collect();
    if lines.is_empty() || lines.iter().all(|l| l.trim().is_empty()) {
        return Err(Error::Parse {
            line: 1,
            detail: "empty matrix file".into(),
        });
    }
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(lines.len());
    for (n, line) in lines.iter().enumerate() {
        let line_no = n + 1;
        if line.trim().is_empty() {
            return Err(Error::Parse {
                line: line_no,
                detail: "blank line inside matrix".into(),
            });
        }
        let row = line
            .split(',')
            .map(|field| {
                let field = field.trim();
                field.parse::<f64>().map_err(|e| Error::Parse {
                    line: line_no,
                    detail: format!("bad number {field:?}: {e}"),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::Parse {
                    line: line_no,
                    detail: format!("ragged row: {} fields, expected {}", row.len(), first.len()),
                });
            }
        }
        if row.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parse {
                line: line_no,
                detail: "non-finite value".into(),
            });
        }
        rows.push(row);
    }
    Matrix::from_rows(&rows)
}

/// Shortest round-tripping decimal representation of every entry.
pub fn to_csv(m: &Matrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let fields: Vec<String> = m.row(i).iter().map(|v| format!("{v:?}")).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<Matrix> {
    parse_csv(&fs::read_to_string(path)?)
}

pub fn write_csv(path: impl AsRef<Path>, m: &Matrix) -> Result<()> {
    fs::write(path, to_csv(m))?;
    Ok(())
}
