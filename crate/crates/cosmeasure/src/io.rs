//! Input files for the CLI.
//!
//! CSV: n rows of s comma-separated fields, one row per coordinate and
//! one column per vector; lines starting with '#' and blank lines are
//! ignored. JSON: an object with "n", "s", and "columns", where columns
//! is a list of s vectors of n numbers each. Numbers are written with
//! shortest round-trip formatting, so write/read is lossless.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Csv,
    Json,
}

/// Format by extension, falling back to sniffing a leading '{'.
pub fn detect_format(path: &Path, contents: &str) -> InputFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("json") => InputFormat::Json,
        Some(ext) if ext.eq_ignore_ascii_case("csv") => InputFormat::Csv,
        _ => {
            if contents.trim_start().starts_with('{') {
                InputFormat::Json
            } else {
                InputFormat::Csv
            }
        }
    }
}

pub fn read_matrix_file(path: &Path) -> Result<Matrix> {
    let contents = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    match detect_format(path, &contents) {
        InputFormat::Csv => parse_csv(&contents),
        InputFormat::Json => parse_json(&contents),
    }
}

pub fn parse_csv(contents: &str) -> Result<Matrix> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in contents.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row: Vec<f64> = line
            .split(',')
            .map(|field| {
                field.trim().parse::<f64>().map_err(|_| {
                    Error::Parse(format!("line {}: bad number {field:?}", lineno + 1))
                })
            })
            .collect::<Result<_>>()?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::Parse(format!(
                    "line {}: {} fields, expected {}",
                    lineno + 1,
                    row.len(),
                    first.len()
                )));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse("no data rows".into()));
    }
    let n = rows.len();
    let s = rows[0].len();
    let mut data = vec![0.0; n * s];
    for (r, row) in rows.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            data[c * n + r] = v;
        }
    }
    Matrix::new(n, s, data)
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonDocument {
    n: usize,
    s: usize,
    columns: Vec<Vec<f64>>,
}

pub fn parse_json(contents: &str) -> Result<Matrix> {
    let doc: JsonDocument =
        serde_json::from_str(contents).map_err(|e| Error::Parse(e.to_string()))?;
    if doc.columns.len() != doc.s {
        return Err(Error::Parse(format!(
            "declared s = {}, found {} columns",
            doc.s,
            doc.columns.len()
        )));
    }
    if let Some(bad) = doc.columns.iter().find(|c| c.len() != doc.n) {
        return Err(Error::Parse(format!(
            "declared n = {}, found a column of length {}",
            doc.n,
            bad.len()
        )));
    }
    Matrix::from_columns(&doc.columns)
}

pub fn write_csv(m: &Matrix) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|c| format!("{}", m.get(r, c))).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn write_json(m: &Matrix) -> String {
    let doc = JsonDocument {
        n: m.rows(),
        s: m.cols(),
        columns: (0..m.cols()).map(|c| m.column(c).to_vec()).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_is_lossless() {
        let m = Matrix::from_columns(&[
            vec![1.0 / 3.0, -2.0 / 7.0],
            vec![0.1, 1e-17],
            vec![-0.9, 0.19f64.sqrt()],
        ])
        .unwrap();
        let back = parse_csv(&write_csv(&m)).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn csv_and_json_round_trip_agree() {
        let m = Matrix::from_columns(&[vec![0.3015113445777636, -0.5], vec![1.0, 2.0]]).unwrap();
        let via_json = parse_json(&write_json(&m)).unwrap();
        let via_csv = parse_csv(&write_csv(&via_json)).unwrap();
        assert_eq!(m, via_csv);
    }

    #[test]
    fn csv_skips_comments_and_blanks() {
        let text = "# poll directions\n1, 0\n\n0, 1\n";
        let m = parse_csv(text).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 2));
        assert_eq!(m.get(0, 0), 1.0);
    }

    #[test]
    fn csv_rejects_ragged_rows() {
        assert!(matches!(parse_csv("1,0\n0\n"), Err(Error::Parse(_))));
    }

    #[test]
    fn csv_rejects_bad_numbers() {
        assert!(parse_csv("1,x\n0,1\n").is_err());
        assert!(parse_csv("1,NaN\n0,1\n").is_err());
        assert!(parse_csv("1,inf\n0,1\n").is_err());
    }

    #[test]
    fn json_rejects_shape_mismatch() {
        assert!(parse_json(r#"{"n":2,"s":2,"columns":[[1,0]]}"#).is_err());
        assert!(parse_json(r#"{"n":2,"s":1,"columns":[[1,0,0]]}"#).is_err());
    }

    #[test]
    fn format_detection() {
        assert_eq!(
            detect_format(Path::new("a.JSON"), ""),
            InputFormat::Json
        );
        assert_eq!(detect_format(Path::new("a.csv"), "{"), InputFormat::Csv);
        assert_eq!(detect_format(Path::new("a.txt"), " {\"n\":1}"), InputFormat::Json);
        assert_eq!(detect_format(Path::new("a.txt"), "1,2"), InputFormat::Csv);
    }
}
