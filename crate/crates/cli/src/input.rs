//! Parsing of matrices, parameter vectors and boxes from the command line.

use std::path::Path;
use std::str::FromStr;

use ahg_core::{Configuration, Rational};
use serde::Deserialize;

/// Failure to read user input; reported with exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Parse(String),
}

impl InputError {
    pub fn code(&self) -> &'static str {
        match self {
            InputError::Io { .. } => "IO_ERROR",
            InputError::Parse(_) => "PARSE_ERROR",
        }
    }
}

#[derive(Deserialize)]
struct MatrixFile {
    #[serde(rename = "A")]
    a: Vec<Vec<i64>>,
}

/// Read `-A`: a path to a file or the matrix text itself. Text is either
/// JSON `{"A": [[..]]}`, a bare JSON array of rows, or integer rows
/// separated by newlines or `;` with entries separated by spaces or commas.
pub fn read_matrix(arg: &str) -> Result<Vec<Vec<i64>>, InputError> {
    // inline matrices use only these characters; anything else names a file
    let inline = arg
        .chars()
        .all(|c| c.is_ascii_digit() || c.is_whitespace() || "-+,;[]{}\":A".contains(c));
    let text = if Path::new(arg).is_file() || !inline {
        std::fs::read_to_string(arg).map_err(|source| InputError::Io {
            path: arg.to_string(),
            source,
        })?
    } else {
        arg.to_string()
    };
    parse_matrix(&text)
}

pub fn parse_matrix(text: &str) -> Result<Vec<Vec<i64>>, InputError> {
    let trimmed = text.trim();
    let rows = if trimmed.starts_with('{') {
        serde_json::from_str::<MatrixFile>(trimmed)
            .map_err(|e| InputError::Parse(format!("matrix JSON: {e}")))?
            .a
    } else if trimmed.starts_with('[') {
        serde_json::from_str::<Vec<Vec<i64>>>(trimmed).map_err(|e| InputError::Parse(format!("matrix JSON: {e}")))?
    } else {
        trimmed
            .split(['\n', ';'])
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|line| {
                line.split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse::<i64>()
                            .map_err(|_| InputError::Parse(format!("matrix entry {t:?} is not an integer")))
                    })
                    .collect::<Result<Vec<i64>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?
    };
    if rows.is_empty() || rows[0].is_empty() {
        return Err(InputError::Parse("the matrix is empty".into()));
    }
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(InputError::Parse("matrix rows have different lengths".into()));
    }
    Ok(rows)
}

pub fn configuration(rows: &[Vec<i64>]) -> ahg_core::Result<Configuration> {
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    Configuration::from_rows(&refs)
}

/// Comma-separated rationals such as `1/2,-3,0`.
pub fn parse_vector(text: &str) -> Result<Vec<Rational>, InputError> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            Rational::from_str(t).map_err(|_| InputError::Parse(format!("{t:?} is not a rational number")))
        })
        .collect()
}

/// Per-coordinate integer ranges `lo:hi,lo:hi,...`.
pub fn parse_box(text: &str) -> Result<Vec<(i64, i64)>, InputError> {
    text.split(',')
        .map(|r| {
            let (lo, hi) = r
                .split_once(':')
                .ok_or_else(|| InputError::Parse(format!("range {r:?} is not of the form lo:hi")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<i64>()
                    .map_err(|_| InputError::Parse(format!("range bound {s:?} is not an integer")))
            };
            Ok((parse(lo)?, parse(hi)?))
        })
        .collect()
}
