//! Plain-text matrix files.
//!
//! ```text
//! 2 3
//! 1   0.1  -2
//! 4e3 5    6
//! ```
//!
//! The first line holds `m n`; each of the next `m` lines holds `n`
//! whitespace-separated decimal numbers, row by row. Numbers are parsed
//! exactly and rounded once to the working precision. Blank lines and
//! lines starting with `#` are ignored.

use std::path::Path;

use mpkit::mpblas::Matrix;
use mpkit::Real;

#[derive(Debug, thiserror::Error)]
pub enum MatrixFileError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: expected a header \"m n\"")]
    Header { line: usize },
    #[error("line {line}, column {column}: invalid number {token:?}")]
    Number { line: usize, column: usize, token: String },
    #[error("line {line}: expected {expected} numbers, found {found}")]
    RowLength { line: usize, expected: usize, found: usize },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
}

/// Content lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('#')
    })
}

/// Tokens of `line` with their 1-based character columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter().map(|(byte, tok)| (line[..byte].chars().count() + 1, tok)).collect()
}

pub fn parse_matrix<T: Real>(text: &str) -> Result<Matrix<T>, MatrixFileError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(MatrixFileError::Header { line: 1 })?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|_| MatrixFileError::Header { line: hline })?;
    let [m, n] = dims[..] else {
        return Err(MatrixFileError::Header { line: hline });
    };
    let mut a = Matrix::zeros(m, n);
    let mut found = 0;
    for (line, content) in lines {
        if found == m {
            // Anything past the last row counts as an extra row.
            return Err(MatrixFileError::RowCount { expected: m, found: found + 1 });
        }
        let toks = tokens(content);
        if toks.len() != n {
            return Err(MatrixFileError::RowLength { line, expected: n, found: toks.len() });
        }
        for (j, (column, tok)) in toks.into_iter().enumerate() {
            a[(found, j)] = T::parse_decimal(tok).map_err(|_| MatrixFileError::Number { line, column, token: tok.to_string() })?;
        }
        found += 1;
    }
    if found != m {
        return Err(MatrixFileError::RowCount { expected: m, found });
    }
    Ok(a)
}

pub fn read_matrix<T: Real>(path: &Path) -> Result<Matrix<T>, MatrixFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| MatrixFileError::Io { path: path.display().to_string(), source })?;
    parse_matrix(&text)
}
