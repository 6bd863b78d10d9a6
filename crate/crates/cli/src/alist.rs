//! MacKay alist reading and writing.
//!
//! Layout: `n m`, then `max_col_weight max_row_weight`, then the `n` column
//! weights and the `m` row weights, then one line per column listing its
//! 1-indexed rows and one line per row listing its 1-indexed columns. Short
//! lists are padded with zeros up to the maximum weight.

use std::fmt::Write as _;
use std::path::Path;

use qldpc::BitMatrix;

use crate::error::CliError;

pub fn write_alist(h: &BitMatrix) -> String {
    let (m, n) = (h.rows(), h.cols());
    let col_w = h.col_weights();
    let row_w = h.row_weights();
    let max_col = h.max_col_weight();
    let max_row = h.max_row_weight();
    let mut out = String::new();
    let _ = writeln!(out, "{n} {m}");
    let _ = writeln!(out, "{max_col} {max_row}");
    out.push_str(&join(col_w.iter().copied()));
    out.push('\n');
    out.push_str(&join(row_w.iter().copied()));
    out.push('\n');
    for j in 0..n {
        out.push_str(&padded(h.col(j), max_col));
        out.push('\n');
    }
    for i in 0..m {
        out.push_str(&padded(h.row(i), max_row));
        out.push('\n');
    }
    out
}

fn join(values: impl Iterator<Item = usize>) -> String {
    values.map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn padded(indices: &[usize], width: usize) -> String {
    join(indices.iter().map(|&i| i + 1).chain(std::iter::repeat_n(0, width - indices.len())))
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn next_numbers(&mut self, what: &str) -> Result<(usize, Vec<usize>), CliError> {
        let Some((idx, line)) = self.inner.next() else {
            return Err(CliError::Alist {
                line: 0,
                message: format!("unexpected end of file, expected {what}"),
            });
        };
        let line_no = idx + 1;
        let values = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| CliError::Alist {
                    line: line_no,
                    message: format!("'{tok}' is not a non-negative integer ({what})"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((line_no, values))
    }

    fn exact(&mut self, count: usize, what: &str) -> Result<(usize, Vec<usize>), CliError> {
        let (line, values) = self.next_numbers(what)?;
        if values.len() != count {
            return Err(CliError::Alist {
                line,
                message: format!("expected {count} values ({what}), found {}", values.len()),
            });
        }
        Ok((line, values))
    }
}

/// Parses an alist document. Column and row lists must describe the same matrix.
pub fn parse_alist(text: &str) -> Result<BitMatrix, CliError> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
    };
    let (_, dims) = lines.exact(2, "n m")?;
    let (n, m) = (dims[0], dims[1]);
    let (maxes_line, maxes) = lines.exact(2, "max column and row weights")?;
    let (col_line, col_w) = lines.exact(n, "column weights")?;
    let (row_line, row_w) = lines.exact(m, "row weights")?;
    let check_max = |weights: &[usize], max: usize, line: usize, what: &str| {
        if weights.iter().copied().max().unwrap_or(0) != max {
            return Err(CliError::Alist {
                line: maxes_line,
                message: format!("declared maximum {what} weight {max} does not match line {line}"),
            });
        }
        Ok(())
    };
    check_max(&col_w, maxes[0], col_line, "column")?;
    check_max(&row_w, maxes[1], row_line, "row")?;

    let mut entries = Vec::new();
    for (j, &w) in col_w.iter().enumerate() {
        let (_, rows) = lines.list(maxes[0], w, m, "column")?;
        entries.extend(rows.into_iter().map(|i| (i, j)));
    }
    let mut by_row = Vec::with_capacity(m);
    for &w in &row_w {
        let (line, cols) = lines.list(maxes[1], w, n, "row")?;
        by_row.push((line, cols));
    }
    for (idx, line) in lines.inner {
        if !line.trim().is_empty() {
            return Err(CliError::Alist {
                line: idx + 1,
                message: "unexpected content after the row lists".into(),
            });
        }
    }
    let h = BitMatrix::from_entries(m, n, entries).map_err(|e| CliError::Alist {
        line: col_line,
        message: format!("column lists do not form a matrix: {e}"),
    })?;
    for (i, (line, cols)) in by_row.iter().enumerate() {
        if h.row(i) != cols.as_slice() {
            return Err(CliError::Alist {
                line: *line,
                message: format!("row {} disagrees with the column lists", i + 1),
            });
        }
    }
    Ok(h)
}

impl<'a> Lines<'a> {
    /// One padded index list; returns sorted 0-based indices.
    fn list(&mut self, width: usize, weight: usize, bound: usize, what: &str) -> Result<(usize, Vec<usize>), CliError> {
        let (line, values) = self.next_numbers(what)?;
        let err = |message: String| CliError::Alist { line, message };
        if values.len() != width && values.len() != weight {
            return Err(err(format!(
                "expected {width} entries (or {weight} unpadded) in {what} list, found {}",
                values.len()
            )));
        }
        let (ones, pad) = values.split_at(weight.min(values.len()));
        if pad.iter().any(|&v| v != 0) {
            return Err(err(format!("{what} list has more than {weight} nonzero entries")));
        }
        let mut out = Vec::with_capacity(weight);
        for &v in ones {
            if v == 0 || v > bound {
                return Err(err(format!("index {v} out of range 1..={bound}")));
            }
            out.push(v - 1);
        }
        out.sort_unstable();
        if out.windows(2).any(|w| w[0] == w[1]) {
            return Err(err(format!("repeated index in {what} list")));
        }
        Ok((line, out))
    }
}

pub fn read_alist(path: &Path) -> Result<BitMatrix, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_alist(&text).map_err(|e| e.in_file(path))
}

pub fn write_alist_file(path: &Path, h: &BitMatrix) -> Result<(), CliError> {
    std::fs::write(path, write_alist(h)).map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_mackay_layout() {
        let h = BitMatrix::from_dense(&[[1u8, 1, 0], [0, 1, 1]]).unwrap();
        assert_eq!(write_alist(&h), "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 3\n");
        assert_eq!(parse_alist(&write_alist(&h)).unwrap(), h);
    }

    #[test]
    fn accepts_unpadded_lists() {
        let h = parse_alist("3 2\n2 2\n1 2 1\n2 2\n1\n1 2\n2\n1 2\n2 3\n").unwrap();
        assert_eq!(h, BitMatrix::from_dense(&[[1u8, 1, 0], [0, 1, 1]]).unwrap());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad_token = parse_alist("3 2\n1 2\n1 x 1\n").unwrap_err();
        assert!(matches!(bad_token, CliError::Alist { line: 3, .. }), "{bad_token}");
        let mismatch = parse_alist("3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n1 3\n").unwrap_err();
        assert!(matches!(mismatch, CliError::Alist { line: 9, .. }), "{mismatch}");
        let range = parse_alist("1 1\n1 1\n1\n1\n2\n1\n").unwrap_err();
        assert!(matches!(range, CliError::Alist { line: 5, .. }), "{range}");
        let short = parse_alist("3 2\n1 2\n").unwrap_err();
        assert!(short.to_string().contains("end of file"));
    }

    #[test]
    fn empty_columns_round_trip() {
        let h = BitMatrix::from_dense(&[[1u8, 0, 0], [1, 0, 1]]).unwrap();
        assert_eq!(parse_alist(&write_alist(&h)).unwrap(), h);
        let z = BitMatrix::zeros(2, 2);
        assert_eq!(parse_alist(&write_alist(&z)).unwrap(), z);
    }
}
