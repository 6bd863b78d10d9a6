use std::fmt;

use crate::error::{Error, Result};

use super::vector::{overlap_parity, BitVector};
use super::words;

/// Sparse binary matrix stored as both row and column adjacency lists.
///
/// Columns play the role of data nodes and rows of check nodes in the factor
/// graph view; each entry is an edge.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    by_row: Vec<Vec<usize>>,
    by_col: Vec<Vec<usize>>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            by_row: vec![Vec::new(); rows],
            by_col: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            by_row: (0..n).map(|i| vec![i]).collect(),
            by_col: (0..n).map(|i| vec![i]).collect(),
        }
    }

    /// Builds a matrix from `(row, col)` coordinates of its ones.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut by_row = vec![Vec::new(); rows];
        for (r, c) in entries {
            if r >= rows {
                return Err(Error::IndexOutOfRange { index: r, len: rows });
            }
            if c >= cols {
                return Err(Error::IndexOutOfRange { index: c, len: cols });
            }
            by_row[r].push(c);
        }
        Self::from_row_lists(rows, cols, by_row)
    }

    /// Builds a matrix from per-row column lists (any order, no repeats).
    pub fn from_row_lists(rows: usize, cols: usize, mut by_row: Vec<Vec<usize>>) -> Result<Self> {
        if by_row.len() != rows {
            return Err(Error::DimensionMismatch {
                context: "row lists",
                expected: rows,
                found: by_row.len(),
            });
        }
        let mut by_col = vec![Vec::new(); cols];
        for (r, row) in by_row.iter_mut().enumerate() {
            row.sort_unstable();
            for w in row.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::DuplicateEntry { row: r, col: w[0] });
                }
            }
            for &c in row.iter() {
                if c >= cols {
                    return Err(Error::IndexOutOfRange { index: c, len: cols });
                }
                by_col[c].push(r);
            }
        }
        Ok(Self {
            rows,
            cols,
            by_row,
            by_col,
        })
    }

    /// Builds a matrix from dense 0/1 rows.
    pub fn from_dense<R: AsRef<[u8]>>(dense: &[R]) -> Result<Self> {
        let rows = dense.len();
        let cols = dense.first().map_or(0, |r| r.as_ref().len());
        let mut by_row = Vec::with_capacity(rows);
        for row in dense {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    context: "dense rows",
                    expected: cols,
                    found: row.len(),
                });
            }
            by_row.push(
                row.iter()
                    .enumerate()
                    .filter_map(|(c, &b)| (b != 0).then_some(c))
                    .collect(),
            );
        }
        Self::from_row_lists(rows, cols, by_row)
    }

    /// Stacks vectors as rows; all must share one length.
    pub fn from_vectors(cols: usize, vectors: &[BitVector]) -> Result<Self> {
        let mut by_row = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != cols {
                return Err(Error::DimensionMismatch {
                    context: "row vectors",
                    expected: cols,
                    found: v.len(),
                });
            }
            by_row.push(v.support().to_vec());
        }
        Self::from_row_lists(vectors.len(), cols, by_row)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.by_row.iter().map(Vec::len).sum()
    }

    /// Sorted column indices of the ones in row `i`.
    pub fn row(&self, i: usize) -> &[usize] {
        &self.by_row[i]
    }

    /// Sorted row indices of the ones in column `j`.
    pub fn col(&self, j: usize) -> &[usize] {
        &self.by_col[j]
    }

    pub fn row_vector(&self, i: usize) -> BitVector {
        BitVector::from_sorted_unchecked(self.cols, self.by_row[i].clone())
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.by_row[i].binary_search(&j).is_ok()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.by_row
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&c| (r, c)))
    }

    pub fn row_weights(&self) -> Vec<usize> {
        self.by_row.iter().map(Vec::len).collect()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        self.by_col.iter().map(Vec::len).collect()
    }

    pub fn max_row_weight(&self) -> usize {
        self.by_row.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn max_col_weight(&self) -> usize {
        self.by_col.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_col_weight(&self) -> usize {
        self.by_col.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.by_row.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> BitMatrix {
        BitMatrix {
            rows: self.cols,
            cols: self.rows,
            by_row: self.by_col.clone(),
            by_col: self.by_row.clone(),
        }
    }

    /// Matrix-vector product over GF(2).
    pub fn mat_vec(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix-vector product",
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut acc = vec![false; self.rows];
        for &j in v.support() {
            for &i in &self.by_col[j] {
                acc[i] = !acc[i];
            }
        }
        Ok(BitVector::from_bits(&acc))
    }

    /// Product `self * other` over GF(2).
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product",
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut by_row = Vec::with_capacity(self.rows);
        let mut acc = vec![false; other.cols];
        for row in &self.by_row {
            for &k in row {
                for &j in &other.by_row[k] {
                    acc[j] = !acc[j];
                }
            }
            let mut out = Vec::new();
            for (j, bit) in acc.iter_mut().enumerate() {
                if *bit {
                    out.push(j);
                    *bit = false;
                }
            }
            by_row.push(out);
        }
        BitMatrix::from_row_lists(self.rows, other.cols, by_row)
    }

    /// Product `self * other^T`; entry (i, j) is the overlap parity of row i and row j.
    pub fn mul_transpose(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix product with transpose",
                expected: self.cols,
                found: other.cols,
            });
        }
        let by_row = self
            .by_row
            .iter()
            .map(|a| {
                other
                    .by_row
                    .iter()
                    .enumerate()
                    .filter_map(|(j, b)| overlap_parity(a, b).then_some(j))
                    .collect()
            })
            .collect();
        BitMatrix::from_row_lists(self.rows, other.rows, by_row)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &BitMatrix) -> BitMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut by_row = Vec::with_capacity(rows);
        for a_row in &self.by_row {
            for b_row in &other.by_row {
                let mut out = Vec::with_capacity(a_row.len() * b_row.len());
                for &ac in a_row {
                    for &bc in b_row {
                        out.push(ac * other.cols + bc);
                    }
                }
                by_row.push(out);
            }
        }
        BitMatrix::from_row_lists(rows, cols, by_row).expect("kron entries are unique and in range")
    }

    /// Horizontal concatenation `(self | other)`.
    pub fn hstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                context: "horizontal stack",
                expected: self.rows,
                found: other.rows,
            });
        }
        let by_row = self
            .by_row
            .iter()
            .zip(&other.by_row)
            .map(|(a, b)| a.iter().copied().chain(b.iter().map(|&c| c + self.cols)).collect())
            .collect();
        BitMatrix::from_row_lists(self.rows, self.cols + other.cols, by_row)
    }

    /// Vertical concatenation of `self` over `other`.
    pub fn vstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                context: "vertical stack",
                expected: self.cols,
                found: other.cols,
            });
        }
        let by_row = self.by_row.iter().chain(&other.by_row).cloned().collect();
        BitMatrix::from_row_lists(self.rows + other.rows, self.cols, by_row)
    }

    /// Submatrix consisting of the given columns, in the given order.
    pub fn select_columns(&self, columns: &[usize]) -> Result<BitMatrix> {
        let mut by_col = Vec::with_capacity(columns.len());
        for &c in columns {
            if c >= self.cols {
                return Err(Error::IndexOutOfRange { index: c, len: self.cols });
            }
            by_col.push(self.by_col[c].clone());
        }
        Ok(BitMatrix::from_row_lists(columns.len(), self.rows, by_col)?.transpose())
    }

    /// Reorders columns so that new column `i` is old column `perm[i]`.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<BitMatrix> {
        if perm.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "column permutation",
                expected: self.cols,
                found: perm.len(),
            });
        }
        self.select_columns(perm)
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        self.by_row
            .iter()
            .map(|row| {
                let mut out = vec![0u8; self.cols];
                for &c in row {
                    out[c] = 1;
                }
                out
            })
            .collect()
    }

    /// Packed rows, `words::count(cols)` words each.
    pub(crate) fn dense_rows(&self) -> Vec<Vec<u64>> {
        let wc = words::count(self.cols);
        self.by_row
            .iter()
            .map(|row| {
                let mut w = vec![0u64; wc];
                for &c in row {
                    words::set(&mut w, c);
                }
                w
            })
            .collect()
    }

    /// Checks that the two adjacency views describe the same sorted entry set.
    pub fn is_consistent(&self) -> bool {
        if self.by_row.len() != self.rows || self.by_col.len() != self.cols {
            return false;
        }
        let sorted_unique = |l: &Vec<usize>, bound: usize| {
            l.windows(2).all(|w| w[0] < w[1]) && l.last().is_none_or(|&x| x < bound)
        };
        if !self.by_row.iter().all(|r| sorted_unique(r, self.cols))
            || !self.by_col.iter().all(|c| sorted_unique(c, self.rows))
        {
            return false;
        }
        let mut rebuilt = vec![Vec::new(); self.cols];
        for (r, row) in self.by_row.iter().enumerate() {
            for &c in row {
                rebuilt[c].push(r);
            }
        }
        rebuilt == self.by_col
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for row in self.to_dense() {
            let s: String = row.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect();
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}
