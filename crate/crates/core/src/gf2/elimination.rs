//! Dense Gauss–Jordan elimination kernels.
//!
//! Matrices are unpacked into `u64` rows for elimination; the sparse
//! [`BitMatrix`] stays the storage format.

use crate::error::{Error, Result};

use super::matrix::BitMatrix;
use super::vector::BitVector;
use super::words;

/// Reduced row echelon form of a matrix over a chosen column order.
///
/// Columns are visited in the supplied order and the first column that is
/// independent of the ones already selected becomes the next pivot, so the
/// pivot set is the greedy leftmost independent prefix of that order. When
/// built with a transform, the row operations are recorded so that any
/// right-hand side can be solved against the pivot columns without
/// re-eliminating.
#[derive(Clone, Debug)]
pub struct ColumnElimination {
    rows: usize,
    cols: usize,
    row_words: usize,
    reduced: Vec<u64>,
    transform: Option<Vec<u64>>,
    transform_words: usize,
    pivots: Vec<usize>,
}

impl ColumnElimination {
    /// Eliminates `a` visiting columns in `order` (which may be any subset of columns).
    pub fn new(a: &BitMatrix, order: &[usize], with_transform: bool) -> Result<Self> {
        let rows = a.rows();
        let cols = a.cols();
        let row_words = words::count(cols);
        let mut reduced = vec![0u64; rows * row_words];
        for (r, chunk) in reduced.chunks_mut(row_words.max(1)).enumerate().take(rows) {
            for &c in a.row(r) {
                words::set(chunk, c);
            }
        }
        let transform_words = words::count(rows);
        let mut transform = with_transform.then(|| {
            let mut t = vec![0u64; rows * transform_words];
            for r in 0..rows {
                words::set(&mut t[r * transform_words..(r + 1) * transform_words], r);
            }
            t
        });

        let mut pivots = Vec::with_capacity(rows.min(order.len()));
        for &c in order {
            if c >= cols {
                return Err(Error::IndexOutOfRange { index: c, len: cols });
            }
            let pr = pivots.len();
            if pr == rows {
                break;
            }
            let Some(found) = (pr..rows).find(|&r| words::get(&reduced[r * row_words..], c)) else {
                continue;
            };
            if found != pr {
                swap_rows(&mut reduced, row_words, found, pr);
                if let Some(t) = transform.as_mut() {
                    swap_rows(t, transform_words, found, pr);
                }
            }
            let (pivot_row, pivot_t) = (
                reduced[pr * row_words..(pr + 1) * row_words].to_vec(),
                transform
                    .as_ref()
                    .map(|t| t[pr * transform_words..(pr + 1) * transform_words].to_vec()),
            );
            for r in 0..rows {
                if r != pr && words::get(&reduced[r * row_words..], c) {
                    words::xor_into(&mut reduced[r * row_words..(r + 1) * row_words], &pivot_row);
                    if let (Some(t), Some(pt)) = (transform.as_mut(), pivot_t.as_ref()) {
                        words::xor_into(&mut t[r * transform_words..(r + 1) * transform_words], pt);
                    }
                }
            }
            pivots.push(c);
        }
        Ok(Self {
            rows,
            cols,
            row_words,
            reduced,
            transform,
            transform_words,
            pivots,
        })
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Pivot columns, in the order they were selected.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn reduced_row(&self, r: usize) -> &[u64] {
        &self.reduced[r * self.row_words..(r + 1) * self.row_words]
    }

    /// Coefficients expressing column `col` in terms of the pivot columns,
    /// packed as `rank` bits (bit `i` refers to `pivots()[i]`).
    pub fn reduced_column(&self, col: usize) -> Vec<u64> {
        let mut out = vec![0u64; words::count(self.rank())];
        for i in 0..self.rank() {
            if words::get(self.reduced_row(i), col) {
                words::set(&mut out, i);
            }
        }
        out
    }

    /// Solves for `x` with `A[:, pivots] · x = s`, returning packed `rank` bits.
    pub(crate) fn solve_packed(&self, s: &BitVector) -> Result<Vec<u64>> {
        let t = self
            .transform
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter("elimination built without transform".into()))?;
        if s.len() != self.rows {
            return Err(Error::DimensionMismatch {
                context: "right-hand side",
                expected: self.rows,
                found: s.len(),
            });
        }
        let sw = s.to_words();
        let tw = self.transform_words;
        let mut out = vec![0u64; words::count(self.rank())];
        for r in 0..self.rows {
            let bit = words::and_parity(&t[r * tw..(r + 1) * tw], &sw);
            if r < self.rank() {
                if bit {
                    words::set(&mut out, r);
                }
            } else if bit {
                return Err(Error::Unsolvable);
            }
        }
        Ok(out)
    }

    /// Solves `A[:, pivots] · x = s`; `x[i]` is the coefficient of `pivots()[i]`.
    pub fn solve(&self, s: &BitVector) -> Result<BitVector> {
        let packed = self.solve_packed(s)?;
        Ok(BitVector::from_words(self.rank(), &packed))
    }

    /// Basis of the nullspace, one vector per non-pivot column among `0..cols`.
    ///
    /// Only meaningful when the elimination visited every column.
    pub fn kernel(&self) -> Vec<BitVector> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut support = vec![f];
                for (i, &p) in self.pivots.iter().enumerate() {
                    if words::get(self.reduced_row(i), f) {
                        support.push(p);
                    }
                }
                support.sort_unstable();
                BitVector::from_sorted_unchecked(self.cols, support)
            })
            .collect()
    }
}

fn swap_rows(data: &mut [u64], width: usize, a: usize, b: usize) {
    if a == b || width == 0 {
        return;
    }
    let (lo, hi) = (a.min(b), a.max(b));
    let (head, tail) = data.split_at_mut(hi * width);
    head[lo * width..(lo + 1) * width].swap_with_slice(&mut tail[..width]);
}

/// Incrementally built echelon basis of a row space.
///
/// Each stored row has a distinct leading bit and is reduced against every
/// earlier row, so membership is a single pass of conditional XORs.
#[derive(Clone, Debug)]
pub struct RowSpace {
    len: usize,
    basis: Vec<(usize, Vec<u64>)>,
}

impl RowSpace {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            basis: Vec::new(),
        }
    }

    pub fn from_matrix(a: &BitMatrix) -> Self {
        let mut space = Self::new(a.cols());
        for row in a.dense_rows() {
            space.insert_words(row);
        }
        space
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn reduce(&self, v: &mut [u64]) {
        for (lead, row) in &self.basis {
            if words::get(v, *lead) {
                words::xor_into(v, row);
            }
        }
    }

    pub(crate) fn insert_words(&mut self, mut v: Vec<u64>) -> bool {
        self.reduce(&mut v);
        match words::lowest(&v) {
            Some(lead) => {
                self.basis.push((lead, v));
                true
            }
            None => false,
        }
    }

    /// Adds `v`; returns whether it was independent of the current span.
    pub fn insert(&mut self, v: &BitVector) -> Result<bool> {
        self.check_len(v)?;
        Ok(self.insert_words(v.to_words()))
    }

    pub(crate) fn contains_words(&self, v: &[u64]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        words::is_zero(&v)
    }

    pub fn contains(&self, v: &BitVector) -> Result<bool> {
        self.check_len(v)?;
        Ok(self.contains_words(&v.to_words()))
    }

    fn check_len(&self, v: &BitVector) -> Result<()> {
        if v.len() != self.len {
            return Err(Error::DimensionMismatch {
                context: "row space membership",
                expected: self.len,
                found: v.len(),
            });
        }
        Ok(())
    }
}

/// Inverse of a square matrix over GF(2), or `None` when singular.
pub fn invert_square(a: &BitMatrix) -> Result<Option<BitMatrix>> {
    if a.rows() != a.cols() {
        return Err(Error::DimensionMismatch {
            context: "square inverse",
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let n = a.rows();
    let order: Vec<usize> = (0..n).collect();
    let elim = ColumnElimination::new(a, &order, true)?;
    if elim.rank() < n {
        return Ok(None);
    }
    // Row r of the transform is the pivot row for column pivots[r]; reorder so
    // that row c of the inverse belongs to column c.
    let t = elim.transform.as_ref().expect("built with transform");
    let tw = elim.transform_words;
    let mut by_row = vec![Vec::new(); n];
    for (r, &c) in elim.pivots.iter().enumerate() {
        by_row[c] = words::ones(&t[r * tw..(r + 1) * tw], n).collect();
    }
    Ok(Some(BitMatrix::from_row_lists(n, n, by_row)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn greedy_pivots_follow_order() {
        let a = BitMatrix::from_dense(&[[1u8, 1, 0], [0, 1, 1]]).unwrap();
        let e = ColumnElimination::new(&a, &[2, 1, 0], false).unwrap();
        assert_eq!(e.pivots(), &[2, 1]);
    }

    #[test]
    fn solve_reports_inconsistency() {
        let a = BitMatrix::from_dense(&[[1u8, 1], [1, 1]]).unwrap();
        let e = ColumnElimination::new(&a, &[0, 1], true).unwrap();
        assert_eq!(e.rank(), 1);
        let s = BitVector::from_dense(&[1, 0]);
        assert_eq!(e.solve(&s), Err(Error::Unsolvable));
        let s = BitVector::from_dense(&[1, 1]);
        assert_eq!(e.solve(&s).unwrap().to_dense(), vec![1]);
    }

    #[test]
    fn inverse_of_chain() {
        let a = BitMatrix::from_dense(&[[1u8, 1, 0], [0, 1, 1], [0, 0, 1]]).unwrap();
        let inv = invert_square(&a).unwrap().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), BitMatrix::identity(3));
        let singular = BitMatrix::from_dense(&[[1u8, 1], [1, 1]]).unwrap();
        assert!(invert_square(&singular).unwrap().is_none());
    }

    #[test]
    fn row_space_membership() {
        let a = BitMatrix::from_dense(&[[1u8, 1, 0], [0, 1, 1]]).unwrap();
        let space = RowSpace::from_matrix(&a);
        assert_eq!(space.dim(), 2);
        assert!(space.contains(&BitVector::from_dense(&[1, 0, 1])).unwrap());
        assert!(!space.contains(&BitVector::from_dense(&[1, 1, 1])).unwrap());
    }
}
