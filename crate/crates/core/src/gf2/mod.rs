//! Sparse binary linear algebra over GF(2).

mod elimination;
mod matrix;
mod vector;
pub(crate) mod words;

pub use elimination::{invert_square, ColumnElimination, RowSpace};
pub use matrix::BitMatrix;
pub use vector::BitVector;

use crate::error::{Error, Result};

pub fn mat_vec(a: &BitMatrix, v: &BitVector) -> Result<BitVector> {
    a.mat_vec(v)
}

pub fn kron(a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
    a.kron(b)
}

/// GF(2) rank.
pub fn rank(a: &BitMatrix) -> usize {
    // Eliminating the shorter side is cheaper; rank is transpose-invariant.
    let t;
    let a = if a.rows() > a.cols() {
        t = a.transpose();
        &t
    } else {
        a
    };
    let order: Vec<usize> = (0..a.cols()).collect();
    ColumnElimination::new(a, &order, false)
        .expect("natural order is in range")
        .rank()
}

/// First `rank(a)` linearly independent columns, scanning `column_order` left to right.
pub fn pivot_columns(a: &BitMatrix, column_order: &[usize]) -> Result<Vec<usize>> {
    Ok(ColumnElimination::new(a, column_order, false)?.pivots().to_vec())
}

/// Factorisation of `a` restricted to an independent column set, reusable
/// across right-hand sides.
#[derive(Clone, Debug)]
pub struct ColumnSolver {
    basis: Vec<usize>,
    elimination: ColumnElimination,
}

impl ColumnSolver {
    pub fn new(a: &BitMatrix, basis: &[usize]) -> Result<Self> {
        let elimination = ColumnElimination::new(a, basis, true)?;
        if elimination.rank() != basis.len() {
            return Err(Error::DependentColumns);
        }
        Ok(Self {
            basis: basis.to_vec(),
            elimination,
        })
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    /// Unique `e` (indexed like `basis`) with `a[:, basis] · e = s`.
    pub fn solve(&self, s: &BitVector) -> Result<BitVector> {
        let x = self.elimination.solve(s)?;
        // Pivot order equals basis order because every basis column became a pivot.
        debug_assert_eq!(self.elimination.pivots(), &self.basis[..]);
        Ok(x)
    }
}

pub fn solve_on_columns(a: &BitMatrix, basis: &[usize], s: &BitVector) -> Result<BitVector> {
    ColumnSolver::new(a, basis)?.solve(s)
}

/// Basis of `{v : a · v = 0}` with `a.cols() - rank(a)` vectors.
pub fn kernel_basis(a: &BitMatrix) -> Vec<BitVector> {
    let order: Vec<usize> = (0..a.cols()).collect();
    ColumnElimination::new(a, &order, false)
        .expect("natural order is in range")
        .kernel()
}

pub fn in_row_space(a: &BitMatrix, v: &BitVector) -> Result<bool> {
    if v.len() != a.cols() {
        return Err(Error::DimensionMismatch {
            context: "row space membership",
            expected: a.cols(),
            found: v.len(),
        });
    }
    RowSpace::from_matrix(a).contains(v)
}
