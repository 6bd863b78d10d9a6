//! CSS codes from the symmetric hypergraph product.

use crate::codes::{min_weight_in_span, ClassicalCode, Distance, MAX_KERNEL_DIM};
use crate::error::{Error, Result};
use crate::gf2::{self, invert_square, BitMatrix, BitVector, RowSpace};

/// A CSS code with a paired logical basis.
///
/// `lz` rows lie in `ker(H_X)` and `lx` rows in `ker(H_Z)`; the bases are
/// normalised so that `L_Z · L_X^T` is the identity.
#[derive(Clone, Debug)]
pub struct CssCode {
    hx: BitMatrix,
    hz: BitMatrix,
    lx: BitMatrix,
    lz: BitMatrix,
}

impl CssCode {
    /// Validates commutation and derives the logical operators.
    pub fn new(hx: BitMatrix, hz: BitMatrix) -> Result<Self> {
        let (lx, lz) = logical_operators(&hx, &hz)?;
        Ok(Self { hx, hz, lx, lz })
    }

    pub fn hx(&self) -> &BitMatrix {
        &self.hx
    }

    pub fn hz(&self) -> &BitMatrix {
        &self.hz
    }

    pub fn lx(&self) -> &BitMatrix {
        &self.lx
    }

    pub fn lz(&self) -> &BitMatrix {
        &self.lz
    }

    /// Physical qubits.
    pub fn n(&self) -> usize {
        self.hx.cols()
    }

    /// Logical qubits.
    pub fn k(&self) -> usize {
        self.lz.rows()
    }

    /// Mean stabiliser weight over the rows of both check matrices.
    pub fn mean_check_weight(&self) -> f64 {
        let rows = self.hx.rows() + self.hz.rows();
        if rows == 0 {
            return 0.0;
        }
        (self.hx.nnz() + self.hz.nnz()) as f64 / rows as f64
    }

    /// Largest number of X and Z checks together acting on one qubit.
    pub fn max_col_weight(&self) -> usize {
        self.hx
            .col_weights()
            .iter()
            .zip(self.hz.col_weights())
            .map(|(x, z)| x + z)
            .max()
            .unwrap_or(0)
    }

    /// Largest stabiliser weight.
    pub fn max_row_weight(&self) -> usize {
        self.hx.max_row_weight().max(self.hz.max_row_weight())
    }
}

/// Symmetric hypergraph product of a classical code with check matrix `H` (m × n):
///
/// ```text
/// H_X = ( H ⊗ 1_n | 1_m ⊗ H^T )
/// H_Z = ( 1_n ⊗ H | H^T ⊗ 1_m )
/// ```
///
/// The `n²` left-block qubits precede the `m²` right-block qubits.
pub fn hgp_symmetric(parent: &ClassicalCode) -> Result<CssCode> {
    let h = parent.parity_check();
    let ht = h.transpose();
    let id_n = BitMatrix::identity(h.cols());
    let id_m = BitMatrix::identity(h.rows());
    let hx = h.kron(&id_n).hstack(&id_m.kron(&ht))?;
    let hz = id_n.kron(h).hstack(&ht.kron(&id_m))?;
    CssCode::new(hx, hz)
}

/// Bases of X- and Z-type logical operators, returned as `(L_X, L_Z)`.
///
/// `L_Z` is built from `ker(H_X)` by keeping, lowest pivot first, the kernel
/// vectors independent of `rowspace(H_Z)`; `L_X` likewise from `ker(H_Z)`
/// against `rowspace(H_X)`. `L_X` is then recombined so that
/// `L_Z · L_X^T = 1`.
pub fn logical_operators(hx: &BitMatrix, hz: &BitMatrix) -> Result<(BitMatrix, BitMatrix)> {
    if hx.cols() != hz.cols() {
        return Err(Error::DimensionMismatch {
            context: "CSS check matrices",
            expected: hx.cols(),
            found: hz.cols(),
        });
    }
    if !hz.mul_transpose(hx)?.is_zero() {
        return Err(Error::NonCommuting);
    }
    let n = hx.cols();
    let lz = independent_kernel(hx, hz);
    let lx = independent_kernel(hz, hx);
    if lz.len() != lx.len() {
        return Err(Error::Inconsistent(format!(
            "{} Z-logicals but {} X-logicals",
            lz.len(),
            lx.len()
        )));
    }
    let lz = BitMatrix::from_vectors(n, &lz)?;
    let lx = BitMatrix::from_vectors(n, &lx)?;
    if lz.rows() == 0 {
        return Ok((lx, lz));
    }
    let pairing = lz.mul_transpose(&lx)?;
    let inverse = invert_square(&pairing)?
        .ok_or_else(|| Error::Inconsistent("logical pairing matrix is singular".into()))?;
    let lx = inverse.transpose().mul(&lx)?;
    Ok((lx, lz))
}

/// Kernel vectors of `a` that are independent modulo `rowspace(b)`.
fn independent_kernel(a: &BitMatrix, b: &BitMatrix) -> Vec<BitVector> {
    let mut space = RowSpace::from_matrix(b);
    gf2::kernel_basis(a)
        .into_iter()
        .filter(|v| space.insert(v).expect("kernel vectors have matching length"))
        .collect()
}

/// Quantum code statistics.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumParams {
    pub n: usize,
    pub k: usize,
    pub d: Option<Distance>,
    pub rate: f64,
    pub mean_check_weight: f64,
    pub max_col_weight: usize,
    pub max_row_weight: usize,
}

/// Parameters of `hgp_symmetric(parent)` from the parent and its transpose.
///
/// The closed-form `[[n²+m², k²+(kᵀ)², min(d, dᵀ)]]` is cross-checked against
/// the ranks of the assembled matrices.
pub fn css_params(code: &CssCode, parent: &ClassicalCode, transpose: &ClassicalCode) -> Result<QuantumParams> {
    let n = parent.n() * parent.n() + parent.m() * parent.m();
    let k = parent.k() * parent.k() + transpose.k() * transpose.k();
    if n != code.n() {
        return Err(Error::Inconsistent(format!(
            "expected {n} qubits, matrices have {}",
            code.n()
        )));
    }
    let rank_k = code.n() - gf2::rank(code.hx()) - gf2::rank(code.hz());
    if rank_k != k || code.k() != k {
        return Err(Error::Inconsistent(format!(
            "formula gives k = {k}, ranks give {rank_k}, logical basis has {}",
            code.k()
        )));
    }
    let d = match (parent.distance(), transpose.distance()) {
        (Some(a), Some(b)) => Some(a.min(b)),
        _ => None,
    };
    Ok(QuantumParams {
        n,
        k,
        d,
        rate: k as f64 / n as f64,
        mean_check_weight: code.mean_check_weight(),
        max_col_weight: code.max_col_weight(),
        max_row_weight: code.max_row_weight(),
    })
}

/// Statistics read directly off the matrices, without parent information.
pub fn matrix_params(code: &CssCode) -> QuantumParams {
    QuantumParams {
        n: code.n(),
        k: code.k(),
        d: None,
        rate: code.k() as f64 / code.n() as f64,
        mean_check_weight: code.mean_check_weight(),
        max_col_weight: code.max_col_weight(),
        max_row_weight: code.max_row_weight(),
    }
}

/// Exact quantum distance by walking the kernels of both check matrices.
///
/// The X-distance is the least weight of a `ker(H_Z)` vector outside
/// `rowspace(H_X)` and the Z-distance the symmetric quantity; the result is
/// the smaller of the two. Each kernel must have dimension at most
/// [`MAX_KERNEL_DIM`].
pub fn quantum_distance_bruteforce(code: &CssCode) -> Result<Distance> {
    if code.k() == 0 {
        return Ok(Distance::Infinite);
    }
    let dz = coset_min_weight(code.hx(), code.hz())?;
    let dx = coset_min_weight(code.hz(), code.hx())?;
    Ok(Distance::Exact(dx.min(dz)))
}

/// Least weight of a vector in `ker(a)` but not in `rowspace(b)`.
fn coset_min_weight(a: &BitMatrix, b: &BitMatrix) -> Result<usize> {
    let basis = gf2::kernel_basis(a);
    if basis.len() > MAX_KERNEL_DIM {
        return Err(Error::BudgetExceeded(format!(
            "kernel dimension {} exceeds {MAX_KERNEL_DIM}",
            basis.len()
        )));
    }
    let space = RowSpace::from_matrix(b);
    let packed: Vec<Vec<u64>> = basis.iter().map(|v| v.to_words()).collect();
    Ok(min_weight_in_span(&packed, |v| !space.contains_words(v)))
}
