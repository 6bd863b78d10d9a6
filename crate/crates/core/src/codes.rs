//! Classical parent codes and their parameters.
//!
//! Besides the plain repetition/ring codes and MacKay–Neal random LDPC codes,
//! this module implements edge augmentation: every edge `(check i, data j)`
//! of the parent factor graph is replaced by a path through a `g`-node chain
//! segment, which multiplies the distance by at least `1 + g·μ` while keeping
//! the number of encoded bits.

use std::fmt;

use rand::seq::IteratorRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2::{self, words, BitMatrix};

/// Minimum distance of a code, as far as it is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Distance {
    Exact(usize),
    /// The code encodes nothing; by convention its distance is infinite.
    Infinite,
    /// Only a lower bound is known.
    AtLeast(usize),
}

impl Distance {
    pub fn exact(self) -> Option<usize> {
        match self {
            Distance::Exact(d) => Some(d),
            _ => None,
        }
    }

    /// Minimum of two distances, treating `Infinite` as the identity.
    pub fn min(self, other: Distance) -> Distance {
        use Distance::*;
        match (self, other) {
            (Infinite, x) | (x, Infinite) => x,
            (Exact(a), Exact(b)) => Exact(a.min(b)),
            (Exact(a), AtLeast(b)) | (AtLeast(b), Exact(a)) => {
                if a <= b {
                    Exact(a)
                } else {
                    AtLeast(b)
                }
            }
            (AtLeast(a), AtLeast(b)) => AtLeast(a.min(b)),
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Exact(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
            Distance::AtLeast(d) => write!(f, ">={d}"),
        }
    }
}

/// A classical linear code given by its parity-check matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalCode {
    h: BitMatrix,
    k: usize,
    distance: Option<Distance>,
}

impl ClassicalCode {
    pub fn new(h: BitMatrix) -> Self {
        let k = h.cols() - gf2::rank(&h);
        let distance = (k == 0).then_some(Distance::Infinite);
        Self { h, k, distance }
    }

    pub fn with_distance(mut self, d: Distance) -> Self {
        self.distance = Some(d);
        self
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.h
    }

    pub fn into_parity_check(self) -> BitMatrix {
        self.h
    }

    /// Block length.
    pub fn n(&self) -> usize {
        self.h.cols()
    }

    /// Number of checks.
    pub fn m(&self) -> usize {
        self.h.rows()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn distance(&self) -> Option<Distance> {
        self.distance
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n() as f64
    }

    /// Minimum data-node degree `μ`.
    pub fn min_data_degree(&self) -> usize {
        self.h.min_col_weight()
    }

    /// Fills in the distance with the brute-force oracle.
    pub fn compute_distance(self, cap: usize) -> Result<Self> {
        let d = min_distance_bruteforce(&self, cap)?;
        Ok(self.with_distance(d))
    }
}

/// Parameters of an edge augmentation, derived from the parent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AugmentationSpec {
    pub g: usize,
    pub edge_count: usize,
    pub mu: usize,
}

impl AugmentationSpec {
    pub fn of(parent: &ClassicalCode, g: usize) -> Self {
        Self {
            g,
            edge_count: parent.h.nnz(),
            mu: parent.min_data_degree(),
        }
    }

    /// Distance lower bound `(1 + g·μ)·d` for a parent of distance `d`.
    pub fn distance_bound(&self, parent_distance: usize) -> usize {
        (1 + self.g * self.mu) * parent_distance
    }

    pub fn augmented_length(&self, parent_n: usize) -> usize {
        parent_n + self.g * self.edge_count
    }
}

/// `[n, 1, n]` repetition code; the closed variant is the `n × n` ring code.
pub fn repetition_code(n: usize, closed: bool) -> Result<ClassicalCode> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "repetition code length must be at least 2, got {n}"
        )));
    }
    let checks = if closed { n } else { n - 1 };
    let mut rows = Vec::with_capacity(checks);
    for i in 0..checks {
        let mut row = vec![i, (i + 1) % n];
        row.sort_unstable();
        row.dedup();
        rows.push(row);
    }
    // The n = 2 ring has two identical rows (1 1), which is still a valid check matrix.
    let h = BitMatrix::from_row_lists(checks, n, rows)?;
    Ok(ClassicalCode::new(h).with_distance(Distance::Exact(n)))
}

/// `g × g` chain segment: identity plus a one right of the first `g - 1` diagonal entries.
pub fn chain_segment_matrix(g: usize) -> Result<BitMatrix> {
    if g < 1 {
        return Err(Error::InvalidParameter("chain segment length must be at least 1".into()));
    }
    let entries = (0..g).flat_map(|t| {
        std::iter::once((t, t)).chain((t + 1 < g).then_some((t, t + 1)))
    });
    BitMatrix::from_entries(g, g, entries)
}

/// Replaces every parent edge with a length-`g` chain segment.
///
/// Parent data nodes and checks keep their indices. The segment for the
/// `e`-th edge in row-major order owns data nodes `n + e·g .. n + (e+1)·g` and
/// checks `m + e·g .. m + (e+1)·g`, laid out as [`chain_segment_matrix`]. The
/// segment is a path whose free ends are its first data node and its last
/// check: the parent data node is welded to the last check and the first data
/// node to the parent check, so every segment node ends up with degree two.
pub fn augment_edges(parent: &ClassicalCode, g: usize) -> Result<ClassicalCode> {
    if g == 0 {
        return Ok(parent.clone());
    }
    let h = &parent.h;
    let (m, n) = (h.rows(), h.cols());
    let edges: Vec<(usize, usize)> = h.entries().collect();
    let new_m = m + g * edges.len();
    let new_n = n + g * edges.len();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); new_m];
    for (e, &(i, j)) in edges.iter().enumerate() {
        let data0 = n + e * g;
        let check0 = m + e * g;
        for t in 0..g {
            rows[check0 + t].push(data0 + t);
            if t + 1 < g {
                rows[check0 + t].push(data0 + t + 1);
            }
        }
        rows[check0 + g - 1].push(j);
        rows[i].push(data0);
    }
    let augmented = ClassicalCode::new(BitMatrix::from_row_lists(new_m, new_n, rows)?);
    if augmented.k != parent.k {
        return Err(Error::Inconsistent(format!(
            "augmentation changed k from {} to {}",
            parent.k, augmented.k
        )));
    }
    Ok(augmented)
}

const COLUMN_ATTEMPTS: usize = 64;
const COLUMN_FAILURES_PER_MATRIX: usize = 1;
const MATRIX_ATTEMPTS: usize = 10_000;

/// Random `(l, q)`-regular LDPC code without length-four cycles.
///
/// Columns are filled one at a time with `l` rows drawn uniformly from the
/// rows that still have capacity; a draw that would make two columns share
/// two rows is rejected. A column that keeps failing restarts the matrix.
pub fn mackay_neal_ldpc(n: usize, l: usize, q: usize, seed: u64) -> Result<ClassicalCode> {
    if l == 0 || q == 0 || n == 0 {
        return Err(Error::InvalidParameter("weights and length must be positive".into()));
    }
    if !(l * n).is_multiple_of(q) {
        return Err(Error::InvalidParameter(format!(
            "column weight {l} times length {n} is not divisible by row weight {q}"
        )));
    }
    let m = l * n / q;
    if l > m {
        return Err(Error::InvalidParameter(format!(
            "column weight {l} exceeds the number of checks {m}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MATRIX_ATTEMPTS {
        if let Some(rows) = try_fill(n, m, l, q, &mut rng) {
            return Ok(ClassicalCode::new(BitMatrix::from_row_lists(m, n, rows)?));
        }
    }
    Err(Error::ConstructionFailed {
        retries: MATRIX_ATTEMPTS,
        reason: format!("no 4-cycle-free ({l},{q}) matrix of length {n} found"),
    })
}

fn try_fill(n: usize, m: usize, l: usize, q: usize, rng: &mut ChaCha8Rng) -> Option<Vec<Vec<usize>>> {
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut pair_used = vec![false; m * m];
    let mut failures = 0;
    let mut col = 0;
    while col < n {
        let mut placed = false;
        for _ in 0..COLUMN_ATTEMPTS {
            let mut pick = (0..m)
                .filter(|&r| rows[r].len() < q)
                .choose_multiple(rng, l);
            if pick.len() < l {
                return None;
            }
            pick.sort_unstable();
            let clash = pick
                .iter()
                .enumerate()
                .any(|(a, &r1)| pick[a + 1..].iter().any(|&r2| pair_used[r1 * m + r2]));
            if clash {
                continue;
            }
            for (a, &r1) in pick.iter().enumerate() {
                rows[r1].push(col);
                for &r2 in &pick[a + 1..] {
                    pair_used[r1 * m + r2] = true;
                }
            }
            placed = true;
            break;
        }
        if !placed {
            failures += 1;
            if failures >= COLUMN_FAILURES_PER_MATRIX {
                return None;
            }
            continue;
        }
        col += 1;
    }
    Some(rows)
}

/// Largest kernel dimension enumerated exhaustively.
pub const MAX_KERNEL_DIM: usize = 24;
const MAX_SUPPORT_CHECKS: f64 = 5e7;

/// Exact minimum weight of a nonzero codeword.
///
/// Codes with `k <= MAX_KERNEL_DIM` are handled by walking the whole kernel in
/// Gray-code order, which is exact regardless of `cap`. Larger codes fall back
/// to enumerating supports of weight `1..=cap`, returning `AtLeast(cap + 1)`
/// when none is a codeword.
pub fn min_distance_bruteforce(code: &ClassicalCode, cap: usize) -> Result<Distance> {
    let basis = gf2::kernel_basis(&code.h);
    if basis.is_empty() {
        return Ok(Distance::Infinite);
    }
    if basis.len() <= MAX_KERNEL_DIM {
        let packed: Vec<Vec<u64>> = basis.iter().map(|v| v.to_words()).collect();
        return Ok(Distance::Exact(min_weight_in_span(&packed, |_| true)));
    }
    support_search(&code.h, cap)
}

/// Minimum weight over nonzero combinations of `basis` accepted by `keep`.
///
/// Returns `usize::MAX` when no combination is accepted.
pub(crate) fn min_weight_in_span(basis: &[Vec<u64>], keep: impl Fn(&[u64]) -> bool) -> usize {
    let Some(first) = basis.first() else {
        return usize::MAX;
    };
    let mut acc = vec![0u64; first.len()];
    let mut best = usize::MAX;
    for i in 1u64..(1u64 << basis.len()) {
        words::xor_into(&mut acc, &basis[i.trailing_zeros() as usize]);
        let w = words::popcount(&acc);
        if w < best && keep(&acc) {
            best = w;
        }
    }
    best
}

fn support_search(h: &BitMatrix, cap: usize) -> Result<Distance> {
    let n = h.cols();
    let mut total = 0f64;
    let mut binom = 1f64;
    for w in 1..=cap.min(n) {
        binom = binom * (n - w + 1) as f64 / w as f64;
        total += binom;
    }
    if total > MAX_SUPPORT_CHECKS {
        return Err(Error::BudgetExceeded(format!(
            "kernel dimension above {MAX_KERNEL_DIM} and {total:.3e} supports up to weight {cap}"
        )));
    }
    let cols: Vec<Vec<u64>> = (0..n)
        .map(|j| {
            let mut w = vec![0u64; words::count(h.rows())];
            for &r in h.col(j) {
                words::set(&mut w, r);
            }
            w
        })
        .collect();
    for w in 1..=cap.min(n) {
        let mut idx: Vec<usize> = (0..w).collect();
        loop {
            let mut syn = vec![0u64; words::count(h.rows())];
            for &j in &idx {
                words::xor_into(&mut syn, &cols[j]);
            }
            if words::is_zero(&syn) {
                return Ok(Distance::Exact(w));
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    Ok(Distance::AtLeast(cap + 1))
}

/// Advances `idx` to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for t in i + 1..k {
                idx[t] = idx[t - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// The code whose parity-check matrix is `H^T`.
pub fn transpose_code(code: &ClassicalCode) -> ClassicalCode {
    ClassicalCode::new(code.h.transpose())
}
