//! Ordered-statistics post-processing.
//!
//! BP soft decisions rank the bits from most to least likely flipped. The
//! first `rank(H)` independent columns in that order form the basis set `S`;
//! the rest form the remainder set `T`. Fixing any `e_T` determines the basis
//! part uniquely:
//!
//! ```text
//! e_S = H_S^{-1} · s + H_S^{-1} · H_T · e_T
//! ```
//!
//! so every candidate satisfies the syndrome. OSD-0 takes `e_T = 0`; the
//! higher-order strategies search over `e_T` for the lightest candidate.

use crate::error::{Error, Result};
use crate::gf2::{words, BitMatrix, BitVector, ColumnElimination};

/// Search depth used when none is given.
pub const DEFAULT_LAMBDA: usize = 60;

/// Largest exhaustive search depth accepted (after clamping to `|T|`).
pub const MAX_EXHAUSTIVE_LAMBDA: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OsdStrategy {
    /// Basis solution only.
    Osd0,
    /// Every weight-one `e_T`, then every weight-two `e_T` inside the first `lambda` remainder bits.
    CombinationSweep { lambda: usize },
    /// All `2^lambda` patterns on the first `lambda` remainder bits.
    Exhaustive { lambda: usize },
}

impl Default for OsdStrategy {
    fn default() -> Self {
        OsdStrategy::CombinationSweep { lambda: DEFAULT_LAMBDA }
    }
}

impl OsdStrategy {
    pub fn lambda(&self) -> Option<usize> {
        match *self {
            OsdStrategy::Osd0 => None,
            OsdStrategy::CombinationSweep { lambda } | OsdStrategy::Exhaustive { lambda } => Some(lambda),
        }
    }

    /// Number of `e_T` inputs examined for a remainder set of size `k_prime`.
    ///
    /// The sweep count excludes the `e_T = 0` baseline; the exhaustive count includes it.
    pub fn candidate_count(&self, k_prime: usize) -> u128 {
        match *self {
            OsdStrategy::Osd0 => 1,
            OsdStrategy::CombinationSweep { lambda } => {
                let l = lambda.min(k_prime) as u128;
                k_prime as u128 + l * l.saturating_sub(1) / 2
            }
            OsdStrategy::Exhaustive { lambda } => 1u128 << lambda.min(k_prime).min(127),
        }
    }
}

/// Bit order from most to least likely flipped: ascending LLR, ties by index.
pub fn rank_bits(soft_decisions: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..soft_decisions.len()).collect();
    order.sort_by(|&a, &b| soft_decisions[a].total_cmp(&soft_decisions[b]).then(a.cmp(&b)));
    order
}

/// Split of the bit indices into basis set and remainder set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexPartition {
    pub order: Vec<usize>,
    /// Greedy independent prefix of `order`, in `order`'s relative order.
    pub basis: Vec<usize>,
    /// Remaining indices, in `order`'s relative order.
    pub remainder: Vec<usize>,
}

impl IndexPartition {
    pub fn new(h: &BitMatrix, order: Vec<usize>) -> Result<Self> {
        Ok(Self::from_elimination(&eliminate(h, &order, false)?, order))
    }

    fn from_elimination(elim: &ColumnElimination, order: Vec<usize>) -> Self {
        let mut in_basis = vec![false; order.len()];
        for &b in elim.pivots() {
            in_basis[b] = true;
        }
        let remainder = order.iter().copied().filter(|&i| !in_basis[i]).collect();
        Self {
            basis: elim.pivots().to_vec(),
            remainder,
            order,
        }
    }

    pub fn k_prime(&self) -> usize {
        self.remainder.len()
    }
}

fn eliminate(h: &BitMatrix, order: &[usize], with_transform: bool) -> Result<ColumnElimination> {
    if order.len() != h.cols() {
        return Err(Error::DimensionMismatch {
            context: "bit order",
            expected: h.cols(),
            found: order.len(),
        });
    }
    let mut seen = vec![false; h.cols()];
    for &i in order {
        if i >= h.cols() || std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidParameter("bit order is not a permutation".into()));
        }
    }
    ColumnElimination::new(h, order, with_transform)
}

/// One factorisation of `H_S`, reused for every `e_T` tried on a syndrome.
#[derive(Clone, Debug)]
pub struct OsdEncoder {
    n: usize,
    partition: IndexPartition,
    /// `H_S^{-1} · s`, packed over basis positions.
    base: Vec<u64>,
    /// `H_S^{-1} · H_T` column for each remainder bit, packed over basis positions.
    remainder_images: Vec<Vec<u64>>,
}

impl OsdEncoder {
    pub fn new(h: &BitMatrix, s: &BitVector, order: Vec<usize>) -> Result<Self> {
        if s.len() != h.rows() {
            return Err(Error::DimensionMismatch {
                context: "OSD syndrome",
                expected: h.rows(),
                found: s.len(),
            });
        }
        let elim = eliminate(h, &order, true)?;
        let base = elim.solve_packed(s)?;
        let partition = IndexPartition::from_elimination(&elim, order);
        let remainder_images = partition
            .remainder
            .iter()
            .map(|&t| elim.reduced_column(t))
            .collect();
        Ok(Self {
            n: h.cols(),
            partition,
            base,
            remainder_images,
        })
    }

    pub fn partition(&self) -> &IndexPartition {
        &self.partition
    }

    fn assemble(&self, basis_part: &[u64], remainder_bits: impl Iterator<Item = usize>) -> BitVector {
        let mut support: Vec<usize> = words::ones(basis_part, self.partition.basis.len())
            .map(|i| self.partition.basis[i])
            .chain(remainder_bits.map(|t| self.partition.remainder[t]))
            .collect();
        support.sort_unstable();
        BitVector::from_sorted_unchecked(self.n, support)
    }

    /// Full-length solution for the given remainder pattern (indexed like `partition().remainder`).
    pub fn encode(&self, e_t: &BitVector) -> Result<BitVector> {
        if e_t.len() != self.partition.k_prime() {
            return Err(Error::DimensionMismatch {
                context: "remainder pattern",
                expected: self.partition.k_prime(),
                found: e_t.len(),
            });
        }
        let mut acc = self.base.clone();
        for &t in e_t.support() {
            words::xor_into(&mut acc, &self.remainder_images[t]);
        }
        Ok(self.assemble(&acc, e_t.support().iter().copied()))
    }

    pub fn osd0(&self) -> BitVector {
        self.assemble(&self.base, std::iter::empty())
    }

    /// Lightest candidate under `strategy`; ties keep the earliest candidate.
    pub fn search(&self, strategy: OsdStrategy) -> Result<OsdOutcome> {
        let k_prime = self.partition.k_prime();
        let base_weight = words::popcount(&self.base);
        let mut best_weight = base_weight;
        let mut best: Vec<usize> = Vec::new();
        let mut scratch = self.base.clone();
        let mut examined: u128 = 0;
        match strategy {
            OsdStrategy::Osd0 => examined = 1,
            OsdStrategy::CombinationSweep { lambda } => {
                for (t, img) in self.remainder_images.iter().enumerate() {
                    let w = xor_weight(&mut scratch, &self.base, img) + 1;
                    examined += 1;
                    if w < best_weight {
                        best_weight = w;
                        best = vec![t];
                    }
                }
                let depth = lambda.min(k_prime);
                let mut pair_base = self.base.clone();
                for a in 0..depth {
                    pair_base.copy_from_slice(&self.base);
                    words::xor_into(&mut pair_base, &self.remainder_images[a]);
                    for b in a + 1..depth {
                        let w = xor_weight(&mut scratch, &pair_base, &self.remainder_images[b]) + 2;
                        examined += 1;
                        if w < best_weight {
                            best_weight = w;
                            best = vec![a, b];
                        }
                    }
                }
            }
            OsdStrategy::Exhaustive { lambda } => {
                let depth = lambda.min(k_prime);
                if depth > MAX_EXHAUSTIVE_LAMBDA {
                    return Err(Error::BudgetExceeded(format!(
                        "exhaustive search depth {depth} exceeds {MAX_EXHAUSTIVE_LAMBDA}"
                    )));
                }
                examined = 1;
                let mut acc = self.base.clone();
                for i in 1u64..(1u64 << depth) {
                    words::xor_into(&mut acc, &self.remainder_images[i.trailing_zeros() as usize]);
                    let gray = i ^ (i >> 1);
                    let w = words::popcount(&acc) + gray.count_ones() as usize;
                    examined += 1;
                    if w < best_weight {
                        best_weight = w;
                        best = (0..depth).filter(|&t| (gray >> t) & 1 == 1).collect();
                    }
                }
            }
        }
        let e_t = BitVector::from_sorted_unchecked(k_prime, best);
        let correction = self.encode(&e_t)?;
        debug_assert_eq!(correction.weight(), best_weight);
        Ok(OsdOutcome {
            correction,
            osd0_weight: base_weight,
            candidates: examined,
            k_prime,
        })
    }
}

#[inline]
fn xor_weight(scratch: &mut [u64], a: &[u64], b: &[u64]) -> usize {
    let mut w = 0;
    for ((s, x), y) in scratch.iter_mut().zip(a).zip(b) {
        *s = x ^ y;
        w += s.count_ones() as usize;
    }
    w
}

#[derive(Clone, Debug, PartialEq)]
pub struct OsdOutcome {
    pub correction: BitVector,
    pub osd0_weight: usize,
    /// Number of `e_T` inputs examined (see [`OsdStrategy::candidate_count`]).
    pub candidates: u128,
    pub k_prime: usize,
}

pub fn osd0(h: &BitMatrix, s: &BitVector, soft: &[f64]) -> Result<BitVector> {
    Ok(OsdEncoder::new(h, s, rank_bits(soft))?.osd0())
}

/// Encodes one remainder pattern for a precomputed partition.
pub fn osd_encode(h: &BitMatrix, partition: &IndexPartition, s: &BitVector, e_t: &BitVector) -> Result<BitVector> {
    let encoder = OsdEncoder::new(h, s, partition.order.clone())?;
    if encoder.partition != *partition {
        return Err(Error::InvalidParameter("partition does not match the bit order".into()));
    }
    encoder.encode(e_t)
}

pub fn osd_search(h: &BitMatrix, s: &BitVector, soft: &[f64], strategy: OsdStrategy) -> Result<OsdOutcome> {
    if soft.len() != h.cols() {
        return Err(Error::DimensionMismatch {
            context: "soft decisions",
            expected: h.cols(),
            found: soft.len(),
        });
    }
    OsdEncoder::new(h, s, rank_bits(soft))?.search(strategy)
}
