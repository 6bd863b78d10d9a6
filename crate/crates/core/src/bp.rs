//! Syndrome-based min-sum belief propagation.
//!
//! Messages live on factor-graph edges and are stored in log-likelihood-ratio
//! form (positive favours bit value 0). Every iteration runs a flooding
//! schedule: all check-to-data messages, then all data-to-check messages,
//! then a hard decision and a syndrome check.

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Scaling applied to check-to-data messages.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Scaling {
    /// `α = 1 - 2^-t` at iteration `t` (starting from 1).
    #[default]
    IterationScaled,
    /// `α = 1`.
    None,
}

impl Scaling {
    pub fn alpha(self, iteration: usize) -> f64 {
        match self {
            Scaling::IterationScaled => 1.0 - 0.5f64.powi(iteration.min(1100) as i32),
            Scaling::None => 1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BpConfig {
    pub channel_error_rate: f64,
    /// Iteration cap; `None` means the block length.
    pub max_iterations: Option<usize>,
    pub scaling: Scaling,
}

impl BpConfig {
    pub fn new(channel_error_rate: f64) -> Self {
        Self {
            channel_error_rate,
            max_iterations: None,
            scaling: Scaling::IterationScaled,
        }
    }

    pub fn with_max_iterations(mut self, max: usize) -> Self {
        self.max_iterations = Some(max);
        self
    }

    pub fn with_scaling(mut self, scaling: Scaling) -> Self {
        self.scaling = scaling;
        self
    }

    fn validate(&self) -> Result<()> {
        let p = self.channel_error_rate;
        if !(p > 0.0 && p <= 0.5) {
            return Err(Error::InvalidProbability(p));
        }
        if self.max_iterations == Some(0) {
            return Err(Error::InvalidParameter("max_iterations must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BpResult {
    pub converged: bool,
    pub hard_decision: BitVector,
    /// Posterior LLR per bit; negative means the bit is more likely flipped.
    pub soft_decisions: Vec<f64>,
    pub iterations: usize,
}

/// Magnitude sent by a check with no other neighbours: the bit is pinned by the syndrome.
const ISOLATED_CHECK_LLR: f64 = 1e30;

/// Reusable min-sum decoder bound to one parity-check matrix.
///
/// Holds private message buffers, so one instance serves one thread.
#[derive(Clone, Debug)]
pub struct BpDecoder {
    rows: usize,
    cols: usize,
    /// Edges are numbered in row-major order; `check_start[i]..check_start[i+1]` belong to check `i`.
    check_start: Vec<usize>,
    edge_col: Vec<usize>,
    /// Edge ids grouped by column, `col_start[j]..col_start[j+1]`.
    col_start: Vec<usize>,
    col_edges: Vec<usize>,
    check_to_data: Vec<f64>,
    data_to_check: Vec<f64>,
    soft: Vec<f64>,
    hard: Vec<bool>,
}

impl BpDecoder {
    pub fn new(h: &BitMatrix) -> Self {
        let rows = h.rows();
        let cols = h.cols();
        let mut check_start = Vec::with_capacity(rows + 1);
        let mut edge_col = Vec::with_capacity(h.nnz());
        let mut per_col: Vec<Vec<usize>> = vec![Vec::new(); cols];
        check_start.push(0);
        for i in 0..rows {
            for &j in h.row(i) {
                per_col[j].push(edge_col.len());
                edge_col.push(j);
            }
            check_start.push(edge_col.len());
        }
        let mut col_start = Vec::with_capacity(cols + 1);
        let mut col_edges = Vec::with_capacity(edge_col.len());
        col_start.push(0);
        for edges in per_col {
            col_edges.extend(edges);
            col_start.push(col_edges.len());
        }
        let edges = edge_col.len();
        Self {
            rows,
            cols,
            check_start,
            edge_col,
            col_start,
            col_edges,
            check_to_data: vec![0.0; edges],
            data_to_check: vec![0.0; edges],
            soft: vec![0.0; cols],
            hard: vec![false; cols],
        }
    }

    pub fn decode(&mut self, syndrome: &BitVector, config: &BpConfig) -> Result<BpResult> {
        config.validate()?;
        if syndrome.len() != self.rows {
            return Err(Error::DimensionMismatch {
                context: "BP syndrome",
                expected: self.rows,
                found: syndrome.len(),
            });
        }
        let s = syndrome.to_dense();
        let p = config.channel_error_rate;
        let channel_llr = ((1.0 - p) / p).ln();
        let max_iter = config.max_iterations.unwrap_or(self.cols).max(1);

        self.data_to_check.fill(channel_llr);
        for it in 1..=max_iter {
            let alpha = config.scaling.alpha(it);
            self.update_checks(&s, alpha);
            self.update_data(channel_llr);
            if self.satisfies(&s) {
                return Ok(self.result(true, it));
            }
        }
        Ok(self.result(false, max_iter))
    }

    fn update_checks(&mut self, s: &[u8], alpha: f64) {
        for i in 0..self.rows {
            let (lo, hi) = (self.check_start[i], self.check_start[i + 1]);
            let mut min1 = f64::INFINITY;
            let mut min2 = f64::INFINITY;
            let mut argmin = usize::MAX;
            let mut negative = false;
            for e in lo..hi {
                let m = self.data_to_check[e];
                negative ^= m < 0.0;
                let a = m.abs();
                if a < min1 {
                    min2 = min1;
                    min1 = a;
                    argmin = e;
                } else if a < min2 {
                    min2 = a;
                }
            }
            let syndrome_sign = if s[i] == 1 { -1.0 } else { 1.0 };
            for e in lo..hi {
                let own_negative = self.data_to_check[e] < 0.0;
                let sign = if negative ^ own_negative { -1.0 } else { 1.0 };
                let mut mag = if e == argmin { min2 } else { min1 };
                if mag.is_infinite() {
                    mag = ISOLATED_CHECK_LLR;
                }
                self.check_to_data[e] = syndrome_sign * alpha * sign * mag;
            }
        }
    }

    fn update_data(&mut self, channel_llr: f64) {
        for j in 0..self.cols {
            let edges = &self.col_edges[self.col_start[j]..self.col_start[j + 1]];
            let mut total = channel_llr;
            for &e in edges {
                total += self.check_to_data[e];
            }
            for &e in edges {
                let mut others = channel_llr;
                for &f in edges {
                    if f != e {
                        others += self.check_to_data[f];
                    }
                }
                self.data_to_check[e] = others;
            }
            self.soft[j] = total;
            // Ties at exactly zero decide 0.
            self.hard[j] = total < 0.0;
        }
    }

    fn satisfies(&self, s: &[u8]) -> bool {
        (0..self.rows).all(|i| {
            let parity = self.edge_col[self.check_start[i]..self.check_start[i + 1]]
                .iter()
                .fold(false, |acc, &j| acc ^ self.hard[j]);
            parity == (s[i] == 1)
        })
    }

    fn result(&self, converged: bool, iterations: usize) -> BpResult {
        BpResult {
            converged,
            hard_decision: BitVector::from_bits(&self.hard),
            soft_decisions: self.soft.clone(),
            iterations,
        }
    }

    /// Edge ordering view used in tests: check-to-data messages of check `i`.
    pub fn check_messages(&self, i: usize) -> &[f64] {
        &self.check_to_data[self.check_start[i]..self.check_start[i + 1]]
    }

    /// Column index of each edge of check `i`, aligned with [`Self::check_messages`].
    pub fn check_columns(&self, i: usize) -> &[usize] {
        &self.edge_col[self.check_start[i]..self.check_start[i + 1]]
    }
}

pub fn decode_bp(h: &BitMatrix, s: &BitVector, config: &BpConfig) -> Result<BpResult> {
    BpDecoder::new(h).decode(s, config)
}

/// Largest block length accepted by [`brute_force_marginals`].
pub const MAX_MARGINAL_BITS: usize = 22;

/// Exact posterior marginals `P(e_i = 1 | s)` for i.i.d. bit flips with rate `p`.
pub fn brute_force_marginals(h: &BitMatrix, s: &BitVector, p: f64) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    if s.len() != h.rows() {
        return Err(Error::DimensionMismatch {
            context: "marginal syndrome",
            expected: h.rows(),
            found: s.len(),
        });
    }
    let n = h.cols();
    if n > MAX_MARGINAL_BITS {
        return Err(Error::BudgetExceeded(format!(
            "{n} bits exceeds the marginal enumeration limit {MAX_MARGINAL_BITS}"
        )));
    }
    if h.rows() > 128 {
        return Err(Error::BudgetExceeded("more than 128 checks".into()));
    }
    let col_masks: Vec<u128> = (0..n)
        .map(|j| h.col(j).iter().fold(0u128, |m, &r| m | (1u128 << r)))
        .collect();
    let target = s.support().iter().fold(0u128, |m, &r| m | (1u128 << r));
    let mut total = 0.0;
    let mut ones = vec![0.0; n];
    for e in 0u64..(1u64 << n) {
        let mut syn = 0u128;
        let mut bits = e;
        while bits != 0 {
            syn ^= col_masks[bits.trailing_zeros() as usize];
            bits &= bits - 1;
        }
        if syn != target {
            continue;
        }
        let w = e.count_ones() as i32;
        let prob = p.powi(w) * (1.0 - p).powi(n as i32 - w);
        total += prob;
        let mut bits = e;
        while bits != 0 {
            ones[bits.trailing_zeros() as usize] += prob;
            bits &= bits - 1;
        }
    }
    if total == 0.0 {
        return Err(Error::Unsolvable);
    }
    Ok(ones.into_iter().map(|x| x / total).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::repetition_code;

    fn rep3() -> BitMatrix {
        repetition_code(3, false).unwrap().into_parity_check()
    }

    #[test]
    fn zero_syndrome_converges_immediately() {
        let h = repetition_code(6, true).unwrap().into_parity_check();
        let r = decode_bp(&h, &BitVector::zeros(6), &BpConfig::new(0.05)).unwrap();
        assert!(r.converged);
        assert_eq!(r.iterations, 1);
        assert!(r.hard_decision.is_zero());
    }

    #[test]
    fn repetition_single_flip_unscaled() {
        let s = BitVector::from_dense(&[1, 0]);
        let config = BpConfig::new(0.1).with_scaling(Scaling::None);
        let r = decode_bp(&rep3(), &s, &config).unwrap();
        assert!(r.converged);
        assert_eq!(r.hard_decision.to_dense(), vec![1, 0, 0]);
        assert_eq!(rep3().mat_vec(&r.hard_decision).unwrap(), s);
    }

    #[test]
    fn alpha_schedule() {
        assert_eq!(Scaling::IterationScaled.alpha(1), 0.5);
        assert_eq!(Scaling::IterationScaled.alpha(2), 0.75);
        assert!((Scaling::IterationScaled.alpha(60) - 1.0).abs() < 1e-15);
        assert_eq!(Scaling::None.alpha(1), 1.0);
    }

    #[test]
    fn flipping_a_syndrome_bit_negates_its_first_messages() {
        let h = repetition_code(5, true).unwrap().into_parity_check();
        let config = BpConfig::new(0.1).with_max_iterations(1);
        let s0 = BitVector::from_dense(&[1, 0, 0, 1, 0]);
        let s1 = BitVector::from_dense(&[0, 0, 0, 1, 0]);
        let mut a = BpDecoder::new(&h);
        let mut b = BpDecoder::new(&h);
        a.decode(&s0, &config).unwrap();
        b.decode(&s1, &config).unwrap();
        for (x, y) in a.check_messages(0).iter().zip(b.check_messages(0)) {
            assert_eq!(*x, -*y);
        }
        for i in 1..5 {
            assert_eq!(a.check_messages(i), b.check_messages(i));
        }
    }

    #[test]
    fn degenerate_channel_keeps_messages_at_zero() {
        let h = rep3();
        let mut dec = BpDecoder::new(&h);
        let r = dec.decode(&BitVector::from_dense(&[1, 1]), &BpConfig::new(0.5)).unwrap();
        assert!(r.soft_decisions.iter().all(|&x| x == 0.0));
        assert!(dec.check_messages(0).iter().all(|&x| x == 0.0));
        assert!(!r.converged);
    }

    #[test]
    fn rejects_bad_inputs() {
        let h = rep3();
        assert!(decode_bp(&h, &BitVector::zeros(3), &BpConfig::new(0.1)).is_err());
        assert!(decode_bp(&h, &BitVector::zeros(2), &BpConfig::new(0.0)).is_err());
        assert!(decode_bp(&h, &BitVector::zeros(2), &BpConfig::new(0.6)).is_err());
    }

    #[test]
    fn marginal_examples() {
        let m = brute_force_marginals(&rep3(), &BitVector::from_dense(&[1, 0]), 0.1).unwrap();
        for (got, want) in m.iter().zip([0.9, 0.1, 0.1]) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
        let m = brute_force_marginals(&rep3(), &BitVector::zeros(2), 0.01).unwrap();
        assert!(m.iter().all(|&x| x < 0.5));
        // p = 1/2: solutions 000 and 111 weigh equally
        let m = brute_force_marginals(&rep3(), &BitVector::zeros(2), 0.5).unwrap();
        assert!(m.iter().all(|&x| (x - 0.5).abs() < 1e-12));
    }

    #[test]
    fn marginals_reject_impossible_syndrome() {
        let h = BitMatrix::from_dense(&[[1u8, 1], [1, 1]]).unwrap();
        assert_eq!(
            brute_force_marginals(&h, &BitVector::from_dense(&[1, 0]), 0.1),
            Err(Error::Unsolvable)
        );
    }
}
