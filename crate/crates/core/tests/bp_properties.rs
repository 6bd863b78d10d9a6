use proptest::prelude::*;
use qldpc::bp::{brute_force_marginals, decode_bp, BpConfig, Scaling};
use qldpc::codes::repetition_code;
use qldpc::css::hgp_symmetric;
use qldpc::{BitMatrix, BitVector};

/// Minimum-weight errors for every syndrome, by enumerating all `2^n` errors.
fn min_weight_table(h: &BitMatrix) -> Vec<(BitVector, Vec<BitVector>)> {
    let n = h.cols();
    let mut table: std::collections::HashMap<BitVector, (usize, Vec<BitVector>)> = Default::default();
    for x in 0u32..(1 << n) {
        let e = BitVector::from_support(n, (0..n).filter(|&j| x >> j & 1 == 1).collect()).unwrap();
        let s = h.mat_vec(&e).unwrap();
        let w = e.weight();
        let entry = table.entry(s).or_insert((usize::MAX, Vec::new()));
        if w < entry.0 {
            *entry = (w, vec![e]);
        } else if w == entry.0 {
            entry.1.push(e);
        }
    }
    let mut out: Vec<_> = table.into_iter().map(|(s, (_, es))| (s, es)).collect();
    out.sort_by(|a, b| a.0.support().cmp(b.0.support()));
    out
}

#[test]
fn tree_codes_decode_to_unique_minimum() {
    for n in 3..=12 {
        let h = repetition_code(n, false).unwrap().into_parity_check();
        let config = BpConfig::new(0.1).with_scaling(Scaling::None);
        let mut checked = 0;
        for (s, minima) in min_weight_table(&h) {
            if minima.len() != 1 {
                continue;
            }
            let r = decode_bp(&h, &s, &config).unwrap();
            assert!(r.converged, "n={n} s={s}");
            assert_eq!(r.hard_decision, minima[0], "n={n} s={s}");
            checked += 1;
        }
        assert!(checked > 0);
    }
}

#[test]
fn toric3_has_split_belief_syndromes() {
    let code = hgp_symmetric(&repetition_code(3, true).unwrap()).unwrap();
    let h = code.hz();
    let config = BpConfig::new(0.05);
    let n = code.n();
    let mut found = 0;
    for a in 0..n {
        for b in a + 1..n {
            let x = BitVector::from_support(n, vec![a, b]).unwrap();
            let s = h.mat_vec(&x).unwrap();
            let r = decode_bp(h, &s, &config).unwrap();
            if !r.converged {
                assert_ne!(h.mat_vec(&r.hard_decision).unwrap(), s);
                found += 1;
            }
        }
    }
    assert!(found > 0);
}

#[test]
fn marginals_at_half_rate_count_solutions() {
    let h = repetition_code(4, false).unwrap().into_parity_check();
    let s = BitVector::from_dense(&[1, 0, 1]);
    let marginals = brute_force_marginals(&h, &s, 0.5).unwrap();
    let table = (0u32..16)
        .map(|x| BitVector::from_support(4, (0..4).filter(|&j| x >> j & 1 == 1).collect()).unwrap())
        .filter(|e| h.mat_vec(e).unwrap() == s)
        .collect::<Vec<_>>();
    for (j, m) in marginals.iter().enumerate() {
        let frac = table.iter().filter(|e| e.get(j)).count() as f64 / table.len() as f64;
        assert!((m - frac).abs() < 1e-12);
    }
}

#[test]
fn zero_syndrome_marginals_favour_zero() {
    let h = hgp_symmetric(&repetition_code(2, true).unwrap()).unwrap().hz().clone();
    let m = brute_force_marginals(&h, &BitVector::zeros(h.rows()), 0.05).unwrap();
    assert!(m.iter().all(|&p| p < 0.5));
}

fn sparse(max: usize) -> impl Strategy<Value = BitMatrix> {
    (1..=max, 1..=max)
        .prop_flat_map(|(r, c)| (Just((r, c)), proptest::collection::vec(proptest::bool::weighted(0.25), r * c)))
        .prop_map(|((r, c), bits)| BitMatrix::from_entries(r, c, (0..r * c).filter(|&i| bits[i]).map(|i| (i / c, i % c))).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn convergence_implies_syndrome(h in sparse(20), bits in proptest::collection::vec(proptest::bool::weighted(0.15), 20), p in 0.01f64..0.5, scaled in any::<bool>()) {
        let e = BitVector::from_bits(&bits[..h.cols()]);
        let s = h.mat_vec(&e).unwrap();
        let scaling = if scaled { Scaling::IterationScaled } else { Scaling::None };
        let r = decode_bp(&h, &s, &BpConfig::new(p).with_scaling(scaling)).unwrap();
        prop_assert!(r.soft_decisions.iter().all(|v| v.is_finite()));
        if r.converged {
            prop_assert_eq!(h.mat_vec(&r.hard_decision).unwrap(), s);
        }
        prop_assert!(r.iterations >= 1 && r.iterations <= h.cols().max(1));
    }
}
