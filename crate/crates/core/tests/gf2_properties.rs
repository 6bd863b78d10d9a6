use proptest::prelude::*;
use qldpc::gf2::{self, BitMatrix, BitVector};

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
    (1..=max_rows, 1..=max_cols)
        .prop_flat_map(|(r, c)| proptest::collection::vec(proptest::bool::weighted(0.3), r * c).prop_map(move |bits| (r, c, bits)))
        .prop_map(|(r, c, bits)| {
            let entries = (0..r * c).filter(|&i| bits[i]).map(|i| (i / c, i % c));
            BitMatrix::from_entries(r, c, entries).unwrap()
        })
}

fn with_order(max_rows: usize, max_cols: usize) -> impl Strategy<Value = (BitMatrix, Vec<usize>)> {
    matrix(max_rows, max_cols).prop_flat_map(|a| {
        let order: Vec<usize> = (0..a.cols()).collect();
        (Just(a), Just(order).prop_shuffle())
    })
}

/// Rank by plain dense elimination over rows of `u128`, independent of the library.
fn reference_rank(a: &BitMatrix) -> usize {
    let mut rows: Vec<u128> = (0..a.rows())
        .map(|i| a.row(i).iter().fold(0u128, |acc, &j| acc | (1 << j)))
        .collect();
    let mut rank = 0;
    for bit in 0..a.cols() {
        if let Some(p) = (rank..rows.len()).find(|&r| rows[r] >> bit & 1 == 1) {
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && *row >> bit & 1 == 1 {
                    *row ^= pivot;
                }
            }
            rank += 1;
        }
    }
    rank
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rank_is_transpose_invariant(a in matrix(50, 50)) {
        prop_assert_eq!(gf2::rank(&a), gf2::rank(&a.transpose()));
    }

    #[test]
    fn rank_matches_reference(a in matrix(40, 100)) {
        prop_assert_eq!(gf2::rank(&a), reference_rank(&a));
    }

    #[test]
    fn kernel_vectors_are_annihilated(a in matrix(30, 40)) {
        let kernel = gf2::kernel_basis(&a);
        prop_assert_eq!(kernel.len(), a.cols() - gf2::rank(&a));
        for v in &kernel {
            prop_assert!(a.mat_vec(v).unwrap().is_zero());
        }
        let stacked = BitMatrix::from_vectors(a.cols(), &kernel).unwrap();
        prop_assert_eq!(gf2::rank(&stacked), kernel.len());
    }

    #[test]
    fn pivots_have_rank_length((a, order) in with_order(30, 40)) {
        let pivots = gf2::pivot_columns(&a, &order).unwrap();
        prop_assert_eq!(pivots.len(), gf2::rank(&a));
        prop_assert_eq!(gf2::rank(&a.select_columns(&pivots).unwrap()), pivots.len());
    }

    #[test]
    fn solve_reproduces_syndrome((a, order) in with_order(30, 40), seed in any::<u64>()) {
        let basis = gf2::pivot_columns(&a, &order).unwrap();
        let support: Vec<usize> = (0..basis.len()).filter(|i| (seed >> (i % 64)) & 1 == 1).collect();
        let e = BitVector::from_support(basis.len(), support).unwrap();
        let full = BitVector::from_support(a.cols(), e.support().iter().map(|&i| basis[i]).collect()).unwrap();
        let s = a.mat_vec(&full).unwrap();
        let solved = gf2::solve_on_columns(&a, &basis, &s).unwrap();
        prop_assert_eq!(&solved, &e);
    }

    #[test]
    fn solve_rejects_or_reproduces(a in matrix(20, 20), s_bits in proptest::collection::vec(any::<bool>(), 20)) {
        let order: Vec<usize> = (0..a.cols()).collect();
        let basis = gf2::pivot_columns(&a, &order).unwrap();
        let s = BitVector::from_bits(&s_bits[..a.rows()]);
        match gf2::solve_on_columns(&a, &basis, &s) {
            Ok(e) => {
                let full = BitVector::from_support(a.cols(), e.support().iter().map(|&i| basis[i]).collect()).unwrap();
                prop_assert_eq!(a.mat_vec(&full).unwrap(), s);
            }
            Err(err) => {
                prop_assert_eq!(err, qldpc::Error::Unsolvable);
                let extended = a.transpose().vstack(&BitMatrix::from_vectors(a.rows(), std::slice::from_ref(&s)).unwrap()).unwrap();
                prop_assert!(gf2::rank(&extended) > gf2::rank(&a));
            }
        }
    }

    #[test]
    fn operations_stay_consistent(a in matrix(12, 12), b in matrix(12, 12)) {
        prop_assert!(a.is_consistent());
        prop_assert!(a.transpose().is_consistent());
        prop_assert!(a.kron(&b).is_consistent());
        prop_assert!(a.mul_transpose(&a).unwrap().is_consistent());
        prop_assert!(a.transpose().mul(&a).unwrap().is_consistent());
        if a.rows() == b.rows() {
            prop_assert!(a.hstack(&b).unwrap().is_consistent());
        }
        if a.cols() == b.cols() {
            prop_assert!(a.vstack(&b).unwrap().is_consistent());
        }
        let cols: Vec<usize> = (0..a.cols()).rev().collect();
        prop_assert!(a.select_columns(&cols).unwrap().is_consistent());
        prop_assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn row_combinations_are_in_row_space(a in matrix(15, 20), mask in any::<u32>()) {
        let mut v = BitVector::zeros(a.cols());
        for i in 0..a.rows() {
            if mask >> i & 1 == 1 {
                v = v.xor(&a.row_vector(i)).unwrap();
            }
        }
        prop_assert!(gf2::in_row_space(&a, &v).unwrap());
    }

    #[test]
    fn mat_vec_matches_dense(a in matrix(20, 20), v_bits in proptest::collection::vec(any::<bool>(), 20)) {
        let v = BitVector::from_bits(&v_bits[..a.cols()]);
        let dense = a.to_dense();
        let expected: Vec<u8> = dense
            .iter()
            .map(|row| row.iter().zip(&v_bits).fold(0u8, |acc, (&x, &b)| acc ^ (x & b as u8)))
            .collect();
        prop_assert_eq!(a.mat_vec(&v).unwrap().to_dense(), expected);
    }
}
