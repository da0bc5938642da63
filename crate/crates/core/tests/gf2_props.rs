use fdsc_core::gf2::{BitMatrix, BitVector, RowEchelon};
use proptest::prelude::*;

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(0u8..2, c), r)
            .prop_map(|rows| BitMatrix::from_rows(&rows))
    })
}

/// Rank by brute force over all subsets of rows, for tiny matrices.
fn rank_by_span(m: &BitMatrix) -> usize {
    let mut span = std::collections::BTreeSet::new();
    for mask in 0u32..1 << m.rows() {
        let mut v = BitVector::zeros(m.cols());
        for i in (0..m.rows()).filter(|i| mask >> i & 1 == 1) {
            v.xor_assign(&m.row(i));
        }
        span.insert(v.support());
    }
    span.len().trailing_zeros() as usize
}

proptest! {
    #[test]
    fn rank_matches_span_size(m in matrix(8, 10)) {
        prop_assert_eq!(m.rank(), rank_by_span(&m));
    }

    #[test]
    fn rank_is_transpose_and_permutation_invariant(m in matrix(12, 70), seed in any::<u64>()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
        let mut order: Vec<usize> = (0..m.rows()).collect();
        let mut s = seed;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(m.select_rows(&order).rank(), m.rank());
    }

    #[test]
    fn right_inverse_multiplies_to_identity(m in matrix(10, 80)) {
        match m.right_inverse() {
            Ok(r) => {
                prop_assert_eq!(m.rank(), m.rows());
                prop_assert_eq!(m.mul(&r).unwrap(), BitMatrix::identity(m.rows()));
            }
            Err(_) => prop_assert!(m.rank() < m.rows()),
        }
    }

    #[test]
    fn mul_is_associative(a in matrix(6, 6), seed in any::<u64>()) {
        let b = BitMatrix::from_rows(&(0..a.cols()).map(|i| (0..5).map(|j| ((seed >> ((i * 5 + j) % 64)) & 1) as u8).collect::<Vec<_>>()).collect::<Vec<_>>());
        let c = b.transpose();
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn solve_finds_a_preimage(m in matrix(9, 9), x in prop::collection::vec(any::<bool>(), 9)) {
        let x = BitVector::from_bools(&x[..m.cols()]);
        let rhs = m.mul_vec(&x).unwrap();
        let y = m.solve(&rhs).unwrap();
        prop_assert_eq!(m.mul_vec(&y).unwrap(), rhs);
    }

    #[test]
    fn echelon_rank_matches_matrix_rank(m in matrix(20, 130)) {
        let mut e = RowEchelon::new(m.cols());
        for i in 0..m.rows() {
            e.insert(m.row_words(i));
        }
        prop_assert_eq!(e.rank(), m.rank());
    }

    #[test]
    fn transpose_keeps_padding_clean(m in matrix(70, 70)) {
        let t = m.transpose();
        prop_assert_eq!(t.transpose(), m.clone());
        prop_assert_eq!(t.nnz(), m.nnz());
    }
}
