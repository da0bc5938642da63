mod common;

use fdsc_core::css::{build_ghz, build_haah, build_toric, build_xcube, CssCode};
use fdsc_core::gf2::BitVector;
use fdsc_core::synth::haah::{canonical_subset, phi_reconstruction, phi_solve, z1_from_phi};
use fdsc_core::synth::{
    build_reconstruction, build_reconstruction_with_pivot_order, check_subset, emit_circuit,
    greedy_select, synthesize, synthesize_with_subset, tree_select, x_rank, Strategy, SubsetS,
};
use fdsc_core::verify::statevector::statevector_check;
use fdsc_core::verify::verify_circuit;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn assert_subset_ok(code: &CssCode, s: &SubsetS) {
    assert_eq!(s.len(), x_rank(code));
    assert_eq!(code.x_stabs().select_rows(s.as_slice()).rank(), s.len());
    check_subset(code, s).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn greedy_converges_on_random_codes(seed in any::<u64>(), n in 1usize..=30, pick in any::<Option<u64>>()) {
        let code = common::random_code(seed, n, 12);
        let s = greedy_select(&code, pick).unwrap();
        assert_subset_ok(&code, &s);
    }

    #[test]
    fn greedy_converges_on_toric(seed in any::<u64>(), l in 2usize..=4) {
        let code = build_toric(l).unwrap();
        let s = greedy_select(&code, Some(seed)).unwrap();
        assert_subset_ok(&code, &s);
    }

    #[test]
    fn reconstruction_ignores_pivot_order(seed in any::<u64>(), n in 1usize..=24) {
        let code = common::random_code(seed, n, 10);
        let s = greedy_select(&code, Some(seed)).unwrap();
        let cols = code.x_supports().len();
        let mut order: Vec<usize> = (0..cols).collect();
        let forward = build_reconstruction_with_pivot_order(&code, &s, &order).unwrap();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ 0xabcd));
        let shuffled = build_reconstruction_with_pivot_order(&code, &s, &order).unwrap();
        order.reverse();
        let reversed = build_reconstruction_with_pivot_order(&code, &s, &order).unwrap();
        prop_assert_eq!(&forward, &shuffled);
        prop_assert_eq!(&forward, &reversed);
    }

    #[test]
    fn reconstruction_shape(seed in any::<u64>(), n in 1usize..=24) {
        let code = common::random_code(seed, n, 10);
        let s = greedy_select(&code, None).unwrap();
        let m = build_reconstruction(&code, &s).unwrap();
        for (j, &q) in s.as_slice().iter().enumerate() {
            prop_assert_eq!(m.row_support(q), vec![j]);
        }
        let a = code.x_stabs();
        prop_assert_eq!(m.hstack(&a).unwrap().rank(), a.rank());
        prop_assert_eq!(m.rank(), s.len());
    }

    #[test]
    fn random_codes_verify_both_ways(seed in any::<u64>(), n in 1usize..=12) {
        let code = common::random_code(seed, n, 8);
        let circ = synthesize(&code, &Strategy::Greedy { seed: Some(seed) }).unwrap();
        prop_assert!(verify_circuit(&code, &circ).unwrap().pass);
        prop_assert!(statevector_check(&code, &circ).unwrap());
    }

    #[test]
    fn haah_phi_round_trip(l in 2usize..=4, bits in prop::collection::vec(any::<bool>(), 64)) {
        let phi = BitVector::from_bools(&bits[..l * l * l]);
        prop_assert_eq!(phi_solve(l, &z1_from_phi(l, &phi)), phi);
    }
}

#[test]
fn ghz_gate_counts() {
    for n in 2..=10 {
        let circ = synthesize(&build_ghz(n).unwrap(), &Strategy::Greedy { seed: None }).unwrap();
        assert_eq!(circ.gate_count(), n - 1);
    }
}

#[test]
fn potential_matches_generic_reconstruction() {
    for l in 1..=4 {
        let code = build_haah(l).unwrap();
        let s = SubsetS::new(canonical_subset(l));
        assert_eq!(tree_select(&code, &Strategy::HaahCanonical).unwrap(), s);
        assert_eq!(build_reconstruction(&code, &s).unwrap(), phi_reconstruction(l));
    }
}

#[test]
fn graph_route_matches_dense_route() {
    for l in 2..=6 {
        let code = build_toric(l).unwrap();
        for strategy in [Strategy::ToricComb, Strategy::Greedy { seed: Some(l as u64) }] {
            let s = tree_select(&code, &strategy).unwrap();
            let fast = synthesize_with_subset(&code, s.clone(), strategy.name()).unwrap();
            let m = build_reconstruction(&code, &s).unwrap();
            let dense = emit_circuit(&code, &s, &m, strategy.name()).unwrap();
            assert_eq!(fast, dense);
            assert_eq!(fast.gate_count(), m.nnz() - s.len());
        }
    }
}

#[test]
fn tree_strategies_meet_rank_conditions() {
    for l in [2, 3, 5, 8] {
        let code = build_toric(l).unwrap();
        assert_subset_ok(&code, &tree_select(&code, &Strategy::ToricComb).unwrap());
    }
    for l in [2, 4, 8, 16] {
        let code = build_toric(l).unwrap();
        assert_subset_ok(&code, &tree_select(&code, &Strategy::ToricRecursive).unwrap());
    }
    for l in 2..=5 {
        let code = build_xcube(l).unwrap();
        assert_subset_ok(&code, &tree_select(&code, &Strategy::XCubeDualTrees).unwrap());
    }
}

#[test]
fn smoke_sizes_verify() {
    let cases: Vec<(CssCode, Vec<Strategy>)> = vec![
        (build_ghz(8).unwrap(), vec![Strategy::Greedy { seed: None }]),
        (build_toric(2).unwrap(), vec![Strategy::ToricComb, Strategy::ToricRecursive]),
        (build_toric(4).unwrap(), vec![Strategy::ToricComb, Strategy::ToricRecursive]),
        (build_toric(8).unwrap(), vec![Strategy::ToricComb, Strategy::ToricRecursive]),
        (build_xcube(2).unwrap(), vec![Strategy::XCubeDualTrees]),
        (build_xcube(3).unwrap(), vec![Strategy::XCubeDualTrees]),
        (build_haah(1).unwrap(), vec![Strategy::HaahCanonical]),
        (build_haah(2).unwrap(), vec![Strategy::HaahCanonical]),
        (build_haah(3).unwrap(), vec![Strategy::HaahCanonical]),
    ];
    for (code, strategies) in cases {
        for strategy in strategies.iter().chain([&Strategy::Greedy { seed: Some(7) }]) {
            let circ = synthesize(&code, strategy).unwrap();
            let report = verify_circuit(&code, &circ).unwrap();
            assert!(report.pass, "{:?} {strategy}: {report:?}", code.family());
        }
    }
}
