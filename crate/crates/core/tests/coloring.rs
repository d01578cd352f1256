mod common;

use proptest::prelude::*;
use qcolor_core::chromatic::{chromatic_number, chromatic_number_with_table, lawler_dp, ChiTable, ChromaticError};
use qcolor_core::exponents::F3Mode;
use qcolor_core::generators::{clique_union, complete, cycle, petersen};
use qcolor_core::kcolor::{col, col3, col_bounded, reduce1, reduce2, BoundedVerdict};
use qcolor_core::oracle::{oracle_bounded_partition, oracle_chromatic, oracle_k_colorable};
use qcolor_core::{Graph, VertexSet};

const F3: F3Mode = F3Mode::BeigelEppstein;

#[test]
fn chromatic_number_matches_lawler_and_oracle() {
    for g in common::corpus(100, 12) {
        let want = oracle_chromatic(&g).unwrap();
        assert_eq!(chromatic_number(&g).unwrap().0, want, "{g:?}");
        assert_eq!(lawler_dp(&g).unwrap(), want, "{g:?}");
    }
}

#[test]
fn named_chromatic_numbers() {
    let cases = [
        (cycle(5), 3),
        (petersen(), 3),
        (complete(8), 8),
        (Graph::empty(6).unwrap(), 1),
        (Graph::empty(0).unwrap(), 0),
        (clique_union(&[4, 3, 3]).unwrap(), 4),
        (cycle(7).join_universal_vertex().unwrap(), 4),
    ];
    for (g, want) in cases {
        assert_eq!(chromatic_number(&g).unwrap().0, want, "{g:?}");
        assert_eq!(lawler_dp(&g).unwrap(), want, "{g:?}");
    }
}

#[test]
fn size_limits_are_refused() {
    let big = complete(21);
    assert_eq!(chromatic_number(&big), Err(ChromaticError::TooLarge { n: 21, limit: 20 }));
}

#[test]
fn table_entries_match_oracle() {
    for g in common::corpus(36, 12) {
        let (table, _) = ChiTable::build(&g).unwrap();
        assert_eq!(table.n(), g.n());
        assert_eq!(table.max_size(), g.n() / 4);
        let expected_len: usize = (0..=g.n() / 4).map(|i| VertexSet::full(g.n()).subsets_of_size(i).count()).sum();
        assert_eq!(table.len(), expected_len);
        let mut prev = None;
        for (s, chi) in table.iter() {
            assert!(prev < Some(s.bits()));
            prev = Some(s.bits());
            assert_eq!(chi, oracle_chromatic(&g.induced_subgraph(s).0).unwrap());
        }
        let rebuilt = ChiTable::from_entries(g.n(), g.n() / 4, table.iter()).unwrap();
        assert_eq!(chromatic_number_with_table(&g, &rebuilt).unwrap().0, chromatic_number(&g).unwrap().0);
    }
}

#[test]
fn col_matches_oracle_on_corpus() {
    for g in common::corpus(60, 12) {
        let chi = oracle_chromatic(&g).unwrap();
        let kmax = if g.n() <= 10 { 10 } else { 8 };
        for k in 0..=kmax {
            assert_eq!(col(&g, k, F3).unwrap().0, chi <= k, "k={k} {g:?}");
        }
    }
}

fn check_bounded(g: &Graph, k: u32) -> Result<(), TestCaseError> {
    let n = g.n() as u32;
    let colourable = oracle_k_colorable(g, k as usize).unwrap();
    let mut prev = BoundedVerdict::UndeterminedInput;
    for u in 0..=n {
        let (verdict, _) = col_bounded(g, k, u, F3).unwrap();
        if k > 0 && u < n.div_ceil(k) {
            prop_assert_eq!(verdict, BoundedVerdict::UndeterminedInput);
            continue;
        }
        prop_assert_ne!(verdict, BoundedVerdict::UndeterminedInput);
        if oracle_bounded_partition(g, k as usize, u as usize).unwrap() {
            prop_assert_eq!(verdict, BoundedVerdict::True, "u={}", u);
        }
        if verdict == BoundedVerdict::True {
            prop_assert!(colourable);
        }
        if prev == BoundedVerdict::True {
            prop_assert_eq!(verdict, BoundedVerdict::True, "not monotone at u={}", u);
        }
        prev = verdict;
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn col_matches_oracle(n in 0usize..=10, tenths in 1u64..=9, seed in any::<u64>(), k in 0u32..=10) {
        let g = common::random_graph(n, tenths, seed);
        prop_assert_eq!(col(&g, k, F3).unwrap().0, oracle_k_colorable(&g, k as usize).unwrap());
    }

    #[test]
    fn col_bounded_meets_contract(n in 1usize..=10, tenths in 1u64..=9, seed in any::<u64>(), k in 1u32..=8) {
        check_bounded(&common::random_graph(n, tenths, seed), k)?;
    }

    #[test]
    fn every_reduction_is_exact(n in 1usize..=9, tenths in 1u64..=9, seed in any::<u64>(), k in 4u32..=6) {
        let g = common::random_graph(n, tenths, seed);
        let want = oracle_k_colorable(&g, k as usize).unwrap();
        prop_assert_eq!(reduce1(&g, k, F3).unwrap().0, want);
        for kp in 2..=k / 2 {
            prop_assert_eq!(reduce2(&g, k, kp, F3).unwrap().0, want, "k'={}", kp);
        }
        prop_assert_eq!(col3(&g, F3).unwrap().0, oracle_k_colorable(&g, 3).unwrap());
    }
}

#[test]
fn bounded_corpus() {
    for g in common::corpus(40, 10) {
        for k in 1..=6 {
            check_bounded(&g, k).unwrap();
        }
    }
}

#[test]
fn named_k_colourings() {
    assert!(col(&complete(4), 4, F3).unwrap().0);
    assert!(!col(&complete(5), 4, F3).unwrap().0);
    assert!(col(&petersen(), 3, F3).unwrap().0);
    assert!(!col(&petersen(), 2, F3).unwrap().0);
    // C6 is 2-colourable only with classes of size 3.
    let c6 = cycle(6);
    assert_eq!(col_bounded(&c6, 2, 3, F3).unwrap().0, BoundedVerdict::True);
    assert_eq!(col_bounded(&c6, 2, 2, F3).unwrap().0, BoundedVerdict::UndeterminedInput);
    assert_eq!(col_bounded(&c6, 3, 2, F3).unwrap().0, BoundedVerdict::True);
}
