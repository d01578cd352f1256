mod common;

use std::ops::ControlFlow;

use proptest::prelude::*;
use qcolor_core::branching::{leaf_coverage_check, COVERAGE_INDEX_LIMIT};
use qcolor_core::generators::{balanced_sizes, clique_union, cycle, path};
use qcolor_core::mis::{
    enumerate_mis_all, enumerate_mis_t, for_each_mis_sized, i_bound, moon_moser, AllMis, MisNode, SizedMis,
};
use qcolor_core::oracle::oracle_mis_list;
use qcolor_core::{Graph, VertexSet};

fn sizes_up_to(g: &Graph) -> impl Iterator<Item = usize> {
    1..=g.n()
}

fn check_against_oracle(g: &Graph) -> Result<(), TestCaseError> {
    let mut expected = oracle_mis_list(g).unwrap();
    expected.sort_unstable();
    let all = enumerate_mis_all(g).unwrap();
    prop_assert_eq!(&all.sets, &expected);
    prop_assert!(u128::from(all.ledger.leaves_visited) <= moon_moser(g.n() as u32));
    for t in sizes_up_to(g) {
        let sized = enumerate_mis_t(g, t).unwrap();
        let want: Vec<VertexSet> = expected.iter().copied().filter(|s| s.len() == t).collect();
        prop_assert_eq!(&sized.sets, &want);
        prop_assert!(u128::from(sized.ledger.leaves_visited) <= i_bound(g.n() as u32, t as u32).unwrap());
    }
    Ok(())
}

proptest! {
    #[test]
    fn enumeration_matches_oracle(n in 1usize..=14, tenths in 1u64..=9, seed in any::<u64>()) {
        check_against_oracle(&common::random_graph(n, tenths, seed))?;
    }

    #[test]
    fn sized_leaves_have_target_size(n in 1usize..=12, tenths in 1u64..=9, seed in any::<u64>()) {
        let g = common::random_graph(n, tenths, seed);
        for t in 1..=n as u32 {
            for_each_mis_sized(&g, g.vertices(), t, |s| {
                assert_eq!(s.len(), t as usize);
                assert!(g.is_maximal_independent(s));
                ControlFlow::Continue(())
            })
            .unwrap();
        }
    }
}

#[test]
fn corpus_matches_oracle() {
    for g in common::corpus(200, 14) {
        check_against_oracle(&g).unwrap();
    }
}

#[test]
fn balanced_clique_unions_attain_the_bound() {
    for n in 1..=18usize {
        for t in 1..=n.min(6) {
            let g = clique_union(&balanced_sizes(n, t)).unwrap();
            let got = enumerate_mis_t(&g, t).unwrap().sets.len() as u128;
            assert_eq!(got, i_bound(n as u32, t as u32).unwrap(), "n={n} t={t}");
        }
    }
}

#[test]
fn moon_moser_graphs_attain_the_bound() {
    // Triangles, with one K4 or K2 taking up the remainder.
    for n in 2..=18usize {
        let mut sizes = vec![3; n / 3];
        match n % 3 {
            1 => {
                sizes.pop();
                sizes.push(4);
            }
            2 => sizes.push(2),
            _ => {}
        }
        let g = clique_union(&sizes).unwrap();
        assert_eq!(enumerate_mis_all(&g).unwrap().sets.len() as u128, moon_moser(n as u32), "n={n}");
    }
}

#[test]
fn named_graphs() {
    assert_eq!(enumerate_mis_all(&cycle(5)).unwrap().sets.len(), 5);
    assert!(enumerate_mis_t(&cycle(5), 1).unwrap().sets.is_empty());
    let p3: Vec<VertexSet> = enumerate_mis_all(&path(3)).unwrap().sets;
    assert_eq!(p3, vec![VertexSet::from_bits(0b010), VertexSet::from_bits(0b101)]);
    let k4 = qcolor_core::generators::complete(4);
    assert_eq!(enumerate_mis_t(&k4, 1).unwrap().sets.len(), 4);
}

#[test]
fn leaf_indices_cover_every_leaf() {
    for g in common::corpus(200, 14) {
        let all = AllMis { graph: &g };
        let report = leaf_coverage_check(&all, &MisNode::all(g.vertices()), COVERAGE_INDEX_LIMIT).unwrap();
        assert!(report.all_covered(), "{g:?}");
        let sized = SizedMis { graph: &g };
        for t in 1..=g.n() as u32 {
            let report = leaf_coverage_check(&sized, &MisNode::sized(g.vertices(), t), COVERAGE_INDEX_LIMIT).unwrap();
            assert!(report.all_covered(), "t={t} {g:?}");
        }
    }
}
