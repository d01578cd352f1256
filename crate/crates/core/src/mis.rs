//! Maximal independent set enumeration as branching rule sets.
//!
//! Both rule sets pick a minimum-degree vertex `v` of the remaining graph and
//! branch over `w` in `N[v]`: put `w` into the set and delete `N[w]`. Every
//! MIS of the remaining graph contains some vertex of `N[v]`, and every leaf
//! is an MIS of the graph the search started from. An isolated vertex gives a
//! single forced child; a degree-one vertex gives the two-way split `{v, w}`.
//!
//! Since every vertex has degree at least `d = deg(v)`, each child loses at
//! least `d + 1` vertices, and `(d + 1) * U(n - d - 1) <= U(n)` holds for both
//! the Moon–Moser count (maximum product of a composition of `n`) and
//! `I(n, t)` (maximum product of a composition of `n` into `t` parts).

use alloc::vec::Vec;
use core::ops::ControlFlow;

use thiserror::Error;

use crate::branching::{self, BranchError, BranchRules, Capacity, CostLedger, NodeEvent};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MisError {
    #[error("target size {t} outside 1..={n}")]
    TargetOutOfRange { n: usize, t: usize },
    #[error("emitted set {0:?} is not a maximal independent set")]
    NotMaximal(VertexSet),
    #[error("delta {0} outside (0, 1]")]
    DeltaOutOfRange(f64),
    #[error(transparent)]
    Branch(#[from] BranchError),
}

/// Moon–Moser bound: the largest number of MISs in an `n`-vertex graph.
pub fn moon_moser(n: u32) -> u128 {
    match (n, n % 3) {
        (0 | 1, _) => 1,
        (_, 0) => 3u128.pow(n / 3),
        (_, 1) => 4 * 3u128.pow((n - 4) / 3),
        _ => 2 * 3u128.pow((n - 2) / 3),
    }
}

/// The largest number of `t`-MISs in an `n`-vertex graph:
/// `q^((q+1)t - n) * (q+1)^(n - qt)` with `q = floor(n/t)`.
pub fn i_bound(n: u32, t: u32) -> Result<u128, MisError> {
    if t == 0 || t > n {
        return Err(MisError::TargetOutOfRange { n: n as usize, t: t as usize });
    }
    let q = n / t;
    let q = u128::from(q);
    let (n, t) = (u128::from(n), u128::from(t));
    Ok(q.pow(((q + 1) * t - n) as u32) * (q + 1).pow((n - q * t) as u32))
}

/// `I(n, t)` extended to the boundary: `I(0, 0) = 1`, and zero wherever no
/// `t`-MIS can exist.
pub fn i_bound_or_zero(n: u32, t: u32) -> u128 {
    if t == 0 {
        u128::from(n == 0)
    } else {
        i_bound(n, t).unwrap_or(0)
    }
}

/// `E(delta)`, the exponent of `I(n, floor(delta n))`.
pub fn e_exponent(delta: f64) -> Result<f64, MisError> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(MisError::DeltaOutOfRange(delta));
    }
    let q = libm::floor(1.0 / delta);
    Ok(((q + 1.0) * delta - 1.0) * libm::log2(q) + (1.0 - q * delta) * libm::log2(q + 1.0))
}

/// A node of the MIS computation tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MisNode {
    /// Vertices still undecided; the subproblem is the graph induced on them.
    pub remaining: VertexSet,
    /// Vertices already put into the set.
    pub chosen: VertexSet,
    /// Members still to be chosen, for size-restricted enumeration.
    pub target: Option<u32>,
}

impl MisNode {
    pub fn all(within: VertexSet) -> Self {
        MisNode { remaining: within, chosen: VertexSet::EMPTY, target: None }
    }

    pub fn sized(within: VertexSet, t: u32) -> Self {
        MisNode { remaining: within, chosen: VertexSet::EMPTY, target: Some(t) }
    }
}

fn branch_children(graph: &Graph, node: &MisNode, out: &mut Vec<MisNode>) {
    let Some((v, _)) = graph.min_degree_vertex_in(node.remaining) else {
        return;
    };
    let pivot = graph.closed_neighbors(v).intersection(node.remaining);
    for w in pivot.iter() {
        let remaining = node.remaining.difference(graph.closed_neighbors(w));
        let mut chosen = node.chosen;
        chosen.insert(w);
        let target = node.target.map(|t| t - 1);
        if let Some(t) = target {
            if i_bound_or_zero(remaining.len() as u32, t) == 0 {
                continue;
            }
        }
        out.push(MisNode { remaining, chosen, target });
    }
}

/// All MISs; capacity is the Moon–Moser bound of the remaining vertex count.
#[derive(Clone, Copy, Debug)]
pub struct AllMis<'g> {
    pub graph: &'g Graph,
}

impl BranchRules for AllMis<'_> {
    type Problem = MisNode;
    type Params = [u32; 1];
    type Value = VertexSet;

    fn params(&self, p: &MisNode) -> [u32; 1] {
        [p.remaining.len() as u32]
    }

    fn is_leaf(&self, p: &MisNode) -> bool {
        p.remaining.is_empty()
    }

    fn solve_leaf(&self, p: &MisNode) -> VertexSet {
        p.chosen
    }

    fn expand(&self, p: &MisNode, out: &mut Vec<MisNode>) {
        branch_children(self.graph, p, out);
    }

    fn capacity(&self, params: &[u32; 1]) -> Capacity {
        Capacity(moon_moser(params[0]))
    }
}

/// MISs of a fixed size; params `(n, t)`, capacity `I(n, t)`. Children that
/// cannot reach the target size are pruned.
#[derive(Clone, Copy, Debug)]
pub struct SizedMis<'g> {
    pub graph: &'g Graph,
}

impl BranchRules for SizedMis<'_> {
    type Problem = MisNode;
    type Params = [u32; 2];
    type Value = VertexSet;

    fn params(&self, p: &MisNode) -> [u32; 2] {
        [p.remaining.len() as u32, p.target.unwrap_or(0)]
    }

    fn is_leaf(&self, p: &MisNode) -> bool {
        p.remaining.is_empty()
    }

    fn solve_leaf(&self, p: &MisNode) -> VertexSet {
        p.chosen
    }

    fn expand(&self, p: &MisNode, out: &mut Vec<MisNode>) {
        branch_children(self.graph, p, out);
    }

    fn capacity(&self, params: &[u32; 2]) -> Capacity {
        Capacity(i_bound_or_zero(params[0], params[1]))
    }
}

/// Calls `visit` on every leaf MIS of `G[within]` (possibly more than once
/// per set), stopping when it breaks.
pub fn for_each_mis<F>(g: &Graph, within: VertexSet, mut visit: F) -> Result<CostLedger, BranchError>
where
    F: FnMut(VertexSet) -> ControlFlow<()>,
{
    let rules = AllMis { graph: g };
    let root = MisNode::all(within);
    let mut ledger = branching::traverse(&rules, &root, |event| match event {
        NodeEvent::Leaf(p) => visit(p.chosen),
        NodeEvent::DeadEnd(_) => ControlFlow::Continue(()),
    })?;
    ledger.grover_log2 = branching::modeled_grover_cost(&rules, &root);
    Ok(ledger)
}

/// Like [`for_each_mis`], restricted to MISs of size exactly `t`.
pub fn for_each_mis_sized<F>(g: &Graph, within: VertexSet, t: u32, mut visit: F) -> Result<CostLedger, BranchError>
where
    F: FnMut(VertexSet) -> ControlFlow<()>,
{
    let rules = SizedMis { graph: g };
    let root = MisNode::sized(within, t);
    let mut ledger = branching::traverse(&rules, &root, |event| match event {
        NodeEvent::Leaf(p) => visit(p.chosen),
        NodeEvent::DeadEnd(_) => ControlFlow::Continue(()),
    })?;
    ledger.grover_log2 = branching::modeled_grover_cost(&rules, &root);
    Ok(ledger)
}

/// Deduplicated, sorted, verified enumeration output.
#[derive(Debug, Clone, PartialEq)]
pub struct MisEnumeration {
    pub sets: Vec<VertexSet>,
    pub ledger: CostLedger,
}

fn finish(
    g: &Graph,
    within: VertexSet,
    mut sets: Vec<VertexSet>,
    ledger: CostLedger,
) -> Result<MisEnumeration, MisError> {
    sets.sort_unstable();
    sets.dedup();
    if let Some(&bad) = sets.iter().find(|&&s| !g.is_maximal_independent_in(within, s)) {
        return Err(MisError::NotMaximal(bad));
    }
    Ok(MisEnumeration { sets, ledger })
}

/// Every MIS of `g`.
pub fn enumerate_mis_all(g: &Graph) -> Result<MisEnumeration, MisError> {
    enumerate_mis_all_in(g, g.vertices())
}

/// Every MIS of `G[within]`, in the labels of `g`.
pub fn enumerate_mis_all_in(g: &Graph, within: VertexSet) -> Result<MisEnumeration, MisError> {
    let mut sets = Vec::new();
    let ledger = for_each_mis(g, within, |s| {
        sets.push(s);
        ControlFlow::Continue(())
    })?;
    finish(g, within, sets, ledger)
}

/// Every MIS of `g` with exactly `t` vertices.
pub fn enumerate_mis_t(g: &Graph, t: usize) -> Result<MisEnumeration, MisError> {
    if t == 0 || t > g.n() {
        return Err(MisError::TargetOutOfRange { n: g.n(), t });
    }
    let within = g.vertices();
    let mut sets = Vec::new();
    let ledger = for_each_mis_sized(g, within, t as u32, |s| {
        sets.push(s);
        ControlFlow::Continue(())
    })?;
    let out = finish(g, within, sets, ledger)?;
    debug_assert!(out.sets.iter().all(|s| s.len() == t));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branching::{leaf_coverage_check, run_or, MapLeaves, COVERAGE_INDEX_LIMIT};
    use crate::generators::{clique_union, complete, cycle, path};
    use crate::oracle::oracle_mis_list;

    #[test]
    fn moon_moser_values() {
        let expected = [1, 1, 2, 3, 4, 6, 9, 12, 18, 27, 36, 54, 81];
        for (n, &m) in expected.iter().enumerate() {
            assert_eq!(moon_moser(n as u32), m, "n={n}");
        }
    }

    #[test]
    fn i_bound_values() {
        for n in 1..20 {
            assert_eq!(i_bound(n, n).unwrap(), 1);
            assert_eq!(i_bound(n, 1).unwrap(), u128::from(n));
        }
        assert_eq!(i_bound(9, 3).unwrap(), 27);
        assert_eq!(i_bound(10, 3).unwrap(), 36);
        assert_eq!(i_bound(10, 2).unwrap(), 25);
        assert!(i_bound(3, 4).is_err());
        assert!(i_bound(3, 0).is_err());
    }

    #[test]
    fn i_bound_is_max_product_of_t_part_composition() {
        fn best(n: u32, t: u32) -> u128 {
            if t == 1 {
                return u128::from(n);
            }
            (1..=n - (t - 1)).map(|a| u128::from(a) * best(n - a, t - 1)).max().unwrap()
        }
        for n in 1..=16 {
            for t in 1..=n {
                assert_eq!(i_bound(n, t).unwrap(), best(n, t), "n={n} t={t}");
            }
        }
    }

    #[test]
    fn small_graph_enumerations() {
        let k4 = enumerate_mis_all(&complete(4)).unwrap().sets;
        assert_eq!(k4.len(), 4);
        assert!(k4.iter().all(|s| s.len() == 1));

        let c5 = enumerate_mis_all(&cycle(5)).unwrap().sets;
        assert_eq!(c5, oracle_mis_list(&cycle(5)).unwrap());

        let p3 = enumerate_mis_all(&path(3)).unwrap().sets;
        let expected: Vec<VertexSet> = alloc::vec![[1].into_iter().collect(), [0, 2].into_iter().collect()];
        let mut p3s = p3.clone();
        p3s.sort_by_key(|s| s.len());
        assert_eq!(p3s, expected);
    }

    #[test]
    fn sized_enumerations() {
        assert_eq!(enumerate_mis_t(&complete(4), 1).unwrap().sets.len(), 4);
        let g = clique_union(&[3, 3, 3]).unwrap();
        let out = enumerate_mis_t(&g, 3).unwrap();
        assert_eq!(out.sets.len(), 27);
        assert!(out.ledger.leaves_visited <= 27);
        assert!(enumerate_mis_t(&cycle(5), 1).unwrap().sets.is_empty());
        assert!(matches!(enumerate_mis_t(&cycle(5), 6), Err(MisError::TargetOutOfRange { .. })));
    }

    #[test]
    fn exists_mis_of_size_two() {
        let c5 = cycle(5);
        let rules = MapLeaves::new(AllMis { graph: &c5 }, |s: VertexSet| s.len() == 2);
        assert!(run_or(&rules, &MisNode::all(c5.vertices())).unwrap().0);
        let k4 = complete(4);
        let rules = MapLeaves::new(AllMis { graph: &k4 }, |s: VertexSet| s.len() == 2);
        assert!(!run_or(&rules, &MisNode::all(k4.vertices())).unwrap().0);
    }

    #[test]
    fn coverage_on_named_graphs() {
        let c5 = cycle(5);
        let report =
            leaf_coverage_check(&AllMis { graph: &c5 }, &MisNode::all(c5.vertices()), COVERAGE_INDEX_LIMIT).unwrap();
        assert!(report.all_covered());
        assert_eq!(report.capacity, 6);
        assert_eq!(report.traversal_leaves, 5);

        // Every 2-MIS of two disjoint triangles is reachable from some index in 1..=9.
        let g = clique_union(&[3, 3]).unwrap();
        let rules = SizedMis { graph: &g };
        let root = MisNode::sized(g.vertices(), 2);
        let report = leaf_coverage_check(&rules, &root, COVERAGE_INDEX_LIMIT).unwrap();
        assert_eq!(report.capacity, 9);
        assert!(report.all_covered());
        let mut reached: Vec<VertexSet> =
            (1..=9).filter_map(|s| branching::leaf(&rules, &root, s).unwrap().leaf()).map(|p| p.chosen).collect();
        reached.sort_unstable();
        reached.dedup();
        assert_eq!(reached, oracle_mis_list(&g).unwrap());
    }

    #[test]
    fn grover_cost_examples() {
        let g = Graph::empty(12).unwrap().complement();
        let rules = AllMis { graph: &g };
        let cost = branching::modeled_grover_cost(&rules, &MisNode::all(g.vertices()));
        assert!((cost - 2.0 * libm::log2(3.0)).abs() < 1e-12);

        let g10 = Graph::empty(10).unwrap();
        let rules = SizedMis { graph: &g10 };
        let cost = branching::modeled_grover_cost(&rules, &MisNode::sized(g10.vertices(), 2));
        assert!((cost - 0.5 * libm::log2(25.0)).abs() < 1e-12);
    }

    #[test]
    fn e_exponent_values() {
        assert!((e_exponent(1.0 / 3.0).unwrap() - libm::log2(3.0) / 3.0).abs() < 1e-12);
        assert!(e_exponent(1.0).unwrap().abs() < 1e-12);
        assert!((e_exponent(0.2).unwrap() - 0.2 * libm::log2(5.0)).abs() < 1e-12);
        assert!(e_exponent(0.0).is_err());
        assert!(e_exponent(1.5).is_err());
        // (1/n) log2 I(5m, m) approaches E(1/5) from the exact integer side.
        let m = 12;
        let approx = libm::log2(i_bound(5 * m, m).unwrap() as f64) / f64::from(5 * m);
        assert!((approx - e_exponent(0.2).unwrap()).abs() < 1e-12);
    }
}
