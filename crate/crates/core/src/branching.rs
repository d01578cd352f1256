//! OR/MIN branching over capacity-bounded computation trees.
//!
//! A [`BranchRules`] implementation describes a computation tree: which
//! problems are leaves, how an inner problem expands into an ordered list of
//! children, and an integer capacity `U(params)` bounding the number of leaves
//! below any problem with those parameters. Capacities must be subadditive
//! (`U(parent) >= sum U(child)`) so that every leaf can be addressed by an
//! index `s` in `1..=U(root)`, which is what [`leaf`] computes and what a
//! Grover search would query. The classical traversal and the index map share
//! the same `expand`, so they see the same tree.
//!
//! Subadditivity is asserted at every expanded node during traversal; a
//! violation is returned as [`BranchError::CapacityViolation`].

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt::Debug;
use core::marker::PhantomData;
use core::ops::ControlFlow;

use thiserror::Error;

/// Exact upper bound on the number of leaves below a problem.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Capacity(pub u128);

impl Capacity {
    pub fn log2(self) -> f64 {
        if self.0 == 0 {
            0.0
        } else {
            libm::log2(self.0 as f64)
        }
    }
}

/// Counters for one run, plus the modelled Grover query count.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CostLedger {
    pub leaves_visited: u64,
    pub nodes_visited: u64,
    pub max_depth: u32,
    /// `log2` of the modelled number of Grover queries, polynomial factors dropped.
    pub grover_log2: f64,
}

impl Default for CostLedger {
    fn default() -> Self {
        CostLedger { leaves_visited: 0, nodes_visited: 0, max_depth: 0, grover_log2: 0.0 }
    }
}

impl CostLedger {
    /// Folds in the counters of a sub-run. Query exponents combine by `max`,
    /// since a sum of polynomially many terms is within a polynomial factor of
    /// its largest term.
    pub fn absorb(&mut self, other: &CostLedger) {
        self.leaves_visited += other.leaves_visited;
        self.nodes_visited += other.nodes_visited;
        self.max_depth = self.max_depth.max(other.max_depth);
        self.grover_log2 = self.grover_log2.max(other.grover_log2);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BranchError {
    #[error("capacity not subadditive at params {params:?}: parent {capacity}, children {children:?}")]
    CapacityViolation { params: Vec<u32>, capacity: u128, children: Vec<u128> },
    #[error("child params {child:?} do not decrease from parent {parent:?}")]
    ParamsNotDecreasing { parent: Vec<u32>, child: Vec<u32> },
    #[error("leaf with params {params:?} has capacity zero")]
    ZeroLeafCapacity { params: Vec<u32> },
    #[error("minimum over an empty child list at params {params:?}")]
    EmptyMin { params: Vec<u32> },
    #[error("leaf index {index} outside 1..={capacity}")]
    IndexOutOfRange { index: u128, capacity: u128 },
    #[error("visited {leaves} leaves but root capacity is {capacity}")]
    LeafCountExceeded { leaves: u64, capacity: u128 },
    #[error("capacity {capacity} too large to enumerate (limit {limit})")]
    TooManyIndices { capacity: u128, limit: u128 },
}

/// A family of branching rules.
pub trait BranchRules {
    type Problem: Clone + Debug;
    type Params: AsRef<[u32]> + Copy + Debug;
    type Value;

    fn params(&self, problem: &Self::Problem) -> Self::Params;

    fn is_leaf(&self, problem: &Self::Problem) -> bool;

    fn solve_leaf(&self, problem: &Self::Problem) -> Self::Value;

    /// Appends the children of an inner problem to `out`, in a fixed order.
    /// An inner problem may have no children when no leaf lies below it.
    fn expand(&self, problem: &Self::Problem, out: &mut Vec<Self::Problem>);

    fn capacity(&self, params: &Self::Params) -> Capacity;

    /// `log2` of the cost of solving any leaf below a problem with `params`.
    fn leaf_cost_log2(&self, _params: &Self::Params) -> f64 {
        0.0
    }
}

/// What the traversal reports to its visitor.
#[derive(Debug)]
pub enum NodeEvent<'a, P> {
    Leaf(&'a P),
    /// An inner node whose expansion was empty.
    DeadEnd(&'a P),
}

fn params_vec<R: BranchRules>(p: &R::Params) -> Vec<u32> {
    p.as_ref().to_vec()
}

/// Depth-first traversal in child order, checking the capacity contract at
/// every inner node. Stops early when `visit` breaks.
pub fn traverse<R, F>(rules: &R, root: &R::Problem, mut visit: F) -> Result<CostLedger, BranchError>
where
    R: BranchRules,
    F: FnMut(NodeEvent<'_, R::Problem>) -> ControlFlow<()>,
{
    let root_params = rules.params(root);
    let root_capacity = rules.capacity(&root_params);
    let mut ledger = CostLedger::default();
    let mut stack: Vec<(R::Problem, u32)> = Vec::new();
    let mut children: Vec<R::Problem> = Vec::new();
    stack.push((root.clone(), 0));

    while let Some((node, depth)) = stack.pop() {
        ledger.nodes_visited += 1;
        ledger.max_depth = ledger.max_depth.max(depth);
        let params = rules.params(&node);
        if rules.is_leaf(&node) {
            if rules.capacity(&params).0 == 0 {
                return Err(BranchError::ZeroLeafCapacity { params: params_vec::<R>(&params) });
            }
            ledger.leaves_visited += 1;
            if visit(NodeEvent::Leaf(&node)).is_break() {
                break;
            }
            continue;
        }

        children.clear();
        rules.expand(&node, &mut children);
        if children.is_empty() {
            if visit(NodeEvent::DeadEnd(&node)).is_break() {
                break;
            }
            continue;
        }

        let parent_capacity = rules.capacity(&params);
        let mut total: u128 = 0;
        for child in &children {
            let cp = rules.params(child);
            let (p, c) = (params.as_ref(), cp.as_ref());
            let decreasing =
                p.len() == c.len() && p.iter().zip(c).all(|(a, b)| b <= a) && p.iter().zip(c).any(|(a, b)| b < a);
            if !decreasing {
                return Err(BranchError::ParamsNotDecreasing {
                    parent: params_vec::<R>(&params),
                    child: params_vec::<R>(&cp),
                });
            }
            total = total.saturating_add(rules.capacity(&cp).0);
        }
        if total > parent_capacity.0 {
            return Err(BranchError::CapacityViolation {
                params: params_vec::<R>(&params),
                capacity: parent_capacity.0,
                children: children.iter().map(|c| rules.capacity(&rules.params(c)).0).collect(),
            });
        }
        stack.extend(children.drain(..).rev().map(|c| (c, depth + 1)));
    }

    if u128::from(ledger.leaves_visited) > root_capacity.0 {
        return Err(BranchError::LeafCountExceeded { leaves: ledger.leaves_visited, capacity: root_capacity.0 });
    }
    Ok(ledger)
}

/// `log2` of the modelled Grover cost of searching the leaves below `root`:
/// `sqrt(U(root))` index queries, each paying the leaf cost.
pub fn modeled_grover_cost<R: BranchRules>(rules: &R, root: &R::Problem) -> f64 {
    let params = rules.params(root);
    0.5 * rules.capacity(&params).log2() + rules.leaf_cost_log2(&params)
}

/// OR over all leaf solutions. The classical traversal stops at the first
/// `true`; the ledger's query model does not depend on where it stopped.
pub fn run_or<R>(rules: &R, root: &R::Problem) -> Result<(bool, CostLedger), BranchError>
where
    R: BranchRules<Value = bool>,
{
    let mut found = false;
    let mut ledger = traverse(rules, root, |event| match event {
        NodeEvent::Leaf(p) if rules.solve_leaf(p) => {
            found = true;
            ControlFlow::Break(())
        }
        _ => ControlFlow::Continue(()),
    })?;
    ledger.grover_log2 = modeled_grover_cost(rules, root);
    Ok((found, ledger))
}

/// Minimum over all leaf solutions. Any inner node without children is an
/// error, since the minimum over it is undefined.
pub fn run_min<R, V>(rules: &R, root: &R::Problem) -> Result<(V, CostLedger), BranchError>
where
    R: BranchRules<Value = V>,
    V: Ord,
{
    let mut best: Option<V> = None;
    let mut dead: Option<Vec<u32>> = None;
    let mut ledger = traverse(rules, root, |event| match event {
        NodeEvent::Leaf(p) => {
            let v = rules.solve_leaf(p);
            if best.as_ref().is_none_or(|b| v < *b) {
                best = Some(v);
            }
            ControlFlow::Continue(())
        }
        NodeEvent::DeadEnd(p) => {
            dead = Some(params_vec::<R>(&rules.params(p)));
            ControlFlow::Break(())
        }
    })?;
    if let Some(params) = dead {
        return Err(BranchError::EmptyMin { params });
    }
    ledger.grover_log2 = modeled_grover_cost(rules, root);
    match best {
        Some(v) => Ok((v, ledger)),
        None => Err(BranchError::EmptyMin { params: params_vec::<R>(&rules.params(root)) }),
    }
}

/// Result of following a leaf index down the tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexedLeaf<P> {
    Leaf(P),
    /// The index ran into an inner node with no children; there is no leaf
    /// for it, and a search treats it as a miss.
    DeadEnd(P),
}

impl<P> IndexedLeaf<P> {
    pub fn leaf(self) -> Option<P> {
        match self {
            IndexedLeaf::Leaf(p) => Some(p),
            IndexedLeaf::DeadEnd(_) => None,
        }
    }
}

/// The `s`-th leaf of `root`, `1 <= s <= U(root)`.
///
/// Walks the children in order: descend into child `i` when `s <= U(child i)`,
/// otherwise subtract its capacity and move on. The last child takes whatever
/// remains, even if that exceeds its own capacity.
pub fn leaf<R: BranchRules>(rules: &R, root: &R::Problem, s: u128) -> Result<IndexedLeaf<R::Problem>, BranchError> {
    let capacity = rules.capacity(&rules.params(root)).0;
    if s == 0 || s > capacity {
        return Err(BranchError::IndexOutOfRange { index: s, capacity });
    }
    let mut s = s;
    let mut node = root.clone();
    let mut children = Vec::new();
    'descend: loop {
        if rules.is_leaf(&node) {
            return Ok(IndexedLeaf::Leaf(node));
        }
        children.clear();
        rules.expand(&node, &mut children);
        let Some(last) = children.pop() else {
            return Ok(IndexedLeaf::DeadEnd(node));
        };
        for child in children.drain(..) {
            let c = rules.capacity(&rules.params(&child)).0;
            if s <= c {
                node = child;
                continue 'descend;
            }
            s -= c;
        }
        node = last;
    }
}

/// Index-versus-traversal comparison for one root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageReport<P> {
    pub capacity: u128,
    /// Distinct leaves reached by the full traversal.
    pub traversal_leaves: usize,
    /// Traversal leaves reached by no index.
    pub uncovered: Vec<P>,
    /// Leaves reached by an index but not by the traversal.
    pub stray: Vec<P>,
    /// Indices that ended at a childless inner node.
    pub dead_end_indices: u128,
    /// `hits -> number of distinct leaves hit that many times`.
    pub multiplicity: BTreeMap<u128, usize>,
}

impl<P> CoverageReport<P> {
    pub fn all_covered(&self) -> bool {
        self.uncovered.is_empty() && self.stray.is_empty()
    }
}

/// Default index budget for [`leaf_coverage_check`].
pub const COVERAGE_INDEX_LIMIT: u128 = 1_000_000;

/// Runs [`leaf`] for every `s` in `1..=U(root)` and checks that every leaf of
/// the traversal is hit at least once.
pub fn leaf_coverage_check<R>(
    rules: &R,
    root: &R::Problem,
    index_limit: u128,
) -> Result<CoverageReport<R::Problem>, BranchError>
where
    R: BranchRules,
    R::Problem: Ord,
{
    let capacity = rules.capacity(&rules.params(root)).0;
    if capacity > index_limit {
        return Err(BranchError::TooManyIndices { capacity, limit: index_limit });
    }

    let mut hits: BTreeMap<R::Problem, u128> = BTreeMap::new();
    traverse(rules, root, |event| {
        if let NodeEvent::Leaf(p) = event {
            hits.entry(p.clone()).or_insert(0);
        }
        ControlFlow::Continue(())
    })?;
    let traversal_leaves = hits.len();

    let mut stray = Vec::new();
    let mut dead_end_indices = 0;
    for s in 1..=capacity {
        match leaf(rules, root, s)? {
            IndexedLeaf::Leaf(p) => match hits.get_mut(&p) {
                Some(h) => *h += 1,
                None => {
                    if !stray.contains(&p) {
                        stray.push(p);
                    }
                }
            },
            IndexedLeaf::DeadEnd(_) => dead_end_indices += 1,
        }
    }

    let mut multiplicity = BTreeMap::new();
    let mut uncovered = Vec::new();
    for (p, h) in hits {
        if h == 0 {
            uncovered.push(p);
        } else {
            *multiplicity.entry(h).or_insert(0) += 1;
        }
    }
    Ok(CoverageReport { capacity, traversal_leaves, uncovered, stray, dead_end_indices, multiplicity })
}

/// Rules adapter that post-processes every leaf solution.
pub struct MapLeaves<R, F, V> {
    inner: R,
    map: F,
    _value: PhantomData<fn() -> V>,
}

impl<R, F, V> MapLeaves<R, F, V>
where
    R: BranchRules,
    F: Fn(R::Value) -> V,
{
    pub fn new(inner: R, map: F) -> Self {
        MapLeaves { inner, map, _value: PhantomData }
    }

    pub fn inner(&self) -> &R {
        &self.inner
    }
}

impl<R, F, V> BranchRules for MapLeaves<R, F, V>
where
    R: BranchRules,
    F: Fn(R::Value) -> V,
{
    type Problem = R::Problem;
    type Params = R::Params;
    type Value = V;

    fn params(&self, problem: &Self::Problem) -> Self::Params {
        self.inner.params(problem)
    }

    fn is_leaf(&self, problem: &Self::Problem) -> bool {
        self.inner.is_leaf(problem)
    }

    fn solve_leaf(&self, problem: &Self::Problem) -> V {
        (self.map)(self.inner.solve_leaf(problem))
    }

    fn expand(&self, problem: &Self::Problem, out: &mut Vec<Self::Problem>) {
        self.inner.expand(problem, out)
    }

    fn capacity(&self, params: &Self::Params) -> Capacity {
        self.inner.capacity(params)
    }

    fn leaf_cost_log2(&self, params: &Self::Params) -> f64 {
        self.inner.leaf_cost_log2(params)
    }
}
