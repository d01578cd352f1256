//! k-colourability by reduction to smaller colour counts, with and without a
//! bound on colour-class sizes, and the query-cost models of both.
//!
//! Subproblems are vertex subsets of the input graph; nothing is relabelled.
//! Each OR over maximal independent sets or vertex subsets stops at the first
//! witness, while the modelled query counts depend only on `n`, `k` and `u`.

use alloc::collections::BTreeMap;
use core::ops::ControlFlow;

use thiserror::Error;

use crate::branching::{run_or, BranchError, CostLedger, MapLeaves};
use crate::chromatic::binomial;
use crate::exponents::{alg4_kprime, f3_star, table2_kprime, F3Mode, KPrime};
use crate::graph::Graph;
use crate::mis::{for_each_mis_sized, i_bound_or_zero, AllMis, MisNode};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KColorError {
    #[error("this reduction needs k >= 4, got {0}")]
    KTooSmall(u32),
    #[error("k' = {kprime} outside 2..={max}")]
    BadKPrime { kprime: u32, max: u32 },
    #[error(transparent)]
    Branch(#[from] BranchError),
}

/// `k'` for the unbounded algorithm: the tabulated choice, `floor(k/2)` past the table.
pub fn col_kprime(k: u32) -> KPrime {
    table2_kprime(k).unwrap_or(KPrime::Split(k / 2))
}

/// `k'` for the size-bounded algorithm.
pub fn col_bounded_kprime(k: u32) -> KPrime {
    alg4_kprime(k).unwrap_or(KPrime::Split(k / 2))
}

fn small_k(g: &Graph, s: VertexSet, k: u32) -> bool {
    match k {
        0 => s.is_empty(),
        1 => g.is_independent(s),
        _ => g.chromatic_le_2_in(s).is_some(),
    }
}

/// Whether `G[S]` is 3-colourable: some MIS `I` of `G[S]` leaves `G[S \ I]` bipartite.
fn col3_in(g: &Graph, s: VertexSet, ledger: &mut CostLedger) -> Result<bool, BranchError> {
    let rules = MapLeaves::new(AllMis { graph: g }, |i: VertexSet| g.chromatic_le_2_in(s.difference(i)).is_some());
    let (found, run) = run_or(&rules, &MisNode::all(s))?;
    ledger.absorb(&run);
    Ok(found)
}

/// OR over `t`-MISs `I` of `G[S]`, `t >= ceil(|S|/k)`, of `inner(S \ I)`.
fn reduction1<F>(g: &Graph, s: VertexSet, k: u32, ledger: &mut CostLedger, mut inner: F) -> Result<bool, KColorError>
where
    F: FnMut(VertexSet, &mut CostLedger) -> Result<bool, KColorError>,
{
    let n = s.len() as u32;
    if n == 0 {
        return inner(s, ledger);
    }
    for t in n.div_ceil(k)..=n {
        let mut found = Ok(false);
        let run = for_each_mis_sized(g, s, t, |i| {
            found = inner(s.difference(i), ledger);
            match found {
                Ok(false) => ControlFlow::Continue(()),
                _ => ControlFlow::Break(()),
            }
        })?;
        ledger.absorb(&run);
        if found? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// OR over `T` subset of `S` with `|T|` in `t_range` of `left(T) && right(T, S \ T)`.
fn reduction2<L, R>(
    s: VertexSet,
    t_range: core::ops::RangeInclusive<u32>,
    ledger: &mut CostLedger,
    mut left: L,
    mut right: R,
) -> Result<bool, KColorError>
where
    L: FnMut(VertexSet, &mut CostLedger) -> Result<bool, KColorError>,
    R: FnMut(u32, VertexSet, &mut CostLedger) -> Result<bool, KColorError>,
{
    for t in t_range {
        for part in s.subsets_of_size(t as usize) {
            ledger.leaves_visited += 1;
            if left(part, ledger)? && right(t, s.difference(part), ledger)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn col_in(g: &Graph, s: VertexSet, k: u32, ledger: &mut CostLedger) -> Result<bool, KColorError> {
    match k {
        0..=2 => Ok(small_k(g, s, k)),
        3 => Ok(col3_in(g, s, ledger)?),
        _ => match col_kprime(k) {
            KPrime::Reduction1 => reduction1(g, s, k, ledger, |rest, l| col_in(g, rest, k - 1, l)),
            KPrime::Split(kp) => reduce2_in(g, s, k, kp, ledger),
        },
    }
}

fn reduce1_in(g: &Graph, s: VertexSet, k: u32, ledger: &mut CostLedger) -> Result<bool, KColorError> {
    match k {
        0..=2 => Ok(small_k(g, s, k)),
        3 => Ok(col3_in(g, s, ledger)?),
        _ => reduction1(g, s, k, ledger, |rest, l| reduce1_in(g, rest, k - 1, l)),
    }
}

fn reduce2_in(g: &Graph, s: VertexSet, k: u32, kp: u32, ledger: &mut CostLedger) -> Result<bool, KColorError> {
    let n = s.len() as u32;
    reduction2(
        s,
        (n * kp).div_ceil(k)..=n,
        ledger,
        |part, l| col_in(g, part, kp, l),
        |_, rest, l| col_in(g, rest, k - kp, l),
    )
}

/// Exact 3-colourability. The ledger's query exponent is `f3 * n`.
pub fn col3(g: &Graph, f3: F3Mode) -> Result<(bool, CostLedger), KColorError> {
    let mut ledger = CostLedger::default();
    let found = col3_in(g, g.vertices(), &mut ledger)?;
    ledger.grover_log2 = f3_star(f3) * g.n() as f64;
    Ok((found, ledger))
}

/// k-colourability by repeatedly removing a large maximal independent set,
/// down to three colours.
pub fn reduce1(g: &Graph, k: u32, f3: F3Mode) -> Result<(bool, CostLedger), KColorError> {
    if k < 4 {
        return Err(KColorError::KTooSmall(k));
    }
    let mut ledger = CostLedger::default();
    let found = reduce1_in(g, g.vertices(), k, &mut ledger)?;
    ledger.grover_log2 = ColCostModel::new(f3).reduce1(g.n() as u32, k);
    Ok((found, ledger))
}

/// k-colourability by splitting the vertices into a `k'`-colourable part of
/// size at least `ceil(n k' / k)` and a `(k - k')`-colourable rest.
pub fn reduce2(g: &Graph, k: u32, kprime: u32, f3: F3Mode) -> Result<(bool, CostLedger), KColorError> {
    if k < 4 {
        return Err(KColorError::KTooSmall(k));
    }
    if !(2..=k / 2).contains(&kprime) {
        return Err(KColorError::BadKPrime { kprime, max: k / 2 });
    }
    let mut ledger = CostLedger::default();
    let found = reduce2_in(g, g.vertices(), k, kprime, &mut ledger)?;
    ledger.grover_log2 = ColCostModel::new(f3).reduce2(g.n() as u32, k, kprime);
    Ok((found, ledger))
}

/// k-colourability: polynomial for `k <= 2`, the MIS method for `k = 3`,
/// the first reduction for `k = 4, 5`, the split reduction above.
pub fn col(g: &Graph, k: u32, f3: F3Mode) -> Result<(bool, CostLedger), KColorError> {
    let mut ledger = CostLedger::default();
    let found = col_in(g, g.vertices(), k, &mut ledger)?;
    ledger.grover_log2 = ColCostModel::new(f3).col(g.n() as u32, k);
    Ok((found, ledger))
}

/// Outcome of the size-bounded colouring test.
///
/// `True` means a k-colouring was found. `False` means `G` has no partition
/// into `k` independent sets of size at most `u`, and may still be
/// k-colourable. `UndeterminedInput` is returned without searching when
/// `u < ceil(n/k)`: no such partition exists, so `true` is never required.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundedVerdict {
    True,
    False,
    UndeterminedInput,
}

impl BoundedVerdict {
    pub fn value(self) -> bool {
        self == BoundedVerdict::True
    }
}

fn col_bounded_in(g: &Graph, s: VertexSet, k: u32, u: u32, ledger: &mut CostLedger) -> Result<bool, KColorError> {
    let n = s.len() as u32;
    match k {
        0..=2 => Ok(small_k(g, s, k)),
        3 => Ok(col3_in(g, s, ledger)?),
        _ => match col_bounded_kprime(k) {
            KPrime::Reduction1 => {
                reduction1(g, s, k, ledger, |rest, l| col_bounded_in(g, rest, k - 1, rest.len() as u32, l))
            }
            KPrime::Split(kp) => reduction2(
                s,
                (n * kp).div_ceil(k)..=n.min(u.saturating_mul(kp)),
                ledger,
                |part, l| col_bounded_in(g, part, kp, u, l),
                |t, rest, l| col_bounded_in(g, rest, k - kp, t / kp, l),
            ),
        },
    }
}

/// Size-bounded k-colourability: true whenever `G` splits into `k`
/// independent sets of size at most `u`, false whenever `G` is not
/// k-colourable, either answer otherwise.
pub fn col_bounded(g: &Graph, k: u32, u: u32, f3: F3Mode) -> Result<(BoundedVerdict, CostLedger), KColorError> {
    let n = g.n() as u32;
    let mut ledger = CostLedger::default();
    if k > 0 && u < n.div_ceil(k) {
        return Ok((BoundedVerdict::UndeterminedInput, ledger));
    }
    let found = col_bounded_in(g, g.vertices(), k, u, &mut ledger)?;
    ledger.grover_log2 = BoundedCostModel::new(f3).cost(n, k, u);
    let verdict = if found { BoundedVerdict::True } else { BoundedVerdict::False };
    Ok((verdict, ledger))
}

fn log2_u128(x: u128) -> f64 {
    libm::log2(x as f64)
}

/// Largest term of `sqrt(I(n, t)) * T(n - t)` over `t = ceil(n/k)..=n`, in `log2`.
fn reduction1_cost<F: FnMut(u32) -> f64>(n: u32, k: u32, mut inner: F) -> f64 {
    (n.div_ceil(k)..=n)
        .filter_map(|t| {
            let count = i_bound_or_zero(n, t);
            (count > 0).then(|| 0.5 * log2_u128(count) + inner(n - t))
        })
        .fold(0.0, f64::max)
}

/// Modelled `log2` query counts of the unbounded algorithm, polynomial
/// factors dropped: terms are combined by `max`.
#[derive(Debug, Clone)]
pub struct ColCostModel {
    f3: f64,
    memo: BTreeMap<(u32, u32), f64>,
}

impl ColCostModel {
    pub fn new(f3: F3Mode) -> Self {
        ColCostModel { f3: f3_star(f3), memo: BTreeMap::new() }
    }

    pub fn col(&mut self, n: u32, k: u32) -> f64 {
        match k {
            0..=2 => return 0.0,
            3 => return self.f3 * f64::from(n),
            _ => {}
        }
        if let Some(&v) = self.memo.get(&(n, k)) {
            return v;
        }
        let v = match col_kprime(k) {
            KPrime::Reduction1 => reduction1_cost(n, k, |m| self.col(m, k - 1)),
            KPrime::Split(kp) => self.reduce2(n, k, kp),
        };
        self.memo.insert((n, k), v);
        v
    }

    /// The first reduction all the way down to three colours.
    pub fn reduce1(&mut self, n: u32, k: u32) -> f64 {
        match k {
            0..=2 => 0.0,
            3 => self.f3 * f64::from(n),
            _ => reduction1_cost(n, k, |m| self.reduce1(m, k - 1)),
        }
    }

    /// One split with `k'`, inner parts solved by [`ColCostModel::col`].
    pub fn reduce2(&mut self, n: u32, k: u32, kp: u32) -> f64 {
        ((n * kp).div_ceil(k)..=n)
            .map(|t| 0.5 * log2_u128(binomial(n, t)) + self.col(t, kp).max(self.col(n - t, k - kp)))
            .fold(0.0, f64::max)
    }
}

/// Modelled `log2` query counts of the size-bounded algorithm.
#[derive(Debug, Clone)]
pub struct BoundedCostModel {
    f3: f64,
    memo: BTreeMap<(u32, u32, u32), f64>,
}

impl BoundedCostModel {
    pub fn new(f3: F3Mode) -> Self {
        BoundedCostModel { f3: f3_star(f3), memo: BTreeMap::new() }
    }

    pub fn cost(&mut self, n: u32, k: u32, u: u32) -> f64 {
        match k {
            0..=2 => return 0.0,
            3 => return self.f3 * f64::from(n),
            _ => {}
        }
        let u = u.min(n);
        if let Some(&v) = self.memo.get(&(n, k, u)) {
            return v;
        }
        let v = match col_bounded_kprime(k) {
            KPrime::Reduction1 => reduction1_cost(n, k, |m| self.cost(m, k - 1, m)),
            KPrime::Split(kp) => ((n * kp).div_ceil(k)..=n.min(u.saturating_mul(kp)))
                .map(|t| {
                    let left = self.cost(t, kp, t.min(u));
                    let right = self.cost(n - t, k - kp, (n - t).min(t / kp));
                    0.5 * log2_u128(binomial(n, t)) + left.max(right)
                })
                .fold(0.0, f64::max),
        };
        self.memo.insert((n, k, u), v);
        v
    }
}
