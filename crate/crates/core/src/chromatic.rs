//! Chromatic number: Lawler's subset recursion, the table-plus-balanced-split
//! algorithm with its query-cost model, and the balanced partition lemma it
//! relies on.
//!
//! Every Grover minimum of the quantum algorithm is replaced by an exact
//! classical minimum. The modelled query count is recorded separately and
//! depends only on `n`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use thiserror::Error;

use crate::branching::{BranchError, CostLedger};
use crate::exponents::binary_entropy;
use crate::graph::Graph;
use crate::mis::{e_exponent, for_each_mis, for_each_mis_sized, i_bound, moon_moser};
use crate::vertex_set::VertexSet;

pub const LAWLER_MAX_VERTICES: usize = 22;
pub const CHR_MAX_VERTICES: usize = 20;

const UNKNOWN: u8 = u8::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChromaticError {
    #[error("graph on {n} vertices exceeds the limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("split part of size {part} exceeds half of {whole}")]
    PartTooLarge { part: usize, whole: usize },
    #[error("table lookup for a set of size {size}, table holds sizes up to {limit}")]
    TableMiss { size: usize, limit: usize },
    #[error("table built for {table} vertices used with a graph on {graph}")]
    TableSize { table: usize, graph: usize },
    #[error("table entry for {0:?} is inconsistent")]
    TableEntry(VertexSet),
    #[error(transparent)]
    Branch(#[from] BranchError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Fact1Error {
    #[error("empty composition")]
    Empty,
    #[error("composition has a zero part")]
    ZeroPart,
    #[error("composition has more than 64 parts")]
    TooManyParts,
    #[error("first part is not a maximum")]
    FirstNotMaximal,
    #[error("m = {m} outside 1..={max}")]
    BadM { m: u64, max: u64 },
}

/// Balanced split of a composition `a` of `n` whose first part is largest.
///
/// Returns `S`, a set of 0-based indices drawn from `1..a.len()`, with
/// `sum(a[S]) <= m` and `sum(a[rest]) <= n - m - 1`, where `rest` is
/// `1..a.len()` minus `S`. `S` is the longest prefix of `1..` whose sum fits
/// in `m`.
pub fn fact1_split(a: &[u64], m: u64) -> Result<VertexSet, Fact1Error> {
    let (&first, tail) = a.split_first().ok_or(Fact1Error::Empty)?;
    if a.len() > 64 {
        return Err(Fact1Error::TooManyParts);
    }
    if a.contains(&0) {
        return Err(Fact1Error::ZeroPart);
    }
    if tail.iter().any(|&x| x > first) {
        return Err(Fact1Error::FirstNotMaximal);
    }
    let n: u64 = a.iter().sum();
    if !(1..n).contains(&m) {
        return Err(Fact1Error::BadM { m, max: n.saturating_sub(1) });
    }
    let mut chosen = VertexSet::EMPTY;
    let mut sum = 0;
    for (i, &x) in tail.iter().enumerate() {
        if sum + x > m {
            break;
        }
        sum += x;
        chosen.insert(i + 1);
    }
    Ok(chosen)
}

fn check_size(g: &Graph, limit: usize) -> Result<(), ChromaticError> {
    if g.n() > limit {
        Err(ChromaticError::TooLarge { n: g.n(), limit })
    } else {
        Ok(())
    }
}

/// `chi[S] = 1 + min over MISs I of G[S] of chi[S \ I]`, for `S` in `subsets`,
/// which must be listed with every subset before its supersets.
fn lawler_fill<I>(g: &Graph, chi: &mut [u8], subsets: I) -> Result<CostLedger, BranchError>
where
    I: IntoIterator<Item = VertexSet>,
{
    let mut ledger = CostLedger::default();
    chi[0] = 0;
    for s in subsets {
        if s.is_empty() {
            continue;
        }
        let mut best = u8::MAX;
        let run = for_each_mis(g, s, |i| {
            best = best.min(chi[s.difference(i).bits() as usize]);
            ControlFlow::Continue(())
        })?;
        ledger.absorb(&run);
        chi[s.bits() as usize] = best + 1;
    }
    Ok(ledger)
}

/// `χ(G)` by Lawler's recursion over all `2^n` vertex subsets.
pub fn lawler_dp(g: &Graph) -> Result<u32, ChromaticError> {
    check_size(g, LAWLER_MAX_VERTICES)?;
    let mut chi = vec![UNKNOWN; 1 << g.n()];
    // Ascending bitmask order lists every subset before its supersets.
    lawler_fill(g, &mut chi, (0..1u64 << g.n()).map(VertexSet::from_bits))?;
    Ok(u32::from(chi[chi.len() - 1]))
}

/// `χ(G[S])` for every `S` with `|S| <= max_size`.
#[derive(Clone, PartialEq, Eq)]
pub struct ChiTable {
    n: usize,
    max_size: usize,
    values: Vec<u8>,
}

impl ChiTable {
    /// Table for the precomputation step: all subsets of size up to `n / 4`.
    pub fn build(g: &Graph) -> Result<(ChiTable, CostLedger), ChromaticError> {
        ChiTable::build_up_to(g, g.n() / 4)
    }

    pub fn build_up_to(g: &Graph, max_size: usize) -> Result<(ChiTable, CostLedger), ChromaticError> {
        check_size(g, CHR_MAX_VERTICES)?;
        let max_size = max_size.min(g.n());
        let mut values = vec![UNKNOWN; 1 << g.n()];
        let all = g.vertices();
        let order = (0..=max_size).flat_map(|k| all.subsets_of_size(k));
        let ledger = lawler_fill(g, &mut values, order)?;
        Ok((ChiTable { n: g.n(), max_size, values }, ledger))
    }

    /// Rebuilds a table from stored entries. Every subset of size up to
    /// `max_size` must be present exactly once.
    pub fn from_entries<I>(n: usize, max_size: usize, entries: I) -> Result<ChiTable, ChromaticError>
    where
        I: IntoIterator<Item = (VertexSet, u32)>,
    {
        if n > CHR_MAX_VERTICES {
            return Err(ChromaticError::TooLarge { n, limit: CHR_MAX_VERTICES });
        }
        let all = VertexSet::full(n);
        let mut values = vec![UNKNOWN; 1 << n];
        for (s, chi) in entries {
            let slot = values.get_mut(s.bits() as usize);
            match slot {
                Some(v) if *v == UNKNOWN && s.is_subset(all) && s.len() <= max_size && chi <= s.len() as u32 => {
                    *v = chi as u8;
                }
                _ => return Err(ChromaticError::TableEntry(s)),
            }
        }
        let table = ChiTable { n, max_size, values };
        if let Some((s, _)) = (0..=max_size)
            .flat_map(|k| all.subsets_of_size(k))
            .map(|s| (s, table.values[s.bits() as usize]))
            .find(|&(_, v)| v == UNKNOWN)
        {
            return Err(ChromaticError::TableEntry(s));
        }
        Ok(table)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_size(&self) -> usize {
        self.max_size
    }

    pub fn get(&self, s: VertexSet) -> Option<u32> {
        match self.values.get(s.bits() as usize) {
            Some(&v) if v != UNKNOWN => Some(u32::from(v)),
            _ => None,
        }
    }

    /// Number of stored subsets, including the empty set.
    pub fn len(&self) -> usize {
        self.values.iter().filter(|&&v| v != UNKNOWN).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Entries in ascending bitmask order.
    pub fn iter(&self) -> impl Iterator<Item = (VertexSet, u32)> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|&(_, &v)| v != UNKNOWN)
            .map(|(s, &v)| (VertexSet::from_bits(s as u64), u32::from(v)))
    }
}

impl core::fmt::Debug for ChiTable {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("ChiTable")
            .field("n", &self.n)
            .field("max_size", &self.max_size)
            .field("entries", &self.len())
            .finish()
    }
}

struct Chr<'a> {
    g: &'a Graph,
    table: &'a ChiTable,
    memo: Vec<u8>,
    ledger: CostLedger,
}

#[derive(Clone, Copy)]
enum Level {
    Top,
    Inner,
}

impl Chr<'_> {
    fn part_value(&mut self, level: Level, part: VertexSet) -> Result<u32, ChromaticError> {
        match level {
            Level::Top => self.chr2(part),
            Level::Inner => {
                self.table.get(part).ok_or(ChromaticError::TableMiss { size: part.len(), limit: self.table.max_size })
            }
        }
    }

    /// `1 + min` over `t`-MISs `I` of `G[S]` and balanced splits `T`,
    /// `S \ I \ T` of the rest, of the sum of the part values.
    fn split_min(&mut self, level: Level, s: VertexSet) -> Result<u32, ChromaticError> {
        let m = s.len();
        let mut c = m as u32;
        let mut mis = Vec::new();
        for t in 1..=m {
            let lo = (m.div_ceil(2).saturating_sub(t)).max(1);
            let hi = (m - t) / 2;
            if lo > hi {
                continue;
            }
            mis.clear();
            let run = for_each_mis_sized(self.g, s, t as u32, |i| {
                mis.push(i);
                ControlFlow::Continue(())
            })?;
            self.ledger.absorb(&run);
            mis.sort_unstable();
            mis.dedup();
            for &i in &mis {
                let rest = s.difference(i);
                for size in lo..=hi {
                    for part in rest.subsets_of_size(size) {
                        let other = rest.difference(part);
                        for p in [part, other] {
                            if p.len() > m / 2 {
                                return Err(ChromaticError::PartTooLarge { part: p.len(), whole: m });
                            }
                        }
                        let a = self.part_value(level, part)? + self.part_value(level, other)?;
                        c = c.min(a);
                    }
                }
            }
        }
        Ok(c + 1)
    }

    fn chr2(&mut self, s: VertexSet) -> Result<u32, ChromaticError> {
        let key = s.bits() as usize;
        if self.memo[key] != UNKNOWN {
            return Ok(u32::from(self.memo[key]));
        }
        let value = match self.g.chromatic_le_2_in(s) {
            Some(chi) => chi,
            None => self.split_min(Level::Inner, s)?,
        };
        self.memo[key] = value as u8;
        Ok(value)
    }
}

/// `χ(G)` by precomputing a table for small subsets and then taking balanced
/// two-level splits.
pub fn chromatic_number(g: &Graph) -> Result<(u32, CostLedger), ChromaticError> {
    check_size(g, CHR_MAX_VERTICES)?;
    if let Some(chi) = g.chromatic_le_2() {
        return Ok((chi, fast_path_ledger(g)));
    }
    let (table, build) = ChiTable::build(g)?;
    let (chi, mut ledger) = chromatic_number_with_table(g, &table)?;
    ledger.absorb(&build);
    ledger.grover_log2 = chr_cost_log2(g.n() as u32);
    Ok((chi, ledger))
}

/// As [`chromatic_number`], reusing a table built earlier for the same graph.
pub fn chromatic_number_with_table(g: &Graph, table: &ChiTable) -> Result<(u32, CostLedger), ChromaticError> {
    check_size(g, CHR_MAX_VERTICES)?;
    if table.n != g.n() {
        return Err(ChromaticError::TableSize { table: table.n, graph: g.n() });
    }
    if let Some(chi) = g.chromatic_le_2() {
        return Ok((chi, fast_path_ledger(g)));
    }
    let mut run = Chr { g, table, memo: vec![UNKNOWN; 1 << g.n()], ledger: CostLedger::default() };
    let chi = run.split_min(Level::Top, g.vertices())?;
    let mut ledger = run.ledger;
    ledger.grover_log2 = chr_cost_log2(g.n() as u32);
    Ok((chi, ledger))
}

fn fast_path_ledger(g: &Graph) -> CostLedger {
    CostLedger { grover_log2: libm::log2(g.n().max(1) as f64), ..CostLedger::default() }
}

/// `C(n, k)` exactly.
pub fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

fn log2_u128(x: u128) -> f64 {
    libm::log2(x as f64)
}

/// Split ranges `(t, lo..=hi)` of the balanced-split loops for a set of size `m`.
fn split_ranges(m: u32) -> impl Iterator<Item = (u32, u32, u32)> {
    (1..=m).filter_map(move |t| {
        let lo = m.div_ceil(2).saturating_sub(t).max(1);
        let hi = (m - t) / 2;
        (lo <= hi).then_some((t, lo, hi))
    })
}

/// `log2` of the modelled queries of the inner split on `m` vertices: the
/// largest `sqrt(I(m, t) * C(m - t, s))` over the loop ranges.
pub fn chr2_cost_log2(m: u32) -> f64 {
    split_ranges(m)
        .flat_map(|(t, lo, hi)| (lo..=hi).map(move |s| (t, s)))
        .map(|(t, s)| 0.5 * (log2_u128(i_bound(m, t).unwrap_or(1)) + log2_u128(binomial(m - t, s))))
        .fold(0.0, f64::max)
}

/// `log2` of the modelled queries of the outer split on `n` vertices.
pub fn chr1_cost_log2(n: u32) -> f64 {
    split_ranges(n)
        .flat_map(|(t, lo, hi)| (lo..=hi).map(move |s| (t, s)))
        .map(|(t, s)| {
            let inner = chr2_cost_log2(s).max(chr2_cost_log2(n - t - s));
            0.5 * (log2_u128(i_bound(n, t).unwrap_or(1)) + log2_u128(binomial(n - t, s))) + inner
        })
        .fold(0.0, f64::max)
}

/// `log2` of the table precomputation: largest `C(n, i) * sqrt(M(i))` with
/// `i <= n / 4`.
pub fn chr_precompute_cost_log2(n: u32) -> f64 {
    (0..=n / 4).map(|i| log2_u128(binomial(n, i)) + 0.5 * log2_u128(moon_moser(i))).fold(0.0, f64::max)
}

/// `log2` of the total modelled query count on `n` vertices, polynomial
/// factors dropped.
pub fn chr_cost_log2(n: u32) -> f64 {
    chr1_cost_log2(n).max(chr_precompute_cost_log2(n))
}

/// Maximisers of the asymptotic cost exponents of the chromatic-number
/// algorithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChrExponents {
    /// `delta = 1 / t2_argmax_s` maximises `(E(delta) + 1 - delta) / 2`.
    pub t2_argmax_s: u32,
    pub t2_value: f64,
    pub t1_argmax_s: u32,
    pub t1_argmax_lambda: f64,
    pub t1_value: f64,
    pub precompute_value: f64,
}

const T2_MAX_S: u32 = 1000;
const T1_MAX_S: u32 = 64;
const LAMBDA_BITS: u32 = 16;

pub fn chr_cost_exponents() -> ChrExponents {
    let e = |s: u32| e_exponent(1.0 / f64::from(s)).expect("1/s lies in (0, 1]");
    let (t2_argmax_s, t2_value) = (1..=T2_MAX_S)
        .map(|s| (s, 0.5 * (e(s) + 1.0 - 1.0 / f64::from(s))))
        .fold((0, f64::NEG_INFINITY), |best, x| if x.1 > best.1 { x } else { best });

    let steps = 1u32 << LAMBDA_BITS;
    let mut t1 = (0, 0.0, f64::NEG_INFINITY);
    for s in 3..=T1_MAX_S {
        let delta = 1.0 / f64::from(s);
        let base = 0.5 * e(s);
        for j in 0..=steps / 2 {
            let lambda = f64::from(j) / f64::from(steps);
            let v = base + 0.5 * binary_entropy(lambda / (1.0 - delta)) * (1.0 - delta) + t2_value * lambda;
            if v > t1.2 {
                t1 = (s, lambda, v);
            }
        }
    }
    ChrExponents {
        t2_argmax_s,
        t2_value,
        t1_argmax_s: t1.0,
        t1_argmax_lambda: t1.1,
        t1_value: t1.2,
        precompute_value: binary_entropy(0.25) + libm::log2(3.0) / 24.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, petersen};
    use crate::oracle::oracle_chromatic;

    fn brute_fact1(a: &[u64], m: u64) -> bool {
        let n: u64 = a.iter().sum();
        let k = a.len();
        (0u64..1 << (k - 1)).any(|bits| {
            let inside: u64 = (1..k).filter(|i| bits >> (i - 1) & 1 == 1).map(|i| a[i]).sum();
            let outside: u64 = a[1..].iter().sum::<u64>() - inside;
            inside <= m && outside + m < n
        })
    }

    #[test]
    fn fact1_examples() {
        assert_eq!(fact1_split(&[7], 3).unwrap(), VertexSet::EMPTY);
        let s = fact1_split(&[3, 2, 2], 3).unwrap();
        assert_eq!(s, [1].into_iter().collect());
        let s = fact1_split(&[2, 2, 1], 2).unwrap();
        assert_eq!(s, [1].into_iter().collect());
        assert!(brute_fact1(&[3, 2, 2], 3) && brute_fact1(&[2, 2, 1], 2));
    }

    #[test]
    fn fact1_rejects_bad_input() {
        assert_eq!(fact1_split(&[], 1), Err(Fact1Error::Empty));
        assert_eq!(fact1_split(&[1, 2], 1), Err(Fact1Error::FirstNotMaximal));
        assert_eq!(fact1_split(&[2, 0], 1), Err(Fact1Error::ZeroPart));
        assert_eq!(fact1_split(&[2, 2], 0), Err(Fact1Error::BadM { m: 0, max: 3 }));
        assert_eq!(fact1_split(&[2, 2], 4), Err(Fact1Error::BadM { m: 4, max: 3 }));
    }

    #[test]
    fn lawler_small_graphs() {
        assert_eq!(lawler_dp(&Graph::empty(4).unwrap()).unwrap(), 1);
        assert_eq!(lawler_dp(&Graph::empty(0).unwrap()).unwrap(), 0);
        assert_eq!(lawler_dp(&cycle(5)).unwrap(), 3);
        assert_eq!(lawler_dp(&petersen()).unwrap(), 3);
        assert_eq!(lawler_dp(&complete(6)).unwrap(), 6);
        assert!(matches!(lawler_dp(&Graph::empty(23).unwrap()), Err(ChromaticError::TooLarge { .. })));
    }

    #[test]
    fn chr_small_graphs() {
        for (g, chi) in [(complete(5), 5), (cycle(5), 3), (petersen(), 3), (complete(8), 8), (cycle(7), 3)] {
            assert_eq!(chromatic_number(&g).unwrap().0, chi, "{g:?}");
        }
        assert_eq!(chromatic_number(&Graph::empty(5).unwrap()).unwrap().0, 1);
        assert_eq!(chromatic_number(&cycle(6)).unwrap().0, 2);
    }

    #[test]
    fn table_matches_oracle() {
        let g = petersen();
        let (table, _) = ChiTable::build_up_to(&g, 5).unwrap();
        assert_eq!(table.len(), (0..=5).map(|k| binomial(10, k) as usize).sum::<usize>());
        for (s, chi) in table.iter() {
            let (h, _) = g.induced_subgraph(s);
            assert_eq!(chi, oracle_chromatic(&h).unwrap());
        }
        let rebuilt = ChiTable::from_entries(10, 5, table.iter()).unwrap();
        assert_eq!(rebuilt, table);
        assert!(ChiTable::from_entries(10, 5, table.iter().skip(1)).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
        assert_eq!(binomial(3, 4), 0);
    }

    #[test]
    fn cost_exponents() {
        let x = chr_cost_exponents();
        assert_eq!(x.t2_argmax_s, 5);
        assert!((x.t2_value - libm::log2(80.0) / 10.0).abs() < 1e-12);
        assert_eq!((x.t1_argmax_s, x.t1_argmax_lambda), (7, 0.5));
        let closed =
            37.0 / 35.0 + 3.0 / 7.0 * libm::log2(3.0) - 9.0 / 70.0 * libm::log2(5.0) - 5.0 / 28.0 * libm::log2(7.0);
        assert!((x.t1_value - closed).abs() < 1e-9);
        assert!((x.t1_value - 0.936564).abs() < 1e-5);
        assert!(libm::exp2(x.precompute_value) <= 1.8370);
    }

    #[test]
    fn cost_model_stays_below_asymptotic_exponent() {
        for n in [10u32, 12, 16, 20] {
            assert!(chr_cost_log2(n) / f64::from(n) <= 0.9366 + 0.05, "n={n}");
        }
    }
}
