//! Brute-force reference answers for small graphs.
//!
//! These share no code with the branching algorithms they are used to check:
//! MIS lists come from scanning every subset, colourings from plain
//! backtracking over colour assignments.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Largest vertex count the oracles accept.
pub const ORACLE_MAX_VERTICES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle refuses a graph on {n} vertices (limit {ORACLE_MAX_VERTICES})")]
    TooLarge { n: usize },
}

fn check(g: &Graph) -> Result<(), OracleError> {
    if g.n() > ORACLE_MAX_VERTICES {
        Err(OracleError::TooLarge { n: g.n() })
    } else {
        Ok(())
    }
}

/// Every maximal independent set, ascending by bitmask.
pub fn oracle_mis_list(g: &Graph) -> Result<Vec<VertexSet>, OracleError> {
    check(g)?;
    Ok((0u64..1 << g.n()).map(VertexSet::from_bits).filter(|&s| g.is_maximal_independent(s)).collect())
}

/// Whether `g` splits into at most `k` independent sets of size at most `max_class`.
pub fn oracle_bounded_partition(g: &Graph, k: usize, max_class: usize) -> Result<bool, OracleError> {
    check(g)?;
    let mut colour = vec![usize::MAX; g.n()];
    let mut sizes = vec![0usize; k];
    Ok(assign(g, 0, k, max_class, &mut colour, &mut sizes, 0))
}

/// Whether `g` has a proper `k`-colouring.
pub fn oracle_k_colorable(g: &Graph, k: usize) -> Result<bool, OracleError> {
    oracle_bounded_partition(g, k, g.n())
}

/// `χ(G)`, trying `k = 0, 1, ..` in turn.
pub fn oracle_chromatic(g: &Graph) -> Result<u32, OracleError> {
    check(g)?;
    let mut k = 0;
    while !oracle_k_colorable(g, k)? {
        k += 1;
    }
    Ok(k as u32)
}

fn assign(
    g: &Graph,
    v: usize,
    k: usize,
    max_class: usize,
    colour: &mut [usize],
    sizes: &mut [usize],
    used: usize,
) -> bool {
    if v == g.n() {
        return true;
    }
    // New colours are only opened in order, which removes relabelled duplicates.
    for c in 0..k.min(used + 1) {
        if sizes[c] >= max_class {
            continue;
        }
        if g.neighbors(v).iter().any(|w| w < v && colour[w] == c) {
            continue;
        }
        colour[v] = c;
        sizes[c] += 1;
        if assign(g, v + 1, k, max_class, colour, sizes, used.max(c + 1)) {
            return true;
        }
        sizes[c] -= 1;
        colour[v] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, petersen};

    #[test]
    fn c5_has_five_two_element_mis() {
        let list = oracle_mis_list(&cycle(5)).unwrap();
        assert_eq!(list.len(), 5);
        assert!(list.iter().all(|s| s.len() == 2));
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(oracle_chromatic(&complete(4)).unwrap(), 4);
        assert_eq!(oracle_chromatic(&petersen()).unwrap(), 3);
        assert_eq!(oracle_chromatic(&cycle(5)).unwrap(), 3);
        assert_eq!(oracle_chromatic(&Graph::empty(0).unwrap()).unwrap(), 0);
    }

    #[test]
    fn bounded_partition_respects_class_cap() {
        // C6 splits into two classes of three, never into classes of two.
        let c6 = cycle(6);
        assert!(oracle_bounded_partition(&c6, 2, 3).unwrap());
        assert!(!oracle_bounded_partition(&c6, 2, 2).unwrap());
        assert!(oracle_bounded_partition(&c6, 3, 2).unwrap());
    }

    #[test]
    fn refuses_large_graphs() {
        let big = Graph::empty(21).unwrap();
        assert_eq!(oracle_mis_list(&big), Err(OracleError::TooLarge { n: 21 }));
    }
}
