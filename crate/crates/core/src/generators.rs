//! Graph families used as corpora and extremal instances.
//!
//! All generators panic if asked for more than 64 vertices.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("edge probability {num}/{den} is not in [0, 1]")]
    BadProbability { num: u64, den: u64 },
    #[error("clique sizes must be non-empty and positive")]
    BadCliqueSizes,
    #[error("{0} vertices requested, at most 64 are supported")]
    TooManyVertices(usize),
}

/// An exact edge probability `num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Probability {
    num: u64,
    den: u64,
}

impl Probability {
    pub fn new(num: u64, den: u64) -> Result<Self, GeneratorError> {
        if den == 0 || num > den {
            return Err(GeneratorError::BadProbability { num, den });
        }
        Ok(Probability { num, den })
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    /// Maps a uniform 64-bit word to a Bernoulli(num/den) outcome via
    /// `floor(x * den / 2^64) < num`.
    #[inline]
    fn accepts(self, x: u64) -> bool {
        ((u128::from(x) * u128::from(self.den)) >> 64) < u128::from(self.num)
    }
}

fn check_n(n: usize) {
    assert!(n <= 64, "{n} vertices requested, at most 64 are supported");
}

/// `K_n`.
pub fn complete(n: usize) -> Graph {
    check_n(n);
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid edges")
}

/// `C_n` for `n >= 3`; a path for smaller `n`.
pub fn cycle(n: usize) -> Graph {
    check_n(n);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
    if n >= 3 {
        edges.push((0, n - 1));
    }
    Graph::from_edges(n, edges).expect("valid edges")
}

/// `P_n`, vertices joined in label order.
pub fn path(n: usize) -> Graph {
    check_n(n);
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("valid edges")
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i+5`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    Graph::from_edges(10, edges).expect("valid edges")
}

/// Vertex-disjoint cliques of the given sizes, laid out consecutively.
pub fn clique_union(sizes: &[usize]) -> Result<Graph, GeneratorError> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(GeneratorError::BadCliqueSizes);
    }
    let n: usize = sizes.iter().sum();
    if n > 64 {
        return Err(GeneratorError::TooManyVertices(n));
    }
    let mut edges = Vec::new();
    let mut start = 0;
    for &size in sizes {
        for u in start..start + size {
            for v in u + 1..start + size {
                edges.push((u, v));
            }
        }
        start += size;
    }
    Ok(Graph::from_edges(n, edges).expect("valid edges"))
}

/// Sizes of `t` cliques as balanced as possible, summing to `n`.
pub fn balanced_sizes(n: usize, t: usize) -> Vec<usize> {
    assert!(t >= 1 && t <= n, "need 1 <= t <= n");
    let q = n / t;
    let r = n % t;
    (0..t).map(|i| if i < r { q + 1 } else { q }).collect()
}

/// Erdős–Rényi `G(n, p)`.
///
/// A `ChaCha8Rng` seeded with `seed_from_u64(seed)` draws one `u64` per
/// candidate edge `(u, v)`, `u < v`, in lexicographic order; the edge is kept
/// when `floor(x * den / 2^64) < num`. The output is therefore a pure function
/// of `(n, p, seed)`.
pub fn gnp(n: usize, p: Probability, seed: u64) -> Result<Graph, GeneratorError> {
    if n > 64 {
        return Err(GeneratorError::TooManyVertices(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if p.accepts(rng.next_u64()) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edges(n, edges).expect("valid edges"))
}
