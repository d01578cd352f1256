#![allow(dead_code)]

use qcolor_core::generators::{gnp, Probability};
use qcolor_core::Graph;

/// Seeded G(n, p) with `p = tenths / 10`.
pub fn random_graph(n: usize, tenths: u64, seed: u64) -> Graph {
    gnp(n, Probability::new(tenths, 10).unwrap(), seed).unwrap()
}

/// `count` graphs cycling through `n = 1..=n_max` and `p` in {0.3, 0.5, 0.7}.
pub fn corpus(count: usize, n_max: usize) -> Vec<Graph> {
    (0..count)
        .map(|i| {
            let n = 1 + i % n_max;
            let tenths = [3, 5, 7][(i / n_max) % 3];
            random_graph(n, tenths, i as u64)
        })
        .collect()
}
