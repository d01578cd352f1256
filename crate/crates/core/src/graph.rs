//! Undirected simple graphs on at most 64 vertices.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::vertex_set::{VertexSet, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {0} vertices, at most 64 are supported")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("adjacency is not symmetric between {0} and {1}")]
    Asymmetric(usize, usize),
}

/// Adjacency-set graph. Immutable once built; vertices are `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { adj: vec![VertexSet::EMPTY; n] })
    }

    /// Builds a graph from an edge list. Duplicate edges are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from adjacency sets, checking symmetry and irreflexivity.
    pub fn from_adjacency(adj: Vec<VertexSet>) -> Result<Self, GraphError> {
        let n = adj.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let all = VertexSet::full(n);
        for (v, nb) in adj.iter().enumerate() {
            if !nb.is_subset(all) {
                let w = nb.difference(all).first().unwrap_or(0);
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
            if nb.contains(v) {
                return Err(GraphError::SelfLoop(v));
            }
            for w in nb.iter() {
                if !adj[w].contains(v) {
                    return Err(GraphError::Asymmetric(v, w));
                }
            }
        }
        Ok(Graph { adj })
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    /// Closed neighbourhood `N[v]`.
    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        let mut s = self.adj[v];
        s.insert(v);
        s
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nb)| nb.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// `G[S]`, relabelled to `0..|S|` in ascending order of original label.
    /// The returned vector maps each new label back to its original vertex.
    pub fn induced_subgraph(&self, subset: VertexSet) -> (Graph, Vec<usize>) {
        let labels: Vec<usize> = subset.intersection(self.vertices()).iter().collect();
        let mut position = [usize::MAX; MAX_VERTICES];
        for (i, &v) in labels.iter().enumerate() {
            position[v] = i;
        }
        let adj =
            labels.iter().map(|&v| self.adj[v].intersection(subset).iter().map(|w| position[w]).collect()).collect();
        (Graph { adj }, labels)
    }

    /// Complement graph.
    pub fn complement(&self) -> Graph {
        let all = self.vertices();
        let adj = (0..self.n()).map(|v| all.difference(self.closed_neighbors(v))).collect();
        Graph { adj }
    }

    /// Adds one vertex adjacent to every existing vertex.
    pub fn join_universal_vertex(&self) -> Result<Graph, GraphError> {
        let n = self.n();
        if n + 1 > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n + 1));
        }
        let mut adj = self.adj.clone();
        for nb in adj.iter_mut() {
            nb.insert(n);
        }
        adj.push(VertexSet::full(n));
        Ok(Graph { adj })
    }

    /// No edge with both ends in `set`.
    pub fn is_independent(&self, set: VertexSet) -> bool {
        set.iter().all(|v| self.adj[v].is_disjoint(set))
    }

    /// Independent, and every vertex outside `set` has a neighbour inside it.
    pub fn is_maximal_independent(&self, set: VertexSet) -> bool {
        self.is_maximal_independent_in(self.vertices(), set)
    }

    /// Maximal-independence of `set` inside `G[within]`.
    pub fn is_maximal_independent_in(&self, within: VertexSet, set: VertexSet) -> bool {
        set.is_subset(within)
            && self.is_independent(set)
            && within.difference(set).iter().all(|v| !self.adj[v].is_disjoint(set))
    }

    /// Minimum-degree vertex of `G[within]`, lowest label on ties.
    pub fn min_degree_vertex_in(&self, within: VertexSet) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for v in within.iter() {
            let d = self.adj[v].intersection(within).len();
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((v, d));
                if d == 0 {
                    break;
                }
            }
        }
        best
    }

    /// `χ(G)` if it is at most two; `None` otherwise.
    pub fn chromatic_le_2(&self) -> Option<u32> {
        self.chromatic_le_2_in(self.vertices())
    }

    /// `χ(G[within])` if it is at most two, by breadth-first 2-colouring.
    pub fn chromatic_le_2_in(&self, within: VertexSet) -> Option<u32> {
        if within.is_empty() {
            return Some(0);
        }
        let mut has_edge = false;
        let mut side = VertexSet::EMPTY;
        let mut seen = VertexSet::EMPTY;
        let mut queue = VecDeque::new();
        for root in within.iter() {
            if seen.contains(root) {
                continue;
            }
            seen.insert(root);
            queue.push_back(root);
            while let Some(v) = queue.pop_front() {
                let v_side = side.contains(v);
                for w in self.adj[v].intersection(within).iter() {
                    has_edge = true;
                    if seen.contains(w) {
                        if side.contains(w) == v_side {
                            return None;
                        }
                    } else {
                        seen.insert(w);
                        if !v_side {
                            side.insert(w);
                        }
                        queue.push_back(w);
                    }
                }
            }
        }
        Some(if has_edge { 2 } else { 1 })
    }
}

impl core::fmt::Debug for Graph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Graph").field("n", &self.n()).field("edges", &self.edges().collect::<Vec<_>>()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle};

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn induced_subgraph_of_triangle_pair() {
        let (h, labels) = complete(3).induced_subgraph(set(&[0, 1]));
        assert_eq!(h, Graph::from_edges(2, [(0, 1)]).unwrap());
        assert_eq!(labels, [0, 1]);
    }

    #[test]
    fn induced_subgraph_of_c5_alternate_vertices() {
        let c5 = cycle(5);
        let (h, labels) = c5.induced_subgraph(set(&[0, 2, 4]));
        assert_eq!(labels, [0, 2, 4]);
        // Only 0-4 survives; relabelled to 0-2, with 2 -> 1 isolated.
        assert_eq!(h, Graph::from_edges(3, [(0, 2)]).unwrap());
        assert_eq!(c5.induced_subgraph(c5.vertices()).0, c5);
    }

    #[test]
    fn independence_checks() {
        let c5 = cycle(5);
        assert!(c5.is_independent(set(&[0, 2])));
        assert!(c5.is_maximal_independent(set(&[0, 2])));
        assert!(c5.is_independent(set(&[0])));
        assert!(!c5.is_maximal_independent(set(&[0])));
        assert!(!complete(3).is_independent(set(&[0, 1])));
    }

    #[test]
    fn two_colourability() {
        assert_eq!(cycle(4).chromatic_le_2(), Some(2));
        assert_eq!(cycle(5).chromatic_le_2(), None);
        assert_eq!(Graph::empty(3).unwrap().chromatic_le_2(), Some(1));
        assert_eq!(Graph::empty(0).unwrap().chromatic_le_2(), Some(0));
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert_eq!(Graph::from_edges(2, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::from_edges(2, [(0, 2)]), Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 }));
        assert_eq!(Graph::empty(65), Err(GraphError::TooManyVertices(65)));
        let lopsided = alloc::vec![set(&[1]), VertexSet::EMPTY];
        assert_eq!(Graph::from_adjacency(lopsided), Err(GraphError::Asymmetric(0, 1)));
    }
}
