//! Abstract simple graphs.
//!
//! [`Graph`] carries adjacency only. Everything that does not depend on an
//! embedding (covers, transversal search, cycle enumeration, class tests)
//! works on this type; [`crate::PlaneGraph`] wraps one together with a
//! rotation system.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Undirected edge with `0 <= u < v`.
pub type Edge = (usize, usize);

/// Normalizes an unordered pair into an [`Edge`].
#[inline]
pub fn edge(a: usize, b: usize) -> Edge {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    Loop(usize),
    ParallelEdge(Edge),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::VertexOutOfRange { vertex, vertex_count } => {
                write!(f, "vertex {vertex} out of range (graph has {vertex_count} vertices)")
            }
            GraphError::Loop(v) => write!(f, "loop at vertex {v}"),
            GraphError::ParallelEdge((u, v)) => write!(f, "parallel edge {u}-{v}"),
        }
    }
}

impl core::error::Error for GraphError {}

/// A simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edges: Vec<Edge>,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edges: Vec::new(),
        }
    }

    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: x,
                        vertex_count: n,
                    });
                }
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for (v, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::ParallelEdge(edge(v, w[0])));
            }
        }
        Ok(Self::from_sorted_adjacency(adjacency))
    }

    /// Builds from symmetric, sorted, duplicate-free adjacency lists.
    pub(crate) fn from_sorted_adjacency(adjacency: Vec<Vec<usize>>) -> Self {
        let mut edges = Vec::new();
        for (u, list) in adjacency.iter().enumerate() {
            for &v in list {
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        Graph { adjacency, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges sorted lexicographically, each as `(u, v)` with `u < v`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adjacency.len() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Position of `e` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&edge(u, v)).ok()
    }

    /// Component label per vertex, labels dense in discovery order.
    pub fn components(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.components().iter().copied().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// `|E| - |V| + c`: the number of independent cycles.
    pub fn cyclomatic_number(&self) -> usize {
        self.edge_count() + self.component_count() - self.vertex_count()
    }

    /// Edges of a BFS spanning forest, rooting every component at its
    /// smallest vertex.
    pub fn bfs_forest(&self) -> Vec<Edge> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut forest = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        forest.push(edge(u, w));
                        queue.push_back(w);
                    }
                }
            }
        }
        forest.sort_unstable();
        forest
    }

    /// Subgraph induced by `keep` (a per-vertex mask). Returns the subgraph
    /// and the map from new ids to old ids.
    pub fn induced(&self, keep: &[bool]) -> (Graph, Vec<usize>) {
        let old_of_new: Vec<usize> = (0..self.vertex_count()).filter(|&v| keep[v]).collect();
        let mut new_of_old = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in old_of_new.iter().enumerate() {
            new_of_old[v] = i;
        }
        let adjacency = old_of_new
            .iter()
            .map(|&v| {
                self.neighbors(v)
                    .iter()
                    .filter(|&&w| keep[w])
                    .map(|&w| new_of_old[w])
                    .collect()
            })
            .collect();
        (Graph::from_sorted_adjacency(adjacency), old_of_new)
    }

    /// Smallest-last vertex order: repeatedly strip a vertex of minimum
    /// remaining degree (ties to the smaller id), then reverse. Every vertex
    /// has at most `degeneracy` neighbors before it in the returned order.
    pub fn smallest_last_order(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut remaining: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !removed[v])
                .min_by_key(|&v| (remaining[v], v))
                .expect("vertex left");
            removed[v] = true;
            order.push(v);
            for &w in self.neighbors(v) {
                if !removed[w] {
                    remaining[w] -= 1;
                }
            }
        }
        order.reverse();
        order
    }

    /// Mask of the vertices left after repeatedly deleting vertices whose
    /// remaining degree is below `k`, never deleting vertices in `frozen`.
    pub fn k_core_mask(&self, k: usize, frozen: &[bool]) -> Vec<bool> {
        let n = self.vertex_count();
        let mut alive = vec![true; n];
        let mut degree: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut changed = true;
        while changed {
            changed = false;
            for v in 0..n {
                if alive[v] && !frozen.get(v).copied().unwrap_or(false) && degree[v] < k {
                    alive[v] = false;
                    changed = true;
                    for &w in self.neighbors(v) {
                        if alive[w] {
                            degree[w] -= 1;
                        }
                    }
                }
            }
        }
        alive
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<Edge> = (0..n).map(|i| edge(i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn rejects_loops_and_parallel_edges() {
        assert_eq!(Graph::from_edges(2, &[(0, 0)]), Err(GraphError::Loop(0)));
        assert_eq!(
            Graph::from_edges(2, &[(0, 1), (1, 0)]),
            Err(GraphError::ParallelEdge((0, 1)))
        );
        assert!(matches!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, .. })
        ));
    }

    #[test]
    fn cyclomatic_number_of_cycle_is_one() {
        let c5 = cycle(5);
        assert_eq!(c5.cyclomatic_number(), 1);
        assert_eq!(c5.bfs_forest().len(), 4);
        assert!(c5.is_connected());
    }

    #[test]
    fn smallest_last_order_is_a_permutation() {
        let g = cycle(6);
        let mut order = g.smallest_last_order();
        order.sort_unstable();
        assert_eq!(order, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn k_core_peels_cycles_below_three() {
        let g = cycle(6);
        assert!(g.k_core_mask(2, &[]).iter().all(|&a| a));
        assert!(g.k_core_mask(3, &[]).iter().all(|&a| !a));
        let mut frozen = vec![false; 6];
        frozen[0] = true;
        let mask = g.k_core_mask(3, &frozen);
        assert_eq!(mask.iter().filter(|&&a| a).count(), 1);
    }
}
