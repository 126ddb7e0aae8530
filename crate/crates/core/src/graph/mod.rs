//! Undirected multigraphs with stable vertex and edge identifiers, plus the
//! structural decompositions that drive kernelization.

mod blocks;
mod parse;
mod peel;
mod stats;

pub use blocks::{biconnected_components, BlockCutForest};
pub use peel::{two_core, PrunedTree, TwoCore};
pub use stats::{almost_tree_parameter, cyclomatic_number, stats, GraphStats};

use std::collections::HashMap;

pub type VertexId = usize;
pub type EdgeId = usize;

/// An undirected multigraph on vertices `0..n`.
///
/// Each vertex carries the label it had in the input, so layouts can be
/// reported in the user's vocabulary. Edge ids are assigned in insertion
/// order. Self-loops are never stored: [`Graph::add_edge`] drops them and
/// bumps a counter instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<i64>,
    edges: Vec<[VertexId; 2]>,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
    self_loops: usize,
}

impl Graph {
    /// `n` isolated vertices labelled `0..n`.
    pub fn new(n: usize) -> Self {
        Self::with_labels((0..n as i64).collect())
    }

    pub fn with_labels(labels: Vec<i64>) -> Self {
        let n = labels.len();
        Graph {
            labels,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
            self_loops: 0,
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Self {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Adds `u`–`v` and returns its id, or `None` for a self-loop.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        assert!(u < self.labels.len() && v < self.labels.len(), "vertex out of range");
        if u == v {
            self.self_loops += 1;
            return None;
        }
        let e = self.edges.len();
        self.edges.push([u, v]);
        self.adjacency[u].push((v, e));
        self.adjacency[v].push((u, e));
        Some(e)
    }

    pub fn add_vertex(&mut self, label: i64) -> VertexId {
        self.labels.push(label);
        self.adjacency.push(Vec::new());
        self.labels.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn endpoints(&self, e: EdgeId) -> [VertexId; 2] {
        self.edges[e]
    }

    pub fn edges(&self) -> &[[VertexId; 2]] {
        &self.edges
    }

    /// The endpoint of `e` that is not `v`.
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let [a, b] = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    /// `(neighbor, edge)` pairs incident to `v`.
    pub fn incident(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v]
    }

    pub fn label(&self, v: VertexId) -> i64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    /// Number of self-loops dropped while building this graph.
    pub fn self_loops_dropped(&self) -> usize {
        self.self_loops
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Connected component index of every vertex, numbered in order of first vertex.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &(w, _) in &self.adjacency[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }

    pub fn component_count(&self) -> usize {
        self.components().0
    }

    /// The subgraph formed by the given edges and their endpoints.
    ///
    /// Local vertex ids follow the sorted order of the parent ids; local edge
    /// ids follow the order of `edges`.
    pub fn edge_subgraph(&self, edges: &[EdgeId]) -> Subgraph {
        let mut vertices: Vec<VertexId> = edges.iter().flat_map(|&e| self.edges[e]).collect();
        vertices.sort_unstable();
        vertices.dedup();
        self.subgraph(&vertices, edges)
    }

    /// Subgraph on `vertices` (sorted, distinct) using `edges`, whose endpoints
    /// must lie in `vertices`.
    pub fn subgraph(&self, vertices: &[VertexId], edges: &[EdgeId]) -> Subgraph {
        let local: HashMap<VertexId, VertexId> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut graph = Graph::with_labels(vertices.iter().map(|&v| self.labels[v]).collect());
        for &e in edges {
            let [u, v] = self.edges[e];
            graph.add_edge(local[&u], local[&v]);
        }
        Subgraph {
            graph,
            vertex_origin: vertices.to_vec(),
            edge_origin: edges.to_vec(),
        }
    }

    /// Induced subgraph on the vertices where `keep` is true.
    pub fn induced(&self, keep: &[bool]) -> Subgraph {
        let vertices: Vec<VertexId> = (0..self.vertex_count()).filter(|&v| keep[v]).collect();
        let edges: Vec<EdgeId> = (0..self.edge_count())
            .filter(|&e| {
                let [u, v] = self.edges[e];
                keep[u] && keep[v]
            })
            .collect();
        self.subgraph(&vertices, &edges)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// `K_{a,b}` with the `a` side on `0..a`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }
}

/// A subgraph together with the ids its vertices and edges have in the parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    pub vertex_origin: Vec<VertexId>,
    pub edge_origin: Vec<EdgeId>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loops_are_dropped_and_counted() {
        let mut g = Graph::new(2);
        assert_eq!(g.add_edge(0, 0), None);
        assert_eq!(g.add_edge(0, 1), Some(0));
        assert_eq!(g.self_loops_dropped(), 1);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn adjacency_matches_edges() {
        let g = Graph::from_edges(3, [(0, 1), (0, 1), (1, 2)]);
        let total: usize = (0..3).map(|v| g.degree(v)).sum();
        assert_eq!(total, 2 * g.edge_count());
        assert_eq!(g.degree(1), 3);
        assert_eq!(g.opposite(2, 2), 1);
    }

    #[test]
    fn subgraph_keeps_origins() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 0), (3, 4)]);
        let s = g.edge_subgraph(&[3, 1]);
        assert_eq!(s.vertex_origin, vec![1, 2, 3, 4]);
        assert_eq!(s.edge_origin, vec![3, 1]);
        assert_eq!(s.graph.endpoints(0), [2, 3]);
        assert_eq!(s.graph.label(2), 3);
    }

    #[test]
    fn components_counted() {
        let g = Graph::from_edges(6, [(0, 1), (2, 3), (3, 4)]);
        assert_eq!(g.component_count(), 3);
    }
}
