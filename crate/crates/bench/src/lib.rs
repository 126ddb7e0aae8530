//! Deterministic inputs for the benchmarks in `benches/`.

use bookcross::Graph;

/// `base` with every edge replaced by a path of `len` edges.
pub fn subdivided(base: &Graph, len: usize) -> Graph {
    let mut g = Graph::new(base.vertex_count());
    for &[u, v] in base.edges() {
        let mut prev = u;
        for _ in 1..len {
            let w = g.add_vertex(g.vertex_count() as i64);
            g.add_edge(prev, w);
            prev = w;
        }
        g.add_edge(prev, v);
    }
    g
}

/// A K4 with arms of length `arm` (one block with cyclomatic number 3)
/// inside a tree, `n` vertices total. Parents come from a fixed multiplicative
/// hash so the tree is bushy but reproducible.
pub fn almost_tree(n: usize, arm: usize) -> Graph {
    let mut g = subdivided(&Graph::complete(4), arm);
    let mut i = g.vertex_count();
    while g.vertex_count() < n {
        let parent = (i.wrapping_mul(7919) >> 3) % g.vertex_count();
        let v = g.add_vertex(g.vertex_count() as i64);
        g.add_edge(parent, v);
        i += 1;
    }
    g
}
