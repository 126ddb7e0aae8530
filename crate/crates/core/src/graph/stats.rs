use serde::{Deserialize, Serialize};

use super::{biconnected_components, two_core, Graph};

/// The size and sparsity profile of a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    /// Cyclomatic number, `m - n + components`.
    pub a: usize,
    /// Almost-tree parameter: largest cyclomatic number of any block.
    pub k: usize,
    pub n2: usize,
    pub m2: usize,
    pub components: usize,
}

/// Number of edges outside a spanning forest.
pub fn cyclomatic_number(g: &Graph) -> usize {
    g.edge_count() + g.component_count() - g.vertex_count()
}

/// Maximum over blocks of the block's cyclomatic number; 0 for forests.
pub fn almost_tree_parameter(g: &Graph) -> usize {
    let f = biconnected_components(g);
    (0..f.len()).map(|i| f.block_cyclomatic(i)).max().unwrap_or(0)
}

pub fn stats(g: &Graph) -> GraphStats {
    let core = two_core(g).core.graph;
    let components = g.component_count();
    GraphStats {
        n: g.vertex_count(),
        m: g.edge_count(),
        a: g.edge_count() + components - g.vertex_count(),
        k: almost_tree_parameter(g),
        n2: core.vertex_count(),
        m2: core.edge_count(),
        components,
    }
}
