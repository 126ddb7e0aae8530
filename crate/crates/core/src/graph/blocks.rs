use super::{EdgeId, Graph, Subgraph, VertexId};

/// Biconnected components ("blocks") and the cut vertices joining them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCutForest {
    /// Edge ids of each block. Bridges form single-edge blocks.
    pub blocks: Vec<Vec<EdgeId>>,
    /// Sorted vertex ids of each block.
    pub block_vertices: Vec<Vec<VertexId>>,
    pub cut_vertices: Vec<VertexId>,
    /// Blocks containing each vertex; more than one exactly at cut vertices.
    pub vertex_blocks: Vec<Vec<usize>>,
}

impl BlockCutForest {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Block `i` as a standalone graph. Local vertex `j` is
    /// `block_vertices[i][j]`; local edge `j` is `blocks[i][j]`.
    pub fn block_subgraph(&self, g: &Graph, i: usize) -> Subgraph {
        g.subgraph(&self.block_vertices[i], &self.blocks[i])
    }

    /// Cyclomatic number of block `i`.
    pub fn block_cyclomatic(&self, i: usize) -> usize {
        self.blocks[i].len() + 1 - self.block_vertices[i].len()
    }
}

/// Tarjan's block decomposition with an explicit stack.
///
/// Parallel edges are told apart by edge id, so a pair of parallel edges is a
/// (2-vertex) biconnected block rather than a bridge.
pub fn biconnected_components(g: &Graph) -> BlockCutForest {
    const UNSET: usize = usize::MAX;
    let n = g.vertex_count();
    let mut disc = vec![UNSET; n];
    let mut low = vec![0usize; n];
    let mut time = 0usize;
    let mut edge_stack: Vec<EdgeId> = Vec::new();
    let mut blocks: Vec<Vec<EdgeId>> = Vec::new();

    // (vertex, edge used to enter it, next incidence index)
    let mut stack: Vec<(VertexId, EdgeId, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != UNSET {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push((root, UNSET, 0));

        while let Some(&mut (v, parent_edge, ref mut next)) = stack.last_mut() {
            let inc = g.incident(v);
            if *next < inc.len() {
                let (w, e) = inc[*next];
                *next += 1;
                if e == parent_edge {
                    continue;
                }
                if disc[w] == UNSET {
                    edge_stack.push(e);
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }

            stack.pop();
            if let Some(&(p, _, _)) = stack.last() {
                low[p] = low[p].min(low[v]);
                if low[v] >= disc[p] {
                    let mut block = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        block.push(e);
                        if e == parent_edge {
                            break;
                        }
                    }
                    block.reverse();
                    blocks.push(block);
                }
            }
        }
    }

    let mut vertex_blocks = vec![Vec::new(); n];
    let mut block_vertices = Vec::with_capacity(blocks.len());
    for (i, block) in blocks.iter().enumerate() {
        let mut vs: Vec<VertexId> = block.iter().flat_map(|&e| g.endpoints(e)).collect();
        vs.sort_unstable();
        vs.dedup();
        for &v in &vs {
            vertex_blocks[v].push(i);
        }
        block_vertices.push(vs);
    }
    let cut_vertices = (0..n).filter(|&v| vertex_blocks[v].len() > 1).collect();

    BlockCutForest {
        blocks,
        block_vertices,
        cut_vertices,
        vertex_blocks,
    }
}
