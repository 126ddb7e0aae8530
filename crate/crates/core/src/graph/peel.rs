use std::collections::VecDeque;

use super::{EdgeId, Graph, Subgraph, VertexId};

/// A tree removed while peeling to the 2-core.
///
/// For an attached tree, `root` is the core vertex it hangs from and
/// `vertices` lists the pruned vertices in DFS preorder (root excluded). For
/// a floating tree (a whole tree component), `root` is the tree's smallest
/// vertex and is listed first in `vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrunedTree {
    pub root: VertexId,
    pub vertices: Vec<VertexId>,
    /// `(child, parent, edge)` for every tree edge, in preorder of the child.
    pub links: Vec<(VertexId, VertexId, EdgeId)>,
}

impl PrunedTree {
    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.links.iter().map(|&(_, _, e)| e)
    }

    /// Height of every listed vertex below the root (root = 0).
    pub fn depths(&self) -> Vec<(VertexId, usize)> {
        let mut depth = std::collections::HashMap::new();
        depth.insert(self.root, 0usize);
        let mut out = Vec::with_capacity(self.vertices.len());
        for &(child, parent, _) in &self.links {
            let d = depth[&parent] + 1;
            depth.insert(child, d);
            out.push((child, d));
        }
        out
    }
}

/// Result of peeling a graph down to its 2-core.
#[derive(Clone, Debug)]
pub struct TwoCore {
    pub core: Subgraph,
    pub in_core: Vec<bool>,
    /// Trees hanging from core vertices, at most one per attachment vertex.
    pub attached: Vec<PrunedTree>,
    /// Tree components that have no core at all.
    pub floating: Vec<PrunedTree>,
}

/// Peels degree-≤1 vertices with a queue until every remaining vertex has
/// degree at least 2. Linear time.
pub fn two_core(g: &Graph) -> TwoCore {
    let n = g.vertex_count();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut in_core = vec![true; n];
    let mut queue: VecDeque<VertexId> = (0..n).filter(|&v| degree[v] <= 1).collect();
    for &v in &queue {
        in_core[v] = false;
    }
    while let Some(v) = queue.pop_front() {
        for &(w, _) in g.incident(v) {
            if in_core[w] {
                degree[w] -= 1;
                if degree[w] <= 1 {
                    in_core[w] = false;
                    queue.push_back(w);
                }
            }
        }
    }

    let core = g.induced(&in_core);

    let mut seen = in_core.clone();
    let mut attached = Vec::new();
    for v in 0..n {
        if in_core[v] && g.incident(v).iter().any(|&(w, _)| !in_core[w]) {
            attached.push(grow_tree(g, v, &mut seen, false));
        }
    }
    let mut floating = Vec::new();
    for v in 0..n {
        if !seen[v] {
            seen[v] = true;
            floating.push(grow_tree(g, v, &mut seen, true));
        }
    }

    TwoCore {
        core,
        in_core,
        attached,
        floating,
    }
}

fn grow_tree(g: &Graph, root: VertexId, seen: &mut [bool], include_root: bool) -> PrunedTree {
    let mut vertices = Vec::new();
    let mut links = Vec::new();
    if include_root {
        vertices.push(root);
    }
    // Explicit stack of (vertex, next incidence index) for preorder.
    let mut stack = vec![(root, 0usize)];
    while let Some(&mut (v, ref mut next)) = stack.last_mut() {
        let inc = g.incident(v);
        if *next == inc.len() {
            stack.pop();
            continue;
        }
        let (w, e) = inc[*next];
        *next += 1;
        if !seen[w] {
            seen[w] = true;
            vertices.push(w);
            links.push((w, v, e));
            stack.push((w, 0));
        }
    }
    PrunedTree {
        root,
        vertices,
        links,
    }
}
