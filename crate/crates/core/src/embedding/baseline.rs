use super::BookEmbedding;
use crate::graph::Graph;

/// Spanning forest in DFS preorder on page 0, the remaining edges on page 1.
///
/// Each DFS subtree occupies a contiguous interval, so the forest edges are
/// crossing-free. Only the `k = m - n + c` non-forest edges can be crossed,
/// giving at most `k` crossed edges and `k(k-1)/2` crossings.
pub fn baseline_2page(g: &Graph) -> BookEmbedding {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut tree_edge = vec![false; g.edge_count()];
    let mut order = Vec::with_capacity(n);
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        order.push(root);
        stack.push((root, 0));
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
                tree_edge[e] = true;
                order.push(w);
                stack.push((w, 0));
            }
        }
    }
    let page = tree_edge.iter().map(|&t| u8::from(!t)).collect();
    BookEmbedding::new(order, page)
}
