//! Kernelization: peel to the 2-core, then cap the length of every maximal
//! path of degree-two vertices at an objective-specific bound `ell(k)`.
//!
//! | objective            | `ell(k)` | kernel size bound          |
//! |----------------------|----------|----------------------------|
//! | 1-page, both         | 2        | 5k vertices, 6k edges      |
//! | 2-page crossings     | 2k²      | 6k³ vertices, 6k³ edges    |
//! | 2-page crossed edges | 2k       | 6k² vertices, 6k² edges    |
//!
//! A bare cycle has no degree-≥3 vertex to anchor its path, and always has a
//! crossing-free layout, so it is reduced to a triangle regardless of `ell`.
//! A path that leaves and re-enters the same vertex keeps at least three
//! edges so that shortening never creates parallel edges.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::embedding::BookEmbedding;
use crate::error::{Error, Result};
use crate::graph::{cyclomatic_number, two_core, EdgeId, Graph, PrunedTree, VertexId};
use crate::search::{Objective, Style};

/// A maximal path whose interior vertices all have degree two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeTwoPath {
    pub start: VertexId,
    pub end: VertexId,
    pub interior: Vec<VertexId>,
    /// Path edges from `start` to `end`.
    pub edges: Vec<EdgeId>,
    /// A whole cycle component with no degree-≥3 vertex. `start == end`.
    pub closed: bool,
}

impl DegreeTwoPath {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Vertex `i` along the path, `0 = start`, `len = end`.
    fn node(&self, i: usize) -> VertexId {
        if i == 0 {
            self.start
        } else if i == self.edges.len() {
            self.end
        } else {
            self.interior[i - 1]
        }
    }
}

/// Splits a graph of minimum degree ≥ 2 into maximal degree-two paths. The
/// paths partition the edge set.
pub fn maximal_degree_two_paths(core: &Graph) -> Result<Vec<DegreeTwoPath>> {
    if core.vertex_count() > 0 && core.min_degree() < 2 {
        return Err(Error::invalid("degree-two paths need a graph of minimum degree 2"));
    }
    let mut used = vec![false; core.edge_count()];
    let mut paths = Vec::new();

    let walk = |start: VertexId, first: EdgeId, used: &mut [bool], closed: bool| {
        let mut edges = vec![first];
        let mut interior = Vec::new();
        used[first] = true;
        let mut prev = first;
        let mut cur = core.opposite(first, start);
        while core.degree(cur) == 2 && !(closed && cur == start) {
            interior.push(cur);
            let &(_, next) = core
                .incident(cur)
                .iter()
                .find(|&&(_, e)| e != prev)
                .expect("degree-two vertex has a second edge");
            used[next] = true;
            edges.push(next);
            prev = next;
            cur = core.opposite(next, cur);
        }
        DegreeTwoPath {
            start,
            end: cur,
            interior,
            edges,
            closed,
        }
    };

    for v in 0..core.vertex_count() {
        if core.degree(v) == 2 {
            continue;
        }
        for &(_, e) in core.incident(v) {
            if !used[e] {
                paths.push(walk(v, e, &mut used, false));
            }
        }
    }
    for v in 0..core.vertex_count() {
        if let Some(&(_, e)) = core.incident(v).iter().find(|&&(_, e)| !used[e]) {
            paths.push(walk(v, e, &mut used, true));
        }
    }
    Ok(paths)
}

/// Replay record for one shortened path, in source ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathRecord {
    pub path: DegreeTwoPath,
    /// Edge count after shortening.
    pub kept_length: usize,
}

impl PathRecord {
    /// Interior vertex standing in for the removed run.
    pub fn representative(&self) -> VertexId {
        self.path.interior[self.kept_length - 2]
    }

    /// The run of original interior vertices collapsed into the representative.
    pub fn run(&self) -> &[VertexId] {
        &self.path.interior[self.kept_length - 2..]
    }

    pub fn removed_vertices(&self) -> usize {
        self.path.len() - self.kept_length
    }
}

/// A shrunken graph plus everything needed to lift its layouts back.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub graph: Graph,
    /// The graph this kernel was built from.
    pub source: Graph,
    /// Source vertex of each kernel vertex.
    pub vertex_origin: Vec<VertexId>,
    /// Source edge of each kernel edge.
    pub edge_origin: Vec<EdgeId>,
    pub ell: usize,
    /// Cyclomatic number of the source, used to pick `ell`.
    pub source_k: usize,
    pub path_records: Vec<PathRecord>,
    pub tree_records: Vec<PrunedTree>,
    pub floating_trees: Vec<PrunedTree>,
    /// `(vertices, edges)` guaranteed for this objective, if known.
    pub bound: Option<(usize, usize)>,
}

impl Kernel {
    pub fn within_bound(&self) -> bool {
        self.bound.is_none_or(|(nv, ne)| {
            self.graph.vertex_count() <= nv && self.graph.edge_count() <= ne
        })
    }

    pub fn is_identity(&self) -> bool {
        self.path_records.is_empty() && self.tree_records.is_empty() && self.floating_trees.is_empty()
    }

    /// Rebuilds the source edge list by replaying the provenance records.
    /// Edges come back indexed by source edge id.
    pub fn reconstruct(&self) -> Graph {
        let mut edges: Vec<Option<[VertexId; 2]>> = vec![None; self.source.edge_count()];
        for (ke, &se) in self.edge_origin.iter().enumerate() {
            let [u, v] = self.graph.endpoints(ke);
            edges[se] = Some([self.vertex_origin[u], self.vertex_origin[v]]);
        }
        for rec in &self.path_records {
            let p = &rec.path;
            for i in rec.kept_length - 1..p.len() {
                edges[p.edges[i]] = Some([p.node(i), p.node(i + 1)]);
            }
        }
        for tree in self.tree_records.iter().chain(&self.floating_trees) {
            for &(child, parent, e) in &tree.links {
                edges[e] = Some([parent, child]);
            }
        }
        let mut g = Graph::with_labels(self.source.labels().to_vec());
        for (e, pair) in edges.into_iter().enumerate() {
            let [u, v] = pair.unwrap_or_else(|| panic!("edge {e} missing from provenance"));
            g.add_edge(u, v);
        }
        g
    }

    /// Kernel edge list (source labels) followed by `#` provenance comments.
    pub fn dump(&self) -> String {
        let mut out = self.graph.to_edge_list();
        let _ = writeln!(
            out,
            "# kernel: k={} ell={} vertices={} edges={}",
            self.source_k,
            self.ell,
            self.graph.vertex_count(),
            self.graph.edge_count()
        );
        if let Some((nv, ne)) = self.bound {
            let _ = writeln!(
                out,
                "# bound: vertices<={nv} edges<={ne} ({})",
                if self.within_bound() { "holds" } else { "VIOLATED" }
            );
        }
        let label = |v: VertexId| self.source.label(v);
        for rec in &self.path_records {
            let p = &rec.path;
            let _ = writeln!(
                out,
                "# path {} -- {}{}: length {} -> {} ({} vertices removed)",
                label(p.start),
                label(p.end),
                if p.closed { " (cycle)" } else { "" },
                p.len(),
                rec.kept_length,
                rec.removed_vertices()
            );
        }
        for t in &self.tree_records {
            let _ = writeln!(out, "# tree at {}: {} vertices pruned", label(t.root), t.vertices.len());
        }
        for t in &self.floating_trees {
            let _ = writeln!(
                out,
                "# floating tree at {}: {} vertices pruned",
                label(t.root),
                t.vertices.len()
            );
        }
        out
    }
}

/// Replaces every maximal degree-two path longer than `ell` by one of
/// length exactly `ell` between the same endpoints.
pub fn shorten_paths(core: &Graph, ell: usize) -> Result<Kernel> {
    if ell < 2 {
        return Err(Error::invalid(format!("path bound must be at least 2, got {ell}")));
    }
    let paths = maximal_degree_two_paths(core)?;
    let n = core.vertex_count();
    let m = core.edge_count();
    let mut removed_vertex = vec![false; n];
    let mut removed_edge = vec![false; m];
    let mut redirect: HashMap<EdgeId, (VertexId, VertexId)> = HashMap::new();
    let mut records = Vec::new();

    for path in paths {
        let len = path.len();
        let keep = if path.closed {
            3
        } else if path.start == path.end {
            ell.max(3)
        } else {
            ell
        };
        if len <= keep {
            continue;
        }
        for &x in &path.interior[keep - 1..] {
            removed_vertex[x] = true;
        }
        for &e in &path.edges[keep - 1..len - 1] {
            removed_edge[e] = true;
        }
        let last = path.edges[len - 1];
        redirect.insert(last, (path.interior[len - 2], path.interior[keep - 2]));
        records.push(PathRecord {
            path,
            kept_length: keep,
        });
    }

    let mut new_id = vec![usize::MAX; n];
    let mut vertex_origin = Vec::new();
    for v in 0..n {
        if !removed_vertex[v] {
            new_id[v] = vertex_origin.len();
            vertex_origin.push(v);
        }
    }
    let mut graph = Graph::with_labels(vertex_origin.iter().map(|&v| core.label(v)).collect());
    let mut edge_origin = Vec::new();
    for e in 0..m {
        if removed_edge[e] {
            continue;
        }
        let [mut u, mut v] = core.endpoints(e);
        if let Some(&(from, to)) = redirect.get(&e) {
            if u == from {
                u = to;
            } else {
                v = to;
            }
        }
        graph.add_edge(new_id[u], new_id[v]);
        edge_origin.push(e);
    }

    Ok(Kernel {
        graph,
        source: core.clone(),
        vertex_origin,
        edge_origin,
        ell,
        source_k: cyclomatic_number(core),
        path_records: records,
        tree_records: Vec::new(),
        floating_trees: Vec::new(),
        bound: None,
    })
}

/// Path bound and size bound for a style/objective pair at parameter `k`.
pub fn ell_and_bound(style: Style, objective: Objective, k: usize) -> (usize, (usize, usize)) {
    match (style, objective) {
        (Style::OnePage, _) => (2, (5 * k, 6 * k)),
        (Style::TwoPage, Objective::Crossings) => ((2 * k * k).max(2), (6 * k.pow(3), 6 * k.pow(3))),
        (Style::TwoPage, Objective::CrossedEdges) => ((2 * k).max(2), (6 * k * k, 6 * k * k)),
    }
}

/// Kernel of `component` for the given objective: 2-core, then path
/// shortening with `ell` computed from the component's own cyclomatic number.
pub fn kernel_for(component: &Graph, style: Style, objective: Objective) -> Kernel {
    let k = cyclomatic_number(component);
    let (ell, bound) = ell_and_bound(style, objective, k);
    let tc = two_core(component);
    let inner = shorten_paths(&tc.core.graph, ell).expect("2-core has minimum degree 2 and ell >= 2");
    let lift_v = |v: VertexId| tc.core.vertex_origin[v];
    let lift_path = |p: DegreeTwoPath| DegreeTwoPath {
        start: lift_v(p.start),
        end: lift_v(p.end),
        interior: p.interior.into_iter().map(lift_v).collect(),
        edges: p.edges.into_iter().map(|e| tc.core.edge_origin[e]).collect(),
        closed: p.closed,
    };
    Kernel {
        vertex_origin: inner.vertex_origin.iter().map(|&v| lift_v(v)).collect(),
        edge_origin: inner.edge_origin.iter().map(|&e| tc.core.edge_origin[e]).collect(),
        graph: inner.graph,
        source: component.clone(),
        ell,
        source_k: k,
        path_records: inner
            .path_records
            .into_iter()
            .map(|r| PathRecord {
                path: lift_path(r.path),
                kept_length: r.kept_length,
            })
            .collect(),
        tree_records: tc.attached,
        floating_trees: tc.floating,
        bound: Some(bound),
    }
}

/// 1-page kernel (`ell = 2`).
pub fn kernel_1page(component: &Graph) -> Kernel {
    kernel_for(component, Style::OnePage, Objective::Crossings)
}

/// 2-page crossing-number kernel (`ell = 2k²`).
pub fn kernel_2page_crossings(component: &Graph) -> Kernel {
    kernel_for(component, Style::TwoPage, Objective::Crossings)
}

/// 2-page crossed-edge kernel (`ell = 2k`).
pub fn kernel_2page_crossed(component: &Graph) -> Kernel {
    kernel_for(component, Style::TwoPage, Objective::CrossedEdges)
}

/// Turns a layout of `kernel.graph` into a layout of `kernel.source` with
/// the same crossings and crossed edges.
///
/// Each collapsed run is re-inserted at its representative's slot, oriented
/// so its two boundary edges do not cross each other; its inner edges join
/// spine neighbours and cannot cross anything. Pruned trees go right after
/// their attachment vertex in DFS preorder on page 0, and floating trees are
/// appended at the end.
pub fn lift_layout(kernel: &Kernel, emb: &BookEmbedding) -> Result<BookEmbedding> {
    emb.validate(&kernel.graph)?;
    let src = &kernel.source;
    let kpos = emb.positions();
    let nk = emb.order.len();
    let mut kernel_id = vec![usize::MAX; src.vertex_count()];
    for (kv, &sv) in kernel.vertex_origin.iter().enumerate() {
        kernel_id[sv] = kv;
    }
    let runs: HashMap<VertexId, &PathRecord> = kernel
        .path_records
        .iter()
        .map(|r| (r.representative(), r))
        .collect();
    let trees: HashMap<VertexId, &PrunedTree> =
        kernel.tree_records.iter().map(|t| (t.root, t)).collect();

    let mut core_order = Vec::with_capacity(src.vertex_count());
    for (slot, &kv) in emb.order.iter().enumerate() {
        let sv = kernel.vertex_origin[kv];
        match runs.get(&sv) {
            None => core_order.push(sv),
            Some(rec) => {
                let before = rec.path.node(rec.kept_length - 2);
                let after = rec.path.end;
                let cw = |sv: VertexId| (kpos[kernel_id[sv]] + nk - slot) % nk;
                if cw(after) < cw(before) {
                    core_order.extend_from_slice(rec.run());
                } else {
                    core_order.extend(rec.run().iter().rev());
                }
            }
        }
    }

    let mut order = Vec::with_capacity(src.vertex_count());
    for v in core_order {
        order.push(v);
        if let Some(t) = trees.get(&v) {
            order.extend_from_slice(&t.vertices);
        }
    }
    for t in &kernel.floating_trees {
        order.extend_from_slice(&t.vertices);
    }

    let mut page = vec![0u8; src.edge_count()];
    for (ke, &se) in kernel.edge_origin.iter().enumerate() {
        page[se] = emb.page[ke];
    }
    let lifted = BookEmbedding::new(order, page);
    lifted
        .validate(src)
        .map_err(|e| Error::Internal(format!("lifted layout does not cover the source: {e}")))?;
    Ok(lifted)
}
