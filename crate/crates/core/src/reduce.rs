//! Crossing-preserving reductions of a layout along degree-two paths.
//!
//! Two consecutive path edges `ab`, `bc` sit on the spine in one of four
//! shapes, read on the line obtained by cutting the circle before
//! `order[0]`:
//!
//! | shape     | pages     | `b` between `a` and `c` |
//! |-----------|-----------|-------------------------|
//! | M         | same      | yes                     |
//! | Rainbow   | same      | no                      |
//! | S         | different | yes                     |
//! | Spiral    | different | no                      |
//!
//! Each reduction rearranges the spine and contracts one path edge so that
//! every remaining edge keeps exactly the crossings it had. These are not
//! used by the solver (which relies on the kernel path bounds) but back
//! those bounds in tests.

use crate::embedding::{count, BookEmbedding, CrossingReport};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairType {
    M,
    S,
    Rainbow,
    Spiral,
}

/// A reduced graph and layout, with the ids they came from.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub graph: Graph,
    pub layout: BookEmbedding,
    /// Input vertex of each output vertex.
    pub vertex_origin: Vec<VertexId>,
    /// Input edge of each output edge. A contracted `ab` keeps its id.
    pub edge_origin: Vec<EdgeId>,
}

impl Reduced {
    fn identity(g: &Graph, emb: &BookEmbedding) -> Self {
        Reduced {
            graph: g.clone(),
            layout: emb.clone(),
            vertex_origin: (0..g.vertex_count()).collect(),
            edge_origin: (0..g.edge_count()).collect(),
        }
    }

    /// Composes `self` (applied first) with `next`.
    fn then(self, next: Reduced) -> Reduced {
        Reduced {
            vertex_origin: next.vertex_origin.iter().map(|&v| self.vertex_origin[v]).collect(),
            edge_origin: next.edge_origin.iter().map(|&e| self.edge_origin[e]).collect(),
            graph: next.graph,
            layout: next.layout,
        }
    }
}

/// The vertices `(a, b, c)` of consecutive edges `ab` and `bc`.
fn pair_vertices(g: &Graph, ab: EdgeId, bc: EdgeId) -> Result<(VertexId, VertexId, VertexId)> {
    let m = g.edge_count();
    if ab >= m || bc >= m || ab == bc {
        return Err(Error::invalid(format!("edges {ab} and {bc} are not two distinct edges")));
    }
    let [p, q] = g.endpoints(ab);
    let [r, s] = g.endpoints(bc);
    let shared: Vec<VertexId> = [p, q].into_iter().filter(|v| *v == r || *v == s).collect();
    if shared.len() != 1 {
        return Err(Error::invalid(format!("edges {ab} and {bc} do not share exactly one vertex")));
    }
    let b = shared[0];
    let a = if p == b { q } else { p };
    let c = if r == b { s } else { r };
    Ok((a, b, c))
}

/// Shape of consecutive edges `ab`, `bc` in `emb`.
pub fn classify_pair(g: &Graph, emb: &BookEmbedding, ab: EdgeId, bc: EdgeId) -> Result<PairType> {
    emb.validate(g)?;
    let (a, b, c) = pair_vertices(g, ab, bc)?;
    let pos = emb.positions();
    let between = (pos[a] < pos[b]) == (pos[b] < pos[c]);
    Ok(match (emb.page[ab] == emb.page[bc], between) {
        (true, true) => PairType::M,
        (true, false) => PairType::Rainbow,
        (false, true) => PairType::S,
        (false, false) => PairType::Spiral,
    })
}

fn other_edge(g: &Graph, v: VertexId, not: EdgeId) -> (VertexId, EdgeId) {
    *g.incident(v)
        .iter()
        .find(|&&(_, e)| e != not)
        .expect("degree-two vertex has a second edge")
}

fn require(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::invalid(msg.to_string()))
    }
}

/// Deletes `b` from the spine `line`, drops `bc` and re-attaches `ab` to `c`.
fn contract(g: &Graph, emb: &BookEmbedding, line: &[VertexId], ab: EdgeId, bc: EdgeId) -> Result<Reduced> {
    let (a, b, c) = pair_vertices(g, ab, bc)?;
    let n = g.vertex_count();
    let mut new_id = vec![usize::MAX; n];
    let mut vertex_origin = Vec::with_capacity(n - 1);
    for v in (0..n).filter(|&v| v != b) {
        new_id[v] = vertex_origin.len();
        vertex_origin.push(v);
    }
    let mut graph = Graph::with_labels(vertex_origin.iter().map(|&v| g.label(v)).collect());
    let mut edge_origin = Vec::with_capacity(g.edge_count() - 1);
    let mut page = Vec::with_capacity(g.edge_count() - 1);
    for e in (0..g.edge_count()).filter(|&e| e != bc) {
        let [u, v] = if e == ab { [a, c] } else { g.endpoints(e) };
        graph.add_edge(new_id[u], new_id[v]);
        edge_origin.push(e);
        page.push(emb.page[e]);
    }
    let order = line.iter().filter(|&&v| v != b).map(|&v| new_id[v]).collect();
    Ok(Reduced {
        graph,
        layout: BookEmbedding::new(order, page),
        vertex_origin,
        edge_origin,
    })
}

fn crosses(g: &Graph, emb: &BookEmbedding, e: EdgeId, f: EdgeId) -> bool {
    crate::embedding::edges_cross(g, emb, e, f).unwrap_or(false)
}

/// M or rainbow reduction: contract `bc` into `c`.
///
/// Moving `b` next to `c` and contracting `bc` leaves the other vertices in
/// their original order, so the result is the input order with `b` removed
/// and `ab` re-attached to `c`. That keeps every crossing as long as `bc` is
/// uncrossed and `ab` does not cross `c`'s other edge, whose crossing with
/// the merged edge would vanish.
pub fn reduce_m_rainbow(g: &Graph, emb: &BookEmbedding, ab: EdgeId, bc: EdgeId) -> Result<Reduced> {
    let report = count(g, emb)?;
    reduce_m_rainbow_with(g, emb, &report, ab, bc)
}

fn reduce_m_rainbow_with(
    g: &Graph,
    emb: &BookEmbedding,
    report: &CrossingReport,
    ab: EdgeId,
    bc: EdgeId,
) -> Result<Reduced> {
    let shape = classify_pair(g, emb, ab, bc)?;
    require(
        matches!(shape, PairType::M | PairType::Rainbow),
        "m/rainbow reduction needs both edges on one page",
    )?;
    let (_, b, c) = pair_vertices(g, ab, bc)?;
    require(g.degree(b) == 2 && g.degree(c) == 2, "m/rainbow reduction needs deg(b) = deg(c) = 2")?;
    require(report.per_edge[bc] == 0, "m/rainbow reduction needs bc uncrossed")?;
    let (_, cy) = other_edge(g, c, bc);
    require(
        !crosses(g, emb, ab, cy),
        "m/rainbow reduction would lose the crossing between ab and c's other edge",
    )?;
    contract(g, emb, &emb.order, ab, bc)
}

/// S or spiral reduction.
///
/// If `a`'s other edge shares `ab`'s page, `(xa, ab)` is an m/rainbow pair
/// and `ab` is contracted that way; likewise for `c`'s other edge and `bc`.
/// Otherwise the block `β` of vertices strictly inside `bc`'s span (between
/// `b` and `c` for s, between `c` and `b` for spiral after normalizing so
/// that `c` lies between `a` and `b`) has no edges leaving it on `bc`'s page
/// and can be moved: to just before `a` (s) or to just after `a` (spiral).
/// Then `b` and `c` are adjacent and `bc` is contracted.
pub fn reduce_s_spiral(g: &Graph, emb: &BookEmbedding, ab: EdgeId, bc: EdgeId) -> Result<Reduced> {
    let report = count(g, emb)?;
    reduce_s_spiral_with(g, emb, &report, ab, bc)
}

fn reduce_s_spiral_with(
    g: &Graph,
    emb: &BookEmbedding,
    report: &CrossingReport,
    ab: EdgeId,
    bc: EdgeId,
) -> Result<Reduced> {
    let shape = classify_pair(g, emb, ab, bc)?;
    require(
        matches!(shape, PairType::S | PairType::Spiral),
        "s/spiral reduction needs the edges on different pages",
    )?;
    let (a, b, c) = pair_vertices(g, ab, bc)?;
    require(
        g.degree(a) == 2 && g.degree(b) == 2 && g.degree(c) == 2,
        "s/spiral reduction needs deg(a) = deg(b) = deg(c) = 2",
    )?;
    require(
        report.per_edge[ab] == 0 && report.per_edge[bc] == 0,
        "s/spiral reduction needs ab and bc uncrossed",
    )?;
    let (_, xa) = other_edge(g, a, ab);
    if emb.page[xa] == emb.page[ab] {
        return reduce_m_rainbow_with(g, emb, report, xa, ab);
    }
    let (_, cy) = other_edge(g, c, bc);
    if emb.page[cy] == emb.page[bc] {
        return reduce_m_rainbow_with(g, emb, report, cy, bc);
    }

    let pos = emb.positions();
    // Roles after normalization: `ab` is the edge kept, `bc` the one contracted.
    let (a, c, ab, bc) = if shape == PairType::Spiral && (pos[c] < pos[a]) == (pos[a] < pos[b]) {
        (c, a, bc, ab)
    } else {
        (a, c, ab, bc)
    };
    let reflect = pos[a] > pos[b];
    let mut line = emb.order.clone();
    if reflect {
        line.reverse();
    }
    let at = |v: VertexId| line.iter().position(|&w| w == v).expect("vertex on spine");
    let (pa, pb, pc) = (at(a), at(b), at(c));
    let span = |lo: usize, hi: usize| -> Vec<VertexId> { line[lo + 1..hi].to_vec() };

    let beta = if shape == PairType::S { span(pb, pc) } else { span(pc, pb) };
    let mut inside = vec![false; g.vertex_count()];
    for &v in &beta {
        inside[v] = true;
    }
    for &v in &beta {
        for &(w, e) in g.incident(v) {
            if !inside[w] && emb.page[e] == emb.page[bc] {
                return Err(Error::Internal(format!(
                    "vertex {v} between the ends of uncrossed edge {bc} has an edge leaving on its page"
                )));
            }
        }
    }

    let mut moved = Vec::with_capacity(line.len());
    if shape == PairType::S {
        // L, β, a, α, b, c, R
        moved.extend_from_slice(&line[..pa]);
        moved.extend_from_slice(&beta);
        moved.extend_from_slice(&line[pa..=pb]);
        moved.extend_from_slice(&line[pc..]);
    } else {
        // L, a, β, α, c, b, R
        moved.extend_from_slice(&line[..=pa]);
        moved.extend_from_slice(&beta);
        moved.extend_from_slice(&line[pa + 1..=pc]);
        moved.extend_from_slice(&line[pb..]);
    }
    if reflect {
        moved.reverse();
    }
    contract(g, emb, &moved, ab, bc)
}

/// Applies m/rainbow and s/spiral reductions along every degree-two path of
/// at least four edges until none applies.
///
/// The spine is first rotated so that a vertex of degree three or more (if
/// any) is at position 0, keeping the cut point off the paths being reduced.
pub fn reduce_exhaustively(g: &Graph, emb: &BookEmbedding) -> Result<Reduced> {
    emb.validate(g)?;
    let mut layout = emb.clone();
    if let Some(i) = layout.order.iter().position(|&v| g.degree(v) >= 3) {
        layout.order.rotate_left(i);
    }
    let mut acc = Reduced::identity(g, &layout);
    while let Some(step) = reduce_once(&acc.graph, &acc.layout)? {
        acc = acc.then(step);
    }
    Ok(acc)
}

fn reduce_once(g: &Graph, emb: &BookEmbedding) -> Result<Option<Reduced>> {
    let report = count(g, emb)?;
    let long = on_long_paths(g);
    for b in 0..g.vertex_count() {
        if g.degree(b) != 2 || !long[b] {
            continue;
        }
        let inc = g.incident(b);
        let (e1, e2) = (inc[0].1, inc[1].1);
        for (ab, bc) in [(e1, e2), (e2, e1)] {
            let attempt = match classify_pair(g, emb, ab, bc) {
                Ok(PairType::M | PairType::Rainbow) => reduce_m_rainbow_with(g, emb, &report, ab, bc),
                Ok(PairType::S | PairType::Spiral) => reduce_s_spiral_with(g, emb, &report, ab, bc),
                Err(e) => Err(e),
            };
            match attempt {
                Ok(r) => return Ok(Some(r)),
                Err(Error::InvalidArgument(_)) => continue,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(None)
}

/// Degree-two vertices on a maximal degree-two path (or bare cycle) with at
/// least four edges.
fn on_long_paths(g: &Graph) -> Vec<bool> {
    let n = g.vertex_count();
    let mut out = vec![false; n];
    let mut seen = vec![false; n];
    for s in 0..n {
        if g.degree(s) != 2 || seen[s] {
            continue;
        }
        // Collect the degree-two run through s, then count its edges.
        let mut run = vec![s];
        seen[s] = true;
        let mut ends = 0;
        let mut closed = false;
        for &(first, e0) in g.incident(s) {
            let (mut prev_e, mut cur) = (e0, first);
            loop {
                if cur == s {
                    closed = true;
                    break;
                }
                if g.degree(cur) != 2 || seen[cur] {
                    ends += 1;
                    break;
                }
                seen[cur] = true;
                run.push(cur);
                let (next, e) = other_edge(g, cur, prev_e);
                prev_e = e;
                cur = next;
            }
            if closed {
                break;
            }
        }
        let edges = if closed { run.len() } else { run.len() + 1 };
        debug_assert!(closed || ends == 2);
        if edges >= 4 {
            for v in run {
                out[v] = true;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge(g: &Graph, a: VertexId, b: VertexId) -> EdgeId {
        (0..g.edge_count())
            .find(|&e| {
                let [u, v] = g.endpoints(e);
                (u, v) == (a, b) || (u, v) == (b, a)
            })
            .unwrap()
    }

    fn same_counts(before: (&Graph, &BookEmbedding), after: &Reduced) {
        let r0 = count(before.0, before.1).unwrap();
        let r1 = count(&after.graph, &after.layout).unwrap();
        assert_eq!(r0.crossings, r1.crossings);
        assert_eq!(r0.crossed_count(), r1.crossed_count());
        assert_eq!(after.graph.vertex_count() + 1, before.0.vertex_count());
    }

    #[test]
    fn classification_on_a_line() {
        let g = Graph::path(3);
        let (ab, bc) = (0, 1);
        let at = |order: Vec<usize>, pages: Vec<u8>| classify_pair(&g, &BookEmbedding::new(order, pages), ab, bc).unwrap();
        assert_eq!(at(vec![0, 1, 2], vec![0, 0]), PairType::M);
        assert_eq!(at(vec![0, 2, 1], vec![0, 0]), PairType::Rainbow);
        assert_eq!(at(vec![0, 1, 2], vec![0, 1]), PairType::S);
        assert_eq!(at(vec![0, 2, 1], vec![1, 0]), PairType::Spiral);
        assert!(classify_pair(&g, &BookEmbedding::identity(&g), 0, 0).is_err());
    }

    #[test]
    fn m_pair_in_a_cycle() {
        let g = Graph::cycle(6);
        let emb = BookEmbedding::identity(&g);
        let r = reduce_m_rainbow(&g, &emb, edge(&g, 1, 2), edge(&g, 2, 3)).unwrap();
        same_counts((&g, &emb), &r);
        assert_eq!(r.graph.edge_count(), 5);
    }

    #[test]
    fn rainbow_keeps_crossings_on_the_merged_edge() {
        // Path 0-1-2-3-7 with chord 1-2 spanning 4, 6, 7, 3 and a triangle
        // 4-5-6 whose edges 4-5 and 5-6 cross it.
        let g = Graph::from_edges(8, [(0, 1), (1, 2), (2, 3), (3, 7), (4, 5), (6, 4), (5, 6)]);
        let emb = BookEmbedding::one_page(vec![0, 1, 4, 6, 7, 3, 2, 5], 7);
        let ab = edge(&g, 1, 2);
        let bc = edge(&g, 2, 3);
        assert_eq!(classify_pair(&g, &emb, ab, bc).unwrap(), PairType::Rainbow);
        let before = count(&g, &emb).unwrap();
        assert_eq!(before.per_edge[ab], 2);
        let r = reduce_m_rainbow(&g, &emb, ab, bc).unwrap();
        same_counts((&g, &emb), &r);
        let after = count(&r.graph, &r.layout).unwrap();
        let merged = r.edge_origin.iter().position(|&e| e == ab).unwrap();
        assert_eq!(after.per_edge[merged], 2);
    }

    #[test]
    fn m_rejects_crossing_with_next_edge() {
        // a=0 b=2 c=3 y=1: cy = 3-1 crosses ab = 0-2.
        let g = Graph::from_edges(5, [(0, 2), (2, 3), (3, 1), (1, 4), (4, 0)]);
        let emb = BookEmbedding::one_page(vec![0, 1, 2, 3, 4], 5);
        assert!(crosses(&g, &emb, 0, 2));
        assert!(reduce_m_rainbow(&g, &emb, 0, 1).is_err());
    }

    #[test]
    fn s_pair_in_alternating_cycle() {
        let g = Graph::cycle(8);
        let pages = (0..8).map(|e| (e % 2) as u8).collect();
        let emb = BookEmbedding::new((0..8).collect(), pages);
        let ab = edge(&g, 2, 3);
        let bc = edge(&g, 3, 4);
        assert_eq!(classify_pair(&g, &emb, ab, bc).unwrap(), PairType::S);
        let r = reduce_s_spiral(&g, &emb, ab, bc).unwrap();
        same_counts((&g, &emb), &r);
    }

    #[test]
    fn s_pair_with_block_moves() {
        // Path x=0 - a=1 - b=3 - c=5 - y=7 with ab on page 0, bc on page 1,
        // xa on page 1, cy on page 0. α = {2}, β = {4}; β has a page-0 edge to 6.
        let g = Graph::from_edges(
            9,
            [(0, 1), (1, 3), (3, 5), (5, 7), (4, 6), (2, 8), (6, 8), (7, 8), (0, 8)],
        );
        let order: Vec<usize> = (0..9).collect();
        let pages = vec![1, 0, 1, 0, 0, 1, 1, 1, 1];
        let emb = BookEmbedding::new(order, pages);
        let (ab, bc) = (edge(&g, 1, 3), edge(&g, 3, 5));
        assert_eq!(classify_pair(&g, &emb, ab, bc).unwrap(), PairType::S);
        let rep = count(&g, &emb).unwrap();
        assert_eq!((rep.per_edge[ab], rep.per_edge[bc]), (0, 0));
        let r = reduce_s_spiral(&g, &emb, ab, bc).unwrap();
        same_counts((&g, &emb), &r);
    }

    #[test]
    fn spiral_pair() {
        // Line 0..6 with a=0, c=2 between a and b=4. ab on page 0 spans
        // α = {1}, c and β = {3}; bc on page 1 spans β. c's other edge goes
        // to 3 and 3-1 joins β to α on page 0.
        let g = Graph::from_edges(6, [(0, 4), (4, 2), (2, 3), (3, 1), (1, 5), (5, 0)]);
        let emb = BookEmbedding::new((0..6).collect(), vec![0, 1, 0, 0, 1, 1]);
        let (ab, bc) = (edge(&g, 0, 4), edge(&g, 4, 2));
        assert_eq!(classify_pair(&g, &emb, ab, bc).unwrap(), PairType::Spiral);
        let r = reduce_s_spiral(&g, &emb, ab, bc).unwrap();
        same_counts((&g, &emb), &r);
    }

    #[test]
    fn twelve_cycle_to_triangle() {
        let g = Graph::cycle(12);
        let r = reduce_exhaustively(&g, &BookEmbedding::identity(&g)).unwrap();
        assert_eq!(r.graph.vertex_count(), 3);
        assert_eq!(count(&r.graph, &r.layout).unwrap().crossings, 0);
    }

    #[test]
    fn fixpoint_is_identity() {
        let g = Graph::complete(4);
        let emb = BookEmbedding::identity(&g);
        let r = reduce_exhaustively(&g, &emb).unwrap();
        assert_eq!(r.graph, g);
        assert_eq!(r.layout, emb);
    }

    #[test]
    fn theta_arms_shrink() {
        let mut g = Graph::new(2);
        for _ in 0..3 {
            let mut prev = 0;
            for _ in 0..7 {
                let v = g.add_vertex(g.vertex_count() as i64);
                g.add_edge(prev, v);
                prev = v;
            }
            g.add_edge(prev, 1);
        }
        let emb = BookEmbedding::identity(&g);
        let before = count(&g, &emb).unwrap();
        let r = reduce_exhaustively(&g, &emb).unwrap();
        let after = count(&r.graph, &r.layout).unwrap();
        assert!(r.graph.vertex_count() < g.vertex_count());
        assert_eq!(before.crossings, after.crossings);
        assert_eq!(before.crossed_count(), after.crossed_count());
    }
}
