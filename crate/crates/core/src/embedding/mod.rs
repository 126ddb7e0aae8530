//! Book embeddings: a circular vertex order plus a page for every edge.
//!
//! A 1-page drawing is simply a 2-page drawing with every edge on page 0.
//! Two edges cross iff they are on the same page, share no endpoint, and
//! their endpoints alternate around the circle. Parallel edges share both
//! endpoints and therefore never cross (they nest).

mod baseline;
mod incremental;
mod json;

pub use baseline::baseline_2page;
pub use incremental::swap_adjacent_update;
pub(crate) use incremental::LayoutState;
pub use json::LayoutJson;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BookEmbedding {
    /// Spine order: `order[i]` sits at position `i`.
    pub order: Vec<VertexId>,
    /// Page (0 or 1) of every edge, indexed by edge id.
    pub page: Vec<u8>,
}

impl BookEmbedding {
    pub fn new(order: Vec<VertexId>, page: Vec<u8>) -> Self {
        BookEmbedding { order, page }
    }

    /// All edges on page 0.
    pub fn one_page(order: Vec<VertexId>, edges: usize) -> Self {
        BookEmbedding {
            order,
            page: vec![0; edges],
        }
    }

    /// Identity order on one page.
    pub fn identity(g: &Graph) -> Self {
        Self::one_page((0..g.vertex_count()).collect(), g.edge_count())
    }

    pub fn is_one_page(&self) -> bool {
        self.page.iter().all(|&p| p == 0)
    }

    /// Spine position of every vertex. Assumes `order` is a permutation.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// Checks that this layout covers exactly the vertices and edges of `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.vertex_count();
        if self.order.len() != n {
            return Err(Error::invalid(format!(
                "layout orders {} vertices, graph has {n}",
                self.order.len()
            )));
        }
        let mut seen = vec![false; n];
        for &v in &self.order {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::invalid(format!("layout order is not a permutation (vertex {v})")));
            }
        }
        if self.page.len() != g.edge_count() {
            return Err(Error::invalid(format!(
                "layout assigns {} pages, graph has {} edges",
                self.page.len(),
                g.edge_count()
            )));
        }
        if let Some(p) = self.page.iter().find(|&&p| p > 1) {
            return Err(Error::invalid(format!("page {p} out of range")));
        }
        Ok(())
    }

    /// Order-and-page fingerprint, updatable in O(1) per adjacent swap.
    pub fn fingerprint(&self) -> u64 {
        let mut h = 0u64;
        for (i, &v) in self.order.iter().enumerate() {
            h = h.wrapping_add(slot_hash(i, v));
        }
        for (e, &p) in self.page.iter().enumerate() {
            h = h.wrapping_add(page_hash(e, p));
        }
        h
    }
}

fn mix(mut x: u64) -> u64 {
    // splitmix64 finalizer
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

pub(crate) fn slot_hash(pos: usize, v: VertexId) -> u64 {
    mix(((pos as u64) << 32) ^ v as u64)
}

fn page_hash(e: EdgeId, p: u8) -> u64 {
    mix(((e as u64) << 1 | p as u64) ^ 0x5555_0000_0000_0000)
}

/// Whether chords `a–b` and `c–d` interleave on the spine. All four
/// positions must be distinct.
#[inline]
pub(crate) fn interleaved(a: usize, b: usize, c: usize, d: usize) -> bool {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    (lo < c && c < hi) != (lo < d && d < hi)
}

/// Crossing test from endpoint positions; handles shared endpoints.
#[inline]
pub(crate) fn chords_cross(pos: &[usize], e: [VertexId; 2], f: [VertexId; 2]) -> bool {
    if e[0] == f[0] || e[0] == f[1] || e[1] == f[0] || e[1] == f[1] {
        return false;
    }
    interleaved(pos[e[0]], pos[e[1]], pos[f[0]], pos[f[1]])
}

pub fn edges_cross(g: &Graph, emb: &BookEmbedding, e: EdgeId, f: EdgeId) -> Result<bool> {
    let m = g.edge_count();
    if e >= m || f >= m || e >= emb.page.len() || f >= emb.page.len() {
        return Err(Error::invalid(format!("unknown edge id ({e}, {f})")));
    }
    if e == f {
        return Err(Error::invalid("an edge cannot cross itself"));
    }
    if emb.page[e] != emb.page[f] {
        return Ok(false);
    }
    Ok(chords_cross(&emb.positions(), g.endpoints(e), g.endpoints(f)))
}

/// Crossing statistics of a layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingReport {
    pub crossings: u64,
    /// Number of crossings on each edge, indexed by edge id.
    pub per_edge: Vec<u64>,
    /// Fingerprint of the layout this report describes.
    pub fingerprint: u64,
}

impl CrossingReport {
    pub fn crossed_edges(&self) -> Vec<EdgeId> {
        (0..self.per_edge.len()).filter(|&e| self.per_edge[e] > 0).collect()
    }

    pub fn crossed_count(&self) -> u64 {
        self.per_edge.iter().filter(|&&c| c > 0).count() as u64
    }
}

/// Exact crossing count by checking every pair of edges.
pub fn count(g: &Graph, emb: &BookEmbedding) -> Result<CrossingReport> {
    emb.validate(g)?;
    let pos = emb.positions();
    let m = g.edge_count();
    let mut per_edge = vec![0u64; m];
    let mut crossings = 0;
    for e in 0..m {
        let ee = g.endpoints(e);
        for f in e + 1..m {
            if emb.page[e] == emb.page[f] && chords_cross(&pos, ee, g.endpoints(f)) {
                crossings += 1;
                per_edge[e] += 1;
                per_edge[f] += 1;
            }
        }
    }
    Ok(CrossingReport {
        crossings,
        per_edge,
        fingerprint: emb.fingerprint(),
    })
}

/// Deterministic representative of a layout's symmetry class.
///
/// Rotates the circle so the smallest vertex id comes first, then picks the
/// direction (and for 2-page layouts the page labelling) giving the
/// lexicographically smallest `(order, page)` pair. None of these
/// symmetries change which edges cross.
pub fn canonicalize(emb: &BookEmbedding) -> BookEmbedding {
    let n = emb.order.len();
    if n == 0 {
        return emb.clone();
    }
    let start = (0..n).min_by_key(|&i| emb.order[i]).unwrap();
    let forward: Vec<VertexId> = (0..n).map(|i| emb.order[(start + i) % n]).collect();
    let backward: Vec<VertexId> = (0..n).map(|i| emb.order[(start + n - i) % n]).collect();
    let flipped: Vec<u8> = emb.page.iter().map(|&p| 1 - p).collect();
    let page = if flipped < emb.page { flipped } else { emb.page.clone() };
    let order = if backward < forward { backward } else { forward };
    BookEmbedding { order, page }
}
