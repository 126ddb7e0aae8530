//! Layout search as a minimum-weight triangle problem.
//!
//! The spine is cut into three consecutive arcs `P1 → P2 → P3` of `N/3`
//! vertices each (the graph is padded with isolated vertices until `N` is a
//! multiple of three). Every ordered block of vertices for an arc is a node,
//! and the weight between consecutive arcs charges each crossing to the arc
//! pairs that can see it:
//!
//! * all four endpoints in one arc: half to each of the two pairs touching it,
//! * two and two in two arcs, or three and one: all of it to that pair,
//! * two in one arc and one in each other arc: half to each pair touching the
//!   arc with two.
//!
//! Every charge only depends on the two arcs' orders and on which vertices
//! are left for the third arc, so a triangle's total is exactly twice the
//! crossing count of the layout `P1 ‖ P2 ‖ P3`. Charges are kept doubled so
//! everything stays integral. Vertex 0 is pinned to the front of `P1`.
//!
//! The cheapest triangle is found with one (cubic) min-plus product plus a
//! scan. Only the crossing-count objective is supported: a crossed-edge
//! charge would count an edge once per arc pair that sees one of its
//! crossings.

use std::time::Instant;

use crate::embedding::{canonicalize, interleaved, BookEmbedding};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::search::{merge_best, run_items, too_large, Objective, SearchConfig, SearchResult, Shared, Style};

/// Entry value for incompatible (overlapping) block pairs.
pub const INF: u64 = u64::MAX;

/// One of the three spine arcs, in clockwise order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    P1,
    P2,
    P3,
}

impl Slot {
    fn next(self) -> Slot {
        match self {
            Slot::P1 => Slot::P2,
            Slot::P2 => Slot::P3,
            Slot::P3 => Slot::P1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedBlock {
    pub slot: Slot,
    pub members: Vec<VertexId>,
}

impl OrderedBlock {
    fn mask(&self) -> u64 {
        self.members.iter().fold(0, |m, &v| m | 1 << v)
    }
}

/// A graph padded with isolated vertices to a multiple of three.
#[derive(Clone, Debug)]
pub struct PaddedKernel {
    pub graph: Graph,
    /// Vertices `real..` are padding.
    pub real: usize,
}

impl PaddedKernel {
    pub fn new(g: &Graph) -> Self {
        let mut graph = g.clone();
        while !graph.vertex_count().is_multiple_of(3) || graph.vertex_count() == 0 {
            let label = graph.vertex_count() as i64;
            graph.add_vertex(label);
        }
        PaddedKernel {
            graph,
            real: g.vertex_count(),
        }
    }

    pub fn quota(&self) -> usize {
        self.graph.vertex_count() / 3
    }

    fn pairs(&self) -> Vec<(usize, usize)> {
        let g = &self.graph;
        let mut out = Vec::new();
        for e in 0..g.edge_count() {
            let [a, b] = g.endpoints(e);
            for f in e + 1..g.edge_count() {
                let [c, d] = g.endpoints(f);
                if a != c && a != d && b != c && b != d {
                    out.push((e, f));
                }
            }
        }
        out
    }
}

/// All ordered blocks of `N/3` vertices for `slot`. Padding vertices may only
/// form an increasing suffix of a block; `P1` blocks start with vertex 0.
pub fn enumerate_blocks(kernel: &PaddedKernel, slot: Slot) -> Vec<OrderedBlock> {
    let n = kernel.graph.vertex_count();
    let q = kernel.quota();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(q);
    let mut used = vec![false; n];
    if slot == Slot::P1 {
        cur.push(0);
        used[0] = true;
    }
    extend(kernel.real, n, q, slot, &mut cur, &mut used, &mut out);
    out
}

fn extend(
    real: usize,
    n: usize,
    q: usize,
    slot: Slot,
    cur: &mut Vec<VertexId>,
    used: &mut [bool],
    out: &mut Vec<OrderedBlock>,
) {
    if cur.len() == q {
        out.push(OrderedBlock {
            slot,
            members: cur.clone(),
        });
        return;
    }
    let last = cur.last().copied();
    for v in 0..n {
        if used[v] {
            continue;
        }
        if v >= real && matches!(last, Some(l) if l >= real && l > v) {
            continue;
        }
        if v < real && matches!(last, Some(l) if l >= real) {
            continue;
        }
        used[v] = true;
        cur.push(v);
        extend(real, n, q, slot, cur, used, out);
        cur.pop();
        used[v] = false;
    }
}

/// Doubled crossing charge of the arc pair `(a, b)`, with `b` directly after
/// `a` clockwise. `pages` restricts counting to same-page pairs.
pub fn pair_weight(kernel: &PaddedKernel, a: &OrderedBlock, b: &OrderedBlock, pages: Option<&[u8]>) -> Result<u64> {
    if a.slot.next() != b.slot {
        return Err(Error::invalid(format!("{:?} is not directly followed by {:?}", a.slot, b.slot)));
    }
    if a.mask() & b.mask() != 0 {
        return Err(Error::invalid("blocks share a vertex"));
    }
    let mut scratch = Scratch::new(kernel.graph.vertex_count());
    let pairs = kernel.pairs();
    let terms = scratch.terms(&kernel.graph, &pairs, a, b);
    Ok(terms
        .iter()
        .filter(|t| pages.is_none_or(|p| p[t.e as usize] == p[t.f as usize]))
        .map(|t| t.charge as u64)
        .sum())
}

#[derive(Clone, Copy, Debug)]
struct Term {
    e: u8,
    f: u8,
    charge: u8,
}

struct Scratch {
    pos: Vec<usize>,
    region: Vec<u8>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            pos: vec![0; n],
            region: vec![2; n],
        }
    }

    /// Charged crossing pairs between consecutive arcs `a` and `b`. The
    /// third arc is collapsed to a single spine point after `b`.
    fn terms(&mut self, g: &Graph, pairs: &[(usize, usize)], a: &OrderedBlock, b: &OrderedBlock) -> Vec<Term> {
        let q = a.members.len();
        self.pos.iter_mut().for_each(|p| *p = 2 * q);
        self.region.iter_mut().for_each(|r| *r = 2);
        for (i, &v) in a.members.iter().enumerate() {
            self.pos[v] = i;
            self.region[v] = 0;
        }
        for (i, &v) in b.members.iter().enumerate() {
            self.pos[v] = q + i;
            self.region[v] = 1;
        }
        let mut out = Vec::new();
        for &(e, f) in pairs {
            let [u, v] = g.endpoints(e);
            let [x, y] = g.endpoints(f);
            let mut tally = [0u8; 3];
            for w in [u, v, x, y] {
                tally[self.region[w] as usize] += 1;
            }
            let charge = match tally {
                [_, _, c] if c >= 2 => 0,
                [4, 0, 0] | [0, 4, 0] => 1,
                [_, _, 0] => 2,
                [2, 1, 1] | [1, 2, 1] => 1,
                _ => 0,
            };
            if charge > 0 && interleaved(self.pos[u], self.pos[v], self.pos[x], self.pos[y]) {
                out.push(Term {
                    e: e as u8,
                    f: f as u8,
                    charge,
                });
            }
        }
        out
    }
}

/// Dense matrix of doubled weights; [`INF`] marks incompatible pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<u64>,
}

impl WeightMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        WeightMatrix {
            rows,
            cols,
            entries: vec![INF; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<u64>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::invalid("ragged weight matrix"));
        }
        Ok(WeightMatrix {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, w: u64) {
        self.entries[r * self.cols + c] = w;
    }
}

/// `Z[i][j] = min_k X[i][k] + Y[k][j]`, with [`INF`] absorbing.
pub fn min_plus_product(x: &WeightMatrix, y: &WeightMatrix) -> Result<WeightMatrix> {
    if x.cols != y.rows {
        return Err(Error::invalid(format!(
            "cannot multiply {}x{} by {}x{}",
            x.rows, x.cols, y.rows, y.cols
        )));
    }
    let finite: Vec<Vec<usize>> = (0..y.rows)
        .map(|k| (0..y.cols).filter(|&j| y.get(k, j) != INF).collect())
        .collect();
    let mut z = WeightMatrix::new(x.rows, y.cols);
    for i in 0..x.rows {
        for (k, cols) in finite.iter().enumerate() {
            let a = x.get(i, k);
            if a == INF {
                continue;
            }
            for &j in cols {
                let w = a + y.get(k, j);
                if w < z.get(i, j) {
                    z.set(i, j, w);
                }
            }
        }
    }
    Ok(z)
}

/// Charge lists for every compatible pair of two block lists.
struct TermMatrix {
    cols: usize,
    entries: Vec<Option<Vec<Term>>>,
}

impl TermMatrix {
    fn build(kernel: &PaddedKernel, pairs: &[(usize, usize)], rows: &[OrderedBlock], cols: &[OrderedBlock]) -> Self {
        let mut scratch = Scratch::new(kernel.graph.vertex_count());
        let col_masks: Vec<u64> = cols.iter().map(|b| b.mask()).collect();
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for a in rows {
            let am = a.mask();
            for (b, &bm) in cols.iter().zip(&col_masks) {
                entries.push((am & bm == 0).then(|| scratch.terms(&kernel.graph, pairs, a, b)));
            }
        }
        TermMatrix {
            cols: cols.len(),
            entries,
        }
    }

    /// Weights under page assignment `on1` (bit `e` set: edge `e` on page 1).
    fn weights(&self, on1: u64) -> WeightMatrix {
        WeightMatrix {
            rows: self.entries.len() / self.cols.max(1),
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|t| match t {
                    None => INF,
                    Some(terms) => terms
                        .iter()
                        .filter(|t| (on1 >> t.e ^ on1 >> t.f) & 1 == 0)
                        .map(|t| t.charge as u64)
                        .sum(),
                })
                .collect(),
        }
    }
}

struct Tripartite {
    kernel: PaddedKernel,
    p1: Vec<OrderedBlock>,
    p2: Vec<OrderedBlock>,
    p3: Vec<OrderedBlock>,
    t12: TermMatrix,
    t23: TermMatrix,
    t31: TermMatrix,
}

impl Tripartite {
    fn new(g: &Graph) -> Self {
        let kernel = PaddedKernel::new(g);
        let pairs = kernel.pairs();
        let p1 = enumerate_blocks(&kernel, Slot::P1);
        let without_anchor = |slot| {
            enumerate_blocks(&kernel, slot)
                .into_iter()
                .filter(|b| !b.members.contains(&0))
                .collect::<Vec<_>>()
        };
        let p2 = without_anchor(Slot::P2);
        let p3 = without_anchor(Slot::P3);
        let t12 = TermMatrix::build(&kernel, &pairs, &p1, &p2);
        let t23 = TermMatrix::build(&kernel, &pairs, &p2, &p3);
        let t31 = TermMatrix::build(&kernel, &pairs, &p3, &p1);
        Tripartite {
            kernel,
            p1,
            p2,
            p3,
            t12,
            t23,
            t31,
        }
    }

    /// Cheapest triangle under one page assignment: `(doubled weight, order)`.
    fn best_triangle(&self, on1: u64) -> Result<(u64, Vec<VertexId>, u64)> {
        let w12 = self.t12.weights(on1);
        let w23 = self.t23.weights(on1);
        let w31 = self.t31.weights(on1);
        let prod = min_plus_product(&w12, &w23)?;
        let mut best: Option<(u64, usize, usize)> = None;
        let mut scanned = 0u64;
        for a in 0..self.p1.len() {
            for c in 0..self.p3.len() {
                let (x, y) = (prod.get(a, c), w31.get(c, a));
                if x == INF || y == INF {
                    continue;
                }
                scanned += 1;
                if best.is_none_or(|b| x + y < b.0) {
                    best = Some((x + y, a, c));
                }
            }
        }
        let (w, a, c) = best.ok_or_else(|| Error::Internal("no compatible block triangle".into()))?;
        let b = (0..self.p2.len())
            .find(|&b| {
                let (x, y) = (w12.get(a, b), w23.get(b, c));
                x != INF && y != INF && x + y == prod.get(a, c)
            })
            .expect("argmin of the product exists");
        let order = self.p1[a]
            .members
            .iter()
            .chain(&self.p2[b].members)
            .chain(&self.p3[c].members)
            .copied()
            .filter(|&v| v < self.kernel.real)
            .collect();
        Ok((w, order, scanned))
    }
}

fn check_caps(g: &Graph, cfg: &SearchConfig, two_page: bool) -> Result<()> {
    let cap_m = cfg.max_edges_matmult_2page.min(64);
    if g.vertex_count() > cfg.max_vertices_matmult || g.edge_count() > 255 || (two_page && g.edge_count() > cap_m) {
        let cap = if two_page {
            format!("{} vertices and {cap_m} edges for 2-page matmult search", cfg.max_vertices_matmult)
        } else {
            format!("{} vertices for matmult search", cfg.max_vertices_matmult)
        };
        return Err(too_large(g, cap));
    }
    Ok(())
}

fn halve(doubled: u64) -> Result<u64> {
    if !doubled.is_multiple_of(2) {
        return Err(Error::Internal(format!("odd doubled triangle weight {doubled}")));
    }
    Ok(doubled / 2)
}

/// 1-page crossing number through minimum-weight triangle search.
pub fn solve_1page_matmult(g: &Graph, cfg: &SearchConfig) -> Result<SearchResult> {
    let start = Instant::now();
    check_caps(g, cfg, false)?;
    let tri = Tripartite::new(g);
    let (w, order, scanned) = tri.best_triangle(0)?;
    if cfg.budget.is_some_and(|b| scanned > b) {
        return Err(Error::BudgetExceeded {
            budget: cfg.budget.unwrap_or_default(),
        });
    }
    Ok(SearchResult {
        style: Style::OnePage,
        objective: Objective::Crossings,
        value: halve(w)?,
        layout: canonicalize(&BookEmbedding::one_page(order, g.edge_count())),
        explored: scanned,
        wall_time: start.elapsed(),
        blocks: Vec::new(),
    })
}

/// 2-page crossing number: one triangle search per page assignment (edge 0
/// pinned to page 0).
pub fn solve_2page_matmult(g: &Graph, cfg: &SearchConfig) -> Result<SearchResult> {
    let start = Instant::now();
    check_caps(g, cfg, true)?;
    let m = g.edge_count();
    let tri = Tripartite::new(g);
    let assignments: u64 = if m == 0 { 1 } else { 1 << (m - 1) };
    let workers = cfg.worker_count();
    let chunks = (workers * 4).min(assignments as usize).max(1);
    let shared = Shared::new(cfg.budget, u64::MAX);
    let results = run_items(chunks, workers, |chunk| {
        let mut counter = shared.counter(0);
        let mut best: Option<(u64, (Vec<VertexId>, u64))> = None;
        let mut bits = chunk as u64;
        while bits < assignments {
            let on1 = bits << 1;
            let (w, order, scanned) = tri.best_triangle(on1)?;
            counter.tick(scanned)?;
            if best.as_ref().is_none_or(|b| (w, on1) < (b.0, b.1 .1)) {
                best = Some((w, (order, on1)));
            }
            bits += chunks as u64;
        }
        counter.flush()?;
        Ok(best)
    })?;
    let mut all: Vec<(u64, (Vec<VertexId>, u64))> = results.into_iter().flatten().collect();
    all.sort_by_key(|(w, (_, on1))| (*w, *on1));
    let (w, (order, on1)) = merge_best(all.into_iter().map(Some).collect()).expect("at least one assignment");
    let page = (0..m).map(|e| (on1 >> e & 1) as u8).collect();
    Ok(SearchResult {
        style: Style::TwoPage,
        objective: Objective::Crossings,
        value: halve(w)?,
        layout: canonicalize(&BookEmbedding::new(order, page)),
        explored: shared.explored(),
        wall_time: start.elapsed(),
        blocks: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::count;

    fn blocks_of(n: usize, slot: Slot) -> Vec<OrderedBlock> {
        enumerate_blocks(&PaddedKernel::new(&Graph::new(n)), slot)
    }

    #[test]
    fn block_counts() {
        assert_eq!(blocks_of(3, Slot::P1).len(), 1);
        assert_eq!(blocks_of(3, Slot::P2).len(), 3);
        assert_eq!(blocks_of(6, Slot::P2).len(), 30);
        assert_eq!(blocks_of(6, Slot::P1).len(), 5);
        // 4 real vertices padded to 6: dummies {4, 5} only as an increasing suffix.
        let b = blocks_of(4, Slot::P2);
        assert!(b.iter().all(|b| b.members != vec![5, 4] && b.members != vec![4, 1]));
        assert_eq!(b.len(), 4 * 3 + 4 * 2 + 1);
    }

    #[test]
    fn min_plus_examples() {
        let x = WeightMatrix::from_rows(vec![vec![1, 3], vec![INF, 2]]).unwrap();
        let y = WeightMatrix::from_rows(vec![vec![0, 5], vec![1, 0]]).unwrap();
        let z = min_plus_product(&x, &y).unwrap();
        assert_eq!(z, WeightMatrix::from_rows(vec![vec![1, 3], vec![3, 2]]).unwrap());

        let id = WeightMatrix::from_rows(vec![vec![0, INF], vec![INF, 0]]).unwrap();
        assert_eq!(min_plus_product(&id, &x).unwrap(), x);
        let zero = WeightMatrix::from_rows(vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(min_plus_product(&zero, &zero).unwrap(), zero);

        let tall = WeightMatrix::from_rows(vec![vec![0], vec![0], vec![0]]).unwrap();
        assert!(min_plus_product(&tall, &tall).is_err());
    }

    #[test]
    fn pair_weight_rejects_bad_slots() {
        let k = PaddedKernel::new(&Graph::complete(6));
        let a = OrderedBlock {
            slot: Slot::P1,
            members: vec![0, 1],
        };
        let b = OrderedBlock {
            slot: Slot::P3,
            members: vec![2, 3],
        };
        assert!(pair_weight(&k, &a, &b, None).is_err());
        let c = OrderedBlock {
            slot: Slot::P2,
            members: vec![1, 3],
        };
        assert!(pair_weight(&k, &a, &c, None).is_err());
        assert_eq!(pair_weight(&PaddedKernel::new(&Graph::new(6)), &a, &OrderedBlock { slot: Slot::P2, members: vec![2, 3] }, None).unwrap(), 0);
    }

    #[test]
    fn triangle_weights_are_twice_the_crossings() {
        for g in [Graph::complete(4), Graph::complete(5), Graph::complete_bipartite(3, 3), Graph::cycle(3)] {
            let k = PaddedKernel::new(&g);
            let p1 = enumerate_blocks(&k, Slot::P1);
            let p2 = enumerate_blocks(&k, Slot::P2);
            let p3 = enumerate_blocks(&k, Slot::P3);
            for a in &p1 {
                for b in &p2 {
                    if a.mask() & b.mask() != 0 {
                        continue;
                    }
                    for c in &p3 {
                        if (a.mask() | b.mask()) & c.mask() != 0 {
                            continue;
                        }
                        let w = pair_weight(&k, a, b, None).unwrap()
                            + pair_weight(&k, b, c, None).unwrap()
                            + pair_weight(&k, c, a, None).unwrap();
                        let order: Vec<_> = [&a.members, &b.members, &c.members]
                            .into_iter()
                            .flatten()
                            .copied()
                            .filter(|&v| v < k.real)
                            .collect();
                        let emb = BookEmbedding::one_page(order, g.edge_count());
                        assert_eq!(w, 2 * count(&g, &emb).unwrap().crossings);
                    }
                }
            }
        }
    }

    #[test]
    fn one_page_values() {
        let cfg = SearchConfig::default();
        for (g, want) in [
            (Graph::cycle(3), 0),
            (Graph::complete(4), 1),
            (Graph::complete(5), 5),
            (Graph::from_edges(5, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]), 1),
        ] {
            let r = solve_1page_matmult(&g, &cfg).unwrap();
            assert_eq!(r.value, want);
            assert_eq!(count(&g, &r.layout).unwrap().crossings, want);
        }
    }

    #[test]
    fn two_page_values() {
        let cfg = SearchConfig::default();
        for (g, want) in [
            (Graph::cycle(5), 0),
            (Graph::complete(4), 0),
            (Graph::complete(5), 1),
            (Graph::complete_bipartite(3, 3), 1),
        ] {
            let r = solve_2page_matmult(&g, &cfg).unwrap();
            assert_eq!(r.value, want);
            assert_eq!(count(&g, &r.layout).unwrap().crossings, want);
        }
    }

    #[test]
    fn caps() {
        let cfg = SearchConfig::default();
        assert!(solve_1page_matmult(&Graph::complete(10), &cfg).is_err());
        assert!(solve_2page_matmult(&Graph::complete(6), &cfg).is_err());
    }
}
