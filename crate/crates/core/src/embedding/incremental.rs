use super::{chords_cross, slot_hash, BookEmbedding, CrossingReport};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Mutable crossing bookkeeping for a layout under adjacent transpositions.
///
/// Swapping the vertices at positions `p` and `p + 1` can only change the
/// status of pairs (edge at one of them, edge at the other) with four
/// distinct endpoints, and every such same-page pair flips.
#[derive(Clone, Debug)]
pub(crate) struct LayoutState {
    pub order: Vec<usize>,
    pub pos: Vec<usize>,
    pub page: Vec<u8>,
    pub per_edge: Vec<u64>,
    pub crossings: u64,
    pub crossed: u64,
    pub fingerprint: u64,
}

impl LayoutState {
    pub fn new(g: &Graph, emb: &BookEmbedding, report: &CrossingReport) -> Self {
        LayoutState {
            order: emb.order.clone(),
            pos: emb.positions(),
            page: emb.page.clone(),
            per_edge: report.per_edge.clone(),
            crossings: report.crossings,
            crossed: report.crossed_count(),
            fingerprint: report.fingerprint,
        }
        .checked(g)
    }

    fn checked(self, g: &Graph) -> Self {
        debug_assert_eq!(self.per_edge.len(), g.edge_count());
        self
    }

    pub fn swap(&mut self, g: &Graph, p: usize) {
        let u = self.order[p];
        let v = self.order[p + 1];
        for &(x, e) in g.incident(u) {
            if x == v {
                continue;
            }
            for &(y, f) in g.incident(v) {
                if y == u || y == x || self.page[e] != self.page[f] {
                    continue;
                }
                if chords_cross(&self.pos, [u, x], [v, y]) {
                    self.crossings -= 1;
                    self.dec(e);
                    self.dec(f);
                } else {
                    self.crossings += 1;
                    self.inc(e);
                    self.inc(f);
                }
            }
        }
        self.fingerprint = self
            .fingerprint
            .wrapping_sub(slot_hash(p, u))
            .wrapping_sub(slot_hash(p + 1, v))
            .wrapping_add(slot_hash(p, v))
            .wrapping_add(slot_hash(p + 1, u));
        self.order.swap(p, p + 1);
        self.pos[u] = p + 1;
        self.pos[v] = p;
    }

    #[inline]
    fn inc(&mut self, e: usize) {
        if self.per_edge[e] == 0 {
            self.crossed += 1;
        }
        self.per_edge[e] += 1;
    }

    #[inline]
    fn dec(&mut self, e: usize) {
        self.per_edge[e] -= 1;
        if self.per_edge[e] == 0 {
            self.crossed -= 1;
        }
    }

    pub fn report(&self) -> CrossingReport {
        CrossingReport {
            crossings: self.crossings,
            per_edge: self.per_edge.clone(),
            fingerprint: self.fingerprint,
        }
    }
}

/// Transposes spine positions `p` and `p + 1` and updates `state` without a
/// full recount. Work is proportional to `deg(u) · deg(v)`.
///
/// `state` must be the report for `emb`; a fingerprint mismatch is reported
/// as [`Error::StaleState`].
pub fn swap_adjacent_update(
    g: &Graph,
    emb: &BookEmbedding,
    state: &CrossingReport,
    p: usize,
) -> Result<(BookEmbedding, CrossingReport)> {
    emb.validate(g)?;
    if state.fingerprint != emb.fingerprint() || state.per_edge.len() != g.edge_count() {
        return Err(Error::StaleState);
    }
    if p + 1 >= emb.order.len() {
        return Err(Error::invalid(format!(
            "cannot swap position {p} in a spine of {}",
            emb.order.len()
        )));
    }
    let mut s = LayoutState::new(g, emb, state);
    s.swap(g, p);
    let next = BookEmbedding::new(s.order.clone(), s.page.clone());
    Ok((next, s.report()))
}
