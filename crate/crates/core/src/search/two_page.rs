use std::time::Instant;

use super::{
    merge_best, run_items, too_large, Counter, Objective, PlainChanges, SearchConfig, SearchResult, Shared, Style,
};
use crate::embedding::{baseline_2page, canonicalize, chords_cross, count, BookEmbedding};
use crate::error::Result;
use crate::graph::Graph;

/// Exact 2-page optimum over circular orders times page assignments.
///
/// Orders are walked exactly as in the 1-page engine. For each order the
/// pairwise "would cross on a shared page" relation is kept as per-edge
/// bitmasks, updated per transposition. Page assignment then splits into
/// independent connected components of that relation, each solved by
/// branch and bound with its first edge pinned to page 0. The search is
/// seeded with the value of [`baseline_2page`].
pub fn solve_2page(g: &Graph, objective: Objective, cfg: &SearchConfig) -> Result<SearchResult> {
    let start = Instant::now();
    let n = g.vertex_count();
    let m = g.edge_count();
    if n > cfg.max_vertices_2page || m > cfg.max_edges_2page.min(64) {
        return Err(too_large(
            g,
            format!(
                "{} vertices and {} edges for 2-page search",
                cfg.max_vertices_2page,
                cfg.max_edges_2page.min(64)
            ),
        ));
    }
    if n <= 3 {
        return Ok(SearchResult {
            style: Style::TwoPage,
            objective,
            value: 0,
            layout: BookEmbedding::identity(g),
            explored: 1,
            wall_time: start.elapsed(),
            blocks: Vec::new(),
        });
    }

    let seed = if cfg.prune {
        let base = count(g, &baseline_2page(g))?;
        objective_value(objective, base.crossings, base.crossed_count())
    } else {
        u64::MAX
    };
    let shared = Shared::new(cfg.budget, seed);
    let results = run_items(n - 1, cfg.worker_count(), |item| {
        search_item(g, objective, cfg.prune, item, &shared)
    })?;
    let (value, (order, page)) = merge_best(results).expect("the seeded bound is attainable");
    Ok(SearchResult {
        style: Style::TwoPage,
        objective,
        value,
        layout: canonicalize(&BookEmbedding::new(order, page)),
        explored: shared.explored(),
        wall_time: start.elapsed(),
        blocks: Vec::new(),
    })
}

fn objective_value(objective: Objective, crossings: u64, crossed: u64) -> u64 {
    match objective {
        Objective::Crossings => crossings,
        Objective::CrossedEdges => crossed,
    }
}

/// Spine order plus, per edge, the set of edges it interleaves with.
struct OrderState {
    order: Vec<usize>,
    pos: Vec<usize>,
    conflicts: Vec<u64>,
}

impl OrderState {
    fn new(g: &Graph, order: Vec<usize>) -> Self {
        let mut pos = vec![0; order.len()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let m = g.edge_count();
        let mut conflicts = vec![0u64; m];
        for e in 0..m {
            for f in e + 1..m {
                if chords_cross(&pos, g.endpoints(e), g.endpoints(f)) {
                    conflicts[e] |= 1 << f;
                    conflicts[f] |= 1 << e;
                }
            }
        }
        OrderState { order, pos, conflicts }
    }

    fn swap(&mut self, g: &Graph, p: usize) {
        let u = self.order[p];
        let v = self.order[p + 1];
        for &(x, e) in g.incident(u) {
            if x == v {
                continue;
            }
            for &(y, f) in g.incident(v) {
                if y != u && y != x {
                    self.conflicts[e] ^= 1 << f;
                    self.conflicts[f] ^= 1 << e;
                }
            }
        }
        self.order.swap(p, p + 1);
        self.pos[u] = p + 1;
        self.pos[v] = p;
    }
}

type Layout = (Vec<usize>, Vec<u8>);

fn search_item(
    g: &Graph,
    objective: Objective,
    prune: bool,
    item: usize,
    shared: &Shared,
) -> Result<Option<(u64, Layout)>> {
    use std::sync::atomic::Ordering::Relaxed;

    if shared.should_skip(item) {
        return Ok(None);
    }
    let n = g.vertex_count();
    let second = item + 1;
    let mut order = vec![0, second];
    order.extend((1..n).filter(|&v| v != second));
    let mut state = OrderState::new(g, order);
    let mut walk = PlainChanges::new(n - 2);
    let mut counter = shared.counter(item);
    let mut assign = Assigner::new(objective, g.edge_count());
    let mut best: Option<(u64, Layout)> = None;
    loop {
        if state.order[1] < state.order[n - 1] {
            let own = best.as_ref().map_or(u64::MAX, |b| b.0 - 1);
            let limit = if prune {
                own.min(shared.best.load(Relaxed))
            } else {
                own
            };
            let found = if prune {
                assign.branch_and_bound(&state.conflicts, limit, &mut counter)?
            } else {
                assign.flat(&state.conflicts, limit, &mut counter)?
            };
            if let Some(v) = found {
                shared.best.fetch_min(v, Relaxed);
                best = Some((v, (state.order.clone(), assign.pages.clone())));
                if v == 0 {
                    shared.found_zero(item);
                    break;
                }
            }
        }
        if !counter.tick(1)? {
            return Ok(None);
        }
        match walk.next_swap() {
            Some(j) => state.swap(g, j + 2),
            None => break,
        }
    }
    if !counter.flush()? {
        return Ok(None);
    }
    Ok(best)
}

/// Optimal page assignment for a fixed order.
struct Assigner {
    objective: Objective,
    m: usize,
    /// Pages of the last successful search.
    pages: Vec<u8>,
    // scratch for the current component
    edges: Vec<usize>,
    current: Vec<u8>,
    best_cost: u64,
    best_pages: Vec<u8>,
}

impl Assigner {
    fn new(objective: Objective, m: usize) -> Self {
        Assigner {
            objective,
            m,
            pages: vec![0; m],
            edges: Vec::with_capacity(m),
            current: vec![0; m],
            best_cost: 0,
            best_pages: vec![0; m],
        }
    }

    /// Minimum over all assignments if it is at most `limit`; the pages land
    /// in `self.pages`. Among optimal assignments the first in branching
    /// order is kept, so the result does not depend on `limit`.
    fn branch_and_bound(&mut self, conf: &[u64], limit: u64, counter: &mut Counter<'_>) -> Result<Option<u64>> {
        let mut unseen: u64 = 0;
        for (e, &c) in conf.iter().enumerate() {
            if c != 0 {
                unseen |= 1 << e;
            }
        }
        let mut pages = vec![0u8; self.m];
        let mut total = 0u64;
        while unseen != 0 {
            let mut comp = unseen & unseen.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let mut grow = 0;
                let mut f = frontier;
                while f != 0 {
                    grow |= conf[f.trailing_zeros() as usize];
                    f &= f - 1;
                }
                frontier = grow & !comp;
                comp |= grow;
            }
            unseen &= !comp;

            self.edges.clear();
            let mut c = comp;
            while c != 0 {
                self.edges.push(c.trailing_zeros() as usize);
                c &= c - 1;
            }
            let allowance = limit - total;
            self.best_cost = allowance.saturating_add(1);
            self.branch(conf, 0, 0, 0, 0, 0, counter)?;
            if self.best_cost > allowance {
                return Ok(None);
            }
            total += self.best_cost;
            for &e in &self.edges {
                pages[e] = self.best_pages[e];
            }
        }
        self.pages = pages;
        Ok(Some(total))
    }

    #[allow(clippy::too_many_arguments)]
    fn branch(
        &mut self,
        conf: &[u64],
        idx: usize,
        cost: u64,
        on0: u64,
        on1: u64,
        crossed: u64,
        counter: &mut Counter<'_>,
    ) -> Result<()> {
        counter.tick(1)?;
        if idx == self.edges.len() {
            if cost < self.best_cost {
                self.best_cost = cost;
                for &e in &self.edges {
                    self.best_pages[e] = self.current[e];
                }
            }
            return Ok(());
        }
        let mut bound = cost;
        for &e in &self.edges[idx..] {
            let (a, b) = (conf[e] & on0, conf[e] & on1);
            bound += match self.objective {
                Objective::Crossings => a.count_ones().min(b.count_ones()) as u64,
                Objective::CrossedEdges => (a != 0 && b != 0) as u64,
            };
        }
        if bound >= self.best_cost {
            return Ok(());
        }
        let e = self.edges[idx];
        let bit = 1u64 << e;
        let pages: &[u8] = if idx == 0 { &[0] } else { &[0, 1] };
        for &p in pages {
            let same = conf[e] & if p == 0 { on0 } else { on1 };
            let (next_cost, next_crossed) = match self.objective {
                Objective::Crossings => (cost + same.count_ones() as u64, crossed),
                Objective::CrossedEdges => {
                    let c = if same != 0 { crossed | same | bit } else { crossed };
                    (c.count_ones() as u64, c)
                }
            };
            self.current[e] = p;
            let (n0, n1) = if p == 0 { (on0 | bit, on1) } else { (on0, on1 | bit) };
            self.branch(conf, idx + 1, next_cost, n0, n1, next_crossed, counter)?;
        }
        Ok(())
    }

    /// Plain enumeration of all `2^(m-1)` assignments, edge 0 on page 0.
    fn flat(&mut self, conf: &[u64], limit: u64, counter: &mut Counter<'_>) -> Result<Option<u64>> {
        let m = self.m;
        if m == 0 {
            return Ok(Some(0));
        }
        let all: u64 = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        let mut best: Option<(u64, u64)> = None;
        for bits in 0..1u64 << (m - 1) {
            counter.tick(1)?;
            let on1 = bits << 1;
            let on0 = all & !on1;
            let mut crossings = 0u64;
            let mut crossed = 0u64;
            for (e, &c) in conf.iter().enumerate() {
                let same = c & if on1 >> e & 1 == 1 { on1 } else { on0 };
                crossings += same.count_ones() as u64;
                crossed += (same != 0) as u64;
            }
            let v = objective_value(self.objective, crossings / 2, crossed);
            if best.is_none_or(|b| v < b.0) {
                best = Some((v, on1));
            }
        }
        let (v, on1) = best.expect("at least one assignment");
        if v > limit {
            return Ok(None);
        }
        for e in 0..m {
            self.pages[e] = (on1 >> e & 1) as u8;
        }
        Ok(Some(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn value(g: &Graph, objective: Objective, prune: bool) -> u64 {
        let cfg = SearchConfig {
            prune,
            ..SearchConfig::default()
        };
        let r = solve_2page(g, objective, &cfg).unwrap();
        let rc = count(g, &r.layout).unwrap();
        assert_eq!(objective_value(objective, rc.crossings, rc.crossed_count()), r.value);
        r.value
    }

    #[test]
    fn small_complete_graphs() {
        for prune in [true, false] {
            assert_eq!(value(&Graph::complete(4), Objective::Crossings, prune), 0);
            assert_eq!(value(&Graph::complete(5), Objective::Crossings, prune), 1);
            assert_eq!(value(&Graph::complete(5), Objective::CrossedEdges, prune), 2);
            assert_eq!(value(&Graph::complete_bipartite(3, 3), Objective::Crossings, prune), 1);
        }
    }

    #[test]
    fn planar_hamiltonian_graphs_are_free() {
        assert_eq!(value(&Graph::cycle(6), Objective::Crossings, true), 0);
        // Octahedron: planar and Hamiltonian.
        let oct = Graph::from_edges(
            6,
            [
                (0, 1), (1, 2), (2, 3), (3, 0),
                (4, 0), (4, 1), (4, 2), (4, 3),
                (5, 0), (5, 1), (5, 2), (5, 3),
            ],
        );
        assert_eq!(value(&oct, Objective::Crossings, true), 0);
    }

    #[test]
    fn never_worse_than_one_page() {
        let g = Graph::complete_bipartite(2, 4);
        let one = crate::search::solve_1page_sjt(&g, Objective::Crossings, &SearchConfig::default()).unwrap();
        assert!(value(&g, Objective::Crossings, true) <= one.value);
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let g = Graph::complete(6);
        let run = |threads| {
            let cfg = SearchConfig {
                threads,
                ..SearchConfig::default()
            };
            solve_2page(&g, Objective::Crossings, &cfg).unwrap()
        };
        let (a, b) = (run(1), run(3));
        assert_eq!((a.value, &a.layout), (b.value, &b.layout));
        assert_eq!(a.value, 3);
    }

    #[test]
    fn edge_cap() {
        let cfg = SearchConfig::default();
        assert!(matches!(
            solve_2page(&Graph::complete(7), Objective::Crossings, &cfg),
            Err(Error::TooLarge { edges: 21, .. })
        ));
    }
}
