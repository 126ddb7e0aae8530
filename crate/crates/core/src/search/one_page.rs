use std::time::Instant;

use super::{merge_best, run_items, too_large, Objective, PlainChanges, SearchConfig, SearchResult, Shared, Style};
use crate::embedding::{canonicalize, count, BookEmbedding, LayoutState};
use crate::error::Result;
use crate::graph::Graph;

/// Exact 1-page optimum over all circular orders.
///
/// Vertex 0 stays at position 0. Each work item fixes the vertex at
/// position 1 and walks the remaining positions by plain changes, updating
/// crossings incrementally per transposition. Of each mirror-image pair only
/// the order with `order[1] < order[n - 1]` is scored.
pub fn solve_1page_sjt(g: &Graph, objective: Objective, cfg: &SearchConfig) -> Result<SearchResult> {
    let start = Instant::now();
    let n = g.vertex_count();
    if n > cfg.max_vertices_1page {
        return Err(too_large(
            g,
            format!("{} vertices for 1-page search", cfg.max_vertices_1page),
        ));
    }
    let m = g.edge_count();
    if n <= 3 {
        return Ok(SearchResult {
            style: Style::OnePage,
            objective,
            value: 0,
            layout: BookEmbedding::identity(g),
            explored: 1,
            wall_time: start.elapsed(),
            blocks: Vec::new(),
        });
    }

    let shared = Shared::new(cfg.budget, u64::MAX);
    let results = run_items(n - 1, cfg.worker_count(), |item| search_item(g, objective, item, &shared))?;
    let (value, order) = merge_best(results).expect("every circular order class has a representative");
    Ok(SearchResult {
        style: Style::OnePage,
        objective,
        value,
        layout: canonicalize(&BookEmbedding::one_page(order, m)),
        explored: shared.explored(),
        wall_time: start.elapsed(),
        blocks: Vec::new(),
    })
}

fn search_item(
    g: &Graph,
    objective: Objective,
    item: usize,
    shared: &Shared,
) -> Result<Option<(u64, Vec<usize>)>> {
    if shared.should_skip(item) {
        return Ok(None);
    }
    let n = g.vertex_count();
    let second = item + 1;
    let mut order = vec![0, second];
    order.extend((1..n).filter(|&v| v != second));
    let emb = BookEmbedding::one_page(order, g.edge_count());
    let mut state = LayoutState::new(g, &emb, &count(g, &emb)?);
    let mut walk = PlainChanges::new(n - 2);
    let mut counter = shared.counter(item);
    let mut best: Option<(u64, Vec<usize>)> = None;
    loop {
        if state.order[1] < state.order[n - 1] {
            let v = match objective {
                Objective::Crossings => state.crossings,
                Objective::CrossedEdges => state.crossed,
            };
            if best.as_ref().is_none_or(|b| v < b.0) {
                best = Some((v, state.order.clone()));
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
