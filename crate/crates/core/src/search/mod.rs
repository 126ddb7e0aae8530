//! Exact layout search: factorial engines for a single (kernel) graph and
//! the block-by-block pipeline that assembles a global optimum.

mod one_page;
mod pipeline;
mod sjt;
mod two_page;

pub use one_page::solve_1page_sjt;
pub use pipeline::{compose_components, solve, BlockSummary};
pub use two_page::solve_2page;

pub(crate) use sjt::PlainChanges;

use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering::Relaxed};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::embedding::BookEmbedding;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Style {
    OnePage,
    TwoPage,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Objective {
    /// Total number of crossing pairs.
    Crossings,
    /// Number of edges involved in at least one crossing.
    CrossedEdges,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Engine {
    /// Plain-changes walk over circular orders (1-page).
    Sjt,
    /// Orders times page assignments with branch and bound (2-page).
    Enumeration,
    /// Minimum-weight triangle over ordered vertex blocks (crossings only).
    Matmult,
    /// `Sjt` for 1-page, `Enumeration` for 2-page.
    Auto,
}

impl fmt::Display for Style {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Style::OnePage => "1page",
            Style::TwoPage => "2page",
        })
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::Crossings => "crossings",
            Objective::CrossedEdges => "crossed-edges",
        })
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Sjt => "sjt",
            Engine::Enumeration => "enumeration",
            Engine::Matmult => "matmult",
            Engine::Auto => "auto",
        })
    }
}

/// Size caps, work budget and parallelism for the exact engines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_vertices_1page: usize,
    pub max_vertices_2page: usize,
    pub max_edges_2page: usize,
    pub max_vertices_matmult: usize,
    /// Edge cap for the 2-page matmult engine, which loops over `2^(m-1)`
    /// page assignments.
    pub max_edges_matmult_2page: usize,
    /// Abort with [`Error::BudgetExceeded`] after this many configurations.
    pub budget: Option<u64>,
    /// Worker threads; 0 uses all available cores.
    pub threads: usize,
    /// Branch-and-bound pruning in the 2-page engine. Disabling it falls
    /// back to flat enumeration of every page assignment.
    pub prune: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_vertices_1page: 13,
            max_vertices_2page: 12,
            max_edges_2page: 20,
            max_vertices_matmult: 9,
            max_edges_matmult_2page: 12,
            budget: None,
            threads: 0,
            prune: true,
        }
    }
}

impl SearchConfig {
    pub(crate) fn worker_count(&self) -> usize {
        match self.threads {
            0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
            t => t,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub style: Style,
    pub objective: Objective,
    pub value: u64,
    /// Canonical optimal layout of the queried graph.
    pub layout: BookEmbedding,
    /// Configurations visited (orders, plus page-assignment nodes for 2-page).
    pub explored: u64,
    pub wall_time: Duration,
    /// Per-block breakdown; empty for single-engine calls.
    pub blocks: Vec<BlockSummary>,
}

/// Runs one engine directly on `g`, without kernelization.
pub fn solve_graph(
    g: &Graph,
    style: Style,
    objective: Objective,
    engine: Engine,
    cfg: &SearchConfig,
) -> Result<SearchResult> {
    match (engine, style) {
        (Engine::Sjt | Engine::Auto, Style::OnePage) => solve_1page_sjt(g, objective, cfg),
        (Engine::Enumeration | Engine::Auto, Style::TwoPage) => solve_2page(g, objective, cfg),
        (Engine::Matmult, _) => {
            if objective != Objective::Crossings {
                return Err(Error::invalid(
                    "the matmult engine only minimizes crossings, not crossed edges",
                ));
            }
            match style {
                Style::OnePage => crate::matmult::solve_1page_matmult(g, cfg),
                Style::TwoPage => crate::matmult::solve_2page_matmult(g, cfg),
            }
        }
        (Engine::Sjt, Style::TwoPage) => Err(Error::invalid(
            "the sjt engine searches 1-page layouts; use enumeration for 2-page",
        )),
        (Engine::Enumeration, Style::OnePage) => Err(Error::invalid(
            "the enumeration engine searches 2-page layouts; use sjt for 1-page",
        )),
    }
}

/// State shared by the workers of one engine run.
pub(crate) struct Shared {
    budget: Option<u64>,
    explored: AtomicU64,
    abort: AtomicBool,
    zero_item: AtomicUsize,
    /// Best value found by any worker (an upper bound on the optimum).
    pub best: AtomicU64,
}

impl Shared {
    pub fn new(budget: Option<u64>, seed: u64) -> Self {
        Shared {
            budget,
            explored: AtomicU64::new(0),
            abort: AtomicBool::new(false),
            zero_item: AtomicUsize::new(usize::MAX),
            best: AtomicU64::new(seed),
        }
    }

    pub fn explored(&self) -> u64 {
        self.explored.load(Relaxed)
    }

    /// Records a zero-value layout in `item`; later items cannot beat it.
    pub fn found_zero(&self, item: usize) {
        self.zero_item.fetch_min(item, Relaxed);
    }

    pub fn should_skip(&self, item: usize) -> bool {
        self.zero_item.load(Relaxed) < item
    }

    pub fn counter(&self, item: usize) -> Counter<'_> {
        Counter {
            shared: self,
            pending: 0,
            item,
        }
    }
}

/// Per-worker batched view of the shared work counter.
pub(crate) struct Counter<'a> {
    shared: &'a Shared,
    pending: u64,
    item: usize,
}

impl Counter<'_> {
    const BATCH: u64 = 4096;

    /// Counts `k` configurations. `Ok(false)` means the item is moot.
    #[inline]
    pub fn tick(&mut self, k: u64) -> Result<bool> {
        self.pending += k;
        if self.pending >= Self::BATCH {
            self.flush()
        } else {
            Ok(true)
        }
    }

    pub fn flush(&mut self) -> Result<bool> {
        let s = self.shared;
        let total = s.explored.fetch_add(self.pending, Relaxed) + self.pending;
        self.pending = 0;
        if let Some(budget) = s.budget {
            if total > budget || s.abort.load(Relaxed) {
                s.abort.store(true, Relaxed);
                return Err(Error::BudgetExceeded { budget });
            }
        }
        Ok(!s.should_skip(self.item))
    }
}

/// Runs `f` on items `0..items` across `threads` workers. Results are
/// returned by item index; the first error wins.
pub(crate) fn run_items<T, F>(items: usize, threads: usize, f: F) -> Result<Vec<Option<T>>>
where
    T: Send,
    F: Fn(usize) -> Result<Option<T>> + Sync,
{
    let threads = threads.clamp(1, items.max(1));
    let mut out: Vec<Option<T>> = (0..items).map(|_| None).collect();
    if threads == 1 {
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = f(i)?;
        }
        return Ok(out);
    }
    let next = AtomicUsize::new(0);
    let per_worker: Vec<Result<Vec<(usize, T)>>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|_| {
                s.spawn(|| {
                    let mut mine = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Relaxed);
                        if i >= items {
                            return Ok(mine);
                        }
                        if let Some(r) = f(i)? {
                            mine.push((i, r));
                        }
                    }
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .collect()
    });
    for r in per_worker {
        for (i, t) in r? {
            out[i] = Some(t);
        }
    }
    Ok(out)
}

/// Smallest value, ties to the lowest item index.
pub(crate) fn merge_best<T>(results: Vec<Option<(u64, T)>>) -> Option<(u64, T)> {
    let mut best: Option<(u64, T)> = None;
    for (v, t) in results.into_iter().flatten() {
        if best.as_ref().is_none_or(|b| v < b.0) {
            best = Some((v, t));
        }
    }
    best
}

pub(crate) fn too_large(g: &Graph, cap: String) -> Error {
    Error::TooLarge {
        what: "graph".into(),
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        cap,
    }
}
