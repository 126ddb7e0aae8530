use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{solve_graph, Engine, Objective, SearchConfig, SearchResult, Style};
use crate::embedding::{canonicalize, BookEmbedding};
use crate::error::{Error, Result};
use crate::graph::{biconnected_components, BlockCutForest, Graph, VertexId};
use crate::kernel::{kernel_for, lift_layout};

/// What happened to one biconnected block during [`solve`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSummary {
    pub vertices: usize,
    pub edges: usize,
    /// Cyclomatic number of the block.
    pub k: usize,
    pub ell: usize,
    pub kernel_vertices: usize,
    pub kernel_edges: usize,
    pub value: u64,
    pub explored: u64,
}

/// Exact optimum of `g` for the given style and objective.
///
/// Every biconnected block is kernelized and solved on its own; block optima
/// add up because blocks glued at cut vertices can always be nested without
/// crossing each other. Bridges are laid out directly.
pub fn solve(
    g: &Graph,
    style: Style,
    objective: Objective,
    engine: Engine,
    cfg: &SearchConfig,
) -> Result<SearchResult> {
    if engine == Engine::Matmult && objective != Objective::Crossings {
        return Err(Error::invalid(
            "the matmult engine only minimizes crossings, not crossed edges",
        ));
    }
    let start = Instant::now();
    let forest = biconnected_components(g);
    let mut layouts = Vec::with_capacity(forest.len());
    let mut blocks = Vec::new();
    let mut value = 0;
    let mut explored = 0u64;
    let mut cfg = cfg.clone();
    for i in 0..forest.len() {
        if forest.blocks[i].len() == 1 {
            layouts.push(BookEmbedding::new(vec![0, 1], vec![0]));
            continue;
        }
        let sub = forest.block_subgraph(g, i);
        let kernel = kernel_for(&sub.graph, style, objective);
        let r = solve_graph(&kernel.graph, style, objective, engine, &cfg).map_err(|e| match e {
            Error::TooLarge {
                vertices, edges, cap, ..
            } => Error::TooLarge {
                what: format!("block {i} kernel"),
                vertices,
                edges,
                cap,
            },
            other => other,
        })?;
        layouts.push(lift_layout(&kernel, &r.layout)?);
        value += r.value;
        explored += r.explored;
        if let Some(b) = cfg.budget.as_mut() {
            *b = b.saturating_sub(r.explored);
        }
        blocks.push(BlockSummary {
            vertices: sub.graph.vertex_count(),
            edges: sub.graph.edge_count(),
            k: kernel.source_k,
            ell: kernel.ell,
            kernel_vertices: kernel.graph.vertex_count(),
            kernel_edges: kernel.graph.edge_count(),
            value: r.value,
            explored: r.explored,
        });
    }
    let layout = canonicalize(&compose_components(g, &forest, &layouts)?);
    Ok(SearchResult {
        style,
        objective,
        value,
        layout,
        explored,
        wall_time: start.elapsed(),
        blocks,
    })
}

/// Glues per-block layouts into one layout of `g`.
///
/// `per_block[i]` lays out block `i` in its local ids (local vertex `j` is
/// `forest.block_vertices[i][j]`, local edge `j` is `forest.blocks[i][j]`).
/// Blocks are visited depth-first along the block-cut tree; each child block
/// is rotated to start at its cut vertex and spliced in right after it, so
/// it occupies an interval that only the cut vertex shares with the rest.
/// Vertices in no block (isolated ones) follow their component.
pub fn compose_components(g: &Graph, forest: &BlockCutForest, per_block: &[BookEmbedding]) -> Result<BookEmbedding> {
    if per_block.len() != forest.len() {
        return Err(Error::invalid(format!(
            "{} block layouts for {} blocks",
            per_block.len(),
            forest.len()
        )));
    }
    let n = g.vertex_count();
    let mut page = vec![0u8; g.edge_count()];
    // Block orders in global ids.
    let mut orders: Vec<Vec<VertexId>> = Vec::with_capacity(forest.len());
    for (i, emb) in per_block.iter().enumerate() {
        let verts = &forest.block_vertices[i];
        if emb.order.len() != verts.len() || emb.page.len() != forest.blocks[i].len() {
            return Err(Error::invalid(format!("layout of block {i} does not match the block")));
        }
        for (j, &e) in forest.blocks[i].iter().enumerate() {
            page[e] = emb.page[j];
        }
        orders.push(emb.order.iter().map(|&j| verts[j]).collect());
    }

    let mut placed = vec![false; n];
    let mut block_done = vec![false; forest.len()];
    let mut order = Vec::with_capacity(n);
    for v in 0..n {
        if placed[v] {
            continue;
        }
        let Some(&root) = forest.vertex_blocks[v].first() else {
            placed[v] = true;
            order.push(v);
            continue;
        };
        // (block order rotated to its entry vertex, next index)
        let mut stack: Vec<(Vec<VertexId>, usize)> = Vec::new();
        block_done[root] = true;
        stack.push((rotate_to(&orders[root], v), 0));
        while let Some((seq, idx)) = stack.last_mut() {
            if *idx == seq.len() {
                stack.pop();
                continue;
            }
            let w = seq[*idx];
            *idx += 1;
            if !placed[w] {
                placed[w] = true;
                order.push(w);
            }
            // Children are pushed in reverse so they unfold in block order.
            let children: Vec<usize> = forest.vertex_blocks[w].iter().copied().filter(|&b| !block_done[b]).collect();
            for &b in &children {
                block_done[b] = true;
            }
            for &b in children.iter().rev() {
                let rotated = rotate_to(&orders[b], w);
                stack.push((rotated[1..].to_vec(), 0));
            }
        }
    }
    let emb = BookEmbedding::new(order, page);
    emb.validate(g)?;
    Ok(emb)
}

fn rotate_to(order: &[VertexId], v: VertexId) -> Vec<VertexId> {
    let i = order.iter().position(|&x| x == v).expect("entry vertex lies in the block");
    order[i..].iter().chain(&order[..i]).copied().collect()
}
