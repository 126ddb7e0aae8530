//! Exact book crossing minimization for almost-trees.
//!
//! A graph whose biconnected components each have small cyclomatic number
//! (a *k-almost-tree*) can be shrunk to a kernel whose size depends only on
//! `k`: peel to the 2-core, then shorten every maximal path of degree-two
//! vertices to an objective-specific bound. The exponential engines only ever
//! see those kernels, and optimal kernel layouts are lifted back to layouts of
//! the input with identical crossing structure.
//!
//! Four objectives are supported: the 1-page and 2-page crossing numbers and
//! the 1-page and 2-page minimum number of crossed edges.
//!
//! ```
//! use bookcross::{Graph, solve, Style, Objective, Engine, SearchConfig};
//!
//! let k5 = Graph::complete(5);
//! let one = solve(&k5, Style::OnePage, Objective::Crossings, Engine::Auto, &SearchConfig::default()).unwrap();
//! let two = solve(&k5, Style::TwoPage, Objective::Crossings, Engine::Auto, &SearchConfig::default()).unwrap();
//! assert_eq!((one.value, two.value), (5, 1));
//! ```

pub mod embedding;
pub mod error;
pub mod graph;
pub mod kernel;
pub mod matmult;
pub mod reduce;
pub mod search;

pub use embedding::{
    baseline_2page, canonicalize, count, edges_cross, swap_adjacent_update, BookEmbedding,
    CrossingReport, LayoutJson,
};
pub use error::{Error, Result};
pub use graph::{
    almost_tree_parameter, biconnected_components, cyclomatic_number, stats, two_core,
    BlockCutForest, Graph, GraphStats, PrunedTree, Subgraph, TwoCore,
};
pub use kernel::{
    kernel_1page, kernel_2page_crossed, kernel_2page_crossings, lift_layout,
    kernel_for, maximal_degree_two_paths, shorten_paths, DegreeTwoPath, Kernel, PathRecord,
};
pub use reduce::{
    classify_pair, reduce_exhaustively, reduce_m_rainbow, reduce_s_spiral, PairType, Reduced,
};
pub use search::{
    compose_components, solve, solve_graph, solve_1page_sjt, solve_2page, BlockSummary, Engine,
    Objective, SearchConfig, SearchResult, Style,
};
