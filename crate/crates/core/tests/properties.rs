mod common;

use bookcross::matmult::{solve_1page_matmult, solve_2page_matmult};
use bookcross::{
    baseline_2page, biconnected_components, canonicalize, count, kernel_for, lift_layout, reduce_exhaustively, solve,
    solve_1page_sjt, solve_2page, stats, swap_adjacent_update, BookEmbedding, Engine, Graph, Objective,
    SearchConfig, Style,
};
use common::{naive_optima, objective_value, random_almost_tree, random_connected, rng};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn small_graph(seed: u64, max_n: usize) -> Graph {
    let mut r = rng(seed);
    let n = r.gen_range(2..=max_n);
    let extra = r.gen_range(0..=n + 2);
    random_connected(&mut r, n, extra)
}

fn random_layout(seed: u64, g: &Graph) -> BookEmbedding {
    let mut r = rng(seed ^ 0x5eed);
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.shuffle(&mut r);
    let page = (0..g.edge_count()).map(|_| r.gen_range(0..2)).collect();
    BookEmbedding::new(order, page)
}

fn cfg(threads: usize) -> SearchConfig {
    SearchConfig {
        threads,
        ..SearchConfig::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pipeline_matches_brute_force(seed in any::<u64>()) {
        let g = small_graph(seed, 7);
        let o = naive_optima(&g, true);
        let c = cfg(0);
        let want = [o.crossings_1p, o.crossed_1p, o.crossings_2p, o.crossed_2p];
        let runs = [
            (Style::OnePage, Objective::Crossings),
            (Style::OnePage, Objective::CrossedEdges),
            (Style::TwoPage, Objective::Crossings),
            (Style::TwoPage, Objective::CrossedEdges),
        ];
        for ((style, objective), want) in runs.into_iter().zip(want) {
            let r = solve(&g, style, objective, Engine::Auto, &c).unwrap();
            prop_assert_eq!(r.value, want, "{} {}", style, objective);
            prop_assert_eq!(objective_value(&g, &r.layout, objective), want);
        }
    }

    #[test]
    fn objectives_are_ordered(seed in any::<u64>()) {
        let g = small_graph(seed, 7);
        let o = naive_optima(&g, true);
        prop_assert!(o.crossings_2p <= o.crossings_1p);
        prop_assert!(o.crossed_2p <= o.crossed_1p);
        prop_assert!(o.crossed_1p <= 2 * o.crossings_1p);
        prop_assert_eq!(o.crossings_1p == 0, o.crossed_1p == 0);
        prop_assert_eq!(o.crossings_2p == 0, o.crossed_2p == 0);
    }

    #[test]
    fn pruning_never_changes_the_optimum(seed in any::<u64>()) {
        let g = small_graph(seed, 7);
        for objective in [Objective::Crossings, Objective::CrossedEdges] {
            let pruned = solve_2page(&g, objective, &cfg(1)).unwrap();
            let flat = solve_2page(&g, objective, &SearchConfig { prune: false, ..cfg(1) }).unwrap();
            prop_assert_eq!(pruned.value, flat.value);
        }
    }

    #[test]
    fn engines_agree(seed in any::<u64>()) {
        let g = small_graph(seed, 8);
        let sjt = solve_1page_sjt(&g, Objective::Crossings, &cfg(0)).unwrap();
        let mm = solve_1page_matmult(&g, &cfg(0)).unwrap();
        prop_assert_eq!(sjt.value, mm.value);
        prop_assert_eq!(objective_value(&g, &mm.layout, Objective::Crossings), mm.value);
        if g.edge_count() <= 12 {
            let en = solve_2page(&g, Objective::Crossings, &cfg(0)).unwrap();
            let mm = solve_2page_matmult(&g, &cfg(0)).unwrap();
            prop_assert_eq!(en.value, mm.value);
            prop_assert_eq!(objective_value(&g, &mm.layout, Objective::Crossings), mm.value);
        }
    }

    #[test]
    fn results_do_not_depend_on_thread_count(seed in any::<u64>()) {
        let g = small_graph(seed, 8);
        for style in [Style::OnePage, Style::TwoPage] {
            let a = solve(&g, style, Objective::Crossings, Engine::Auto, &cfg(1)).unwrap();
            let b = solve(&g, style, Objective::Crossings, Engine::Auto, &cfg(3)).unwrap();
            prop_assert_eq!(a.value, b.value);
            prop_assert_eq!(a.layout, b.layout);
        }
    }

    #[test]
    fn swaps_match_recount(seed in any::<u64>(), steps in prop::collection::vec(0usize..64, 1..40)) {
        let g = small_graph(seed, 9);
        let n = g.vertex_count();
        let mut emb = random_layout(seed, &g);
        let mut rep = count(&g, &emb).unwrap();
        for s in steps {
            let p = s % (n - 1);
            let (next, next_rep) = swap_adjacent_update(&g, &emb, &rep, p).unwrap();
            prop_assert_eq!(&next_rep, &count(&g, &next).unwrap());
            emb = next;
            rep = next_rep;
        }
    }

    #[test]
    fn canonical_form_keeps_counts(seed in any::<u64>()) {
        let g = small_graph(seed, 10);
        let emb = random_layout(seed, &g);
        let canon = canonicalize(&emb);
        let (a, b) = (count(&g, &emb).unwrap(), count(&g, &canon).unwrap());
        prop_assert_eq!((a.crossings, a.per_edge), (b.crossings, b.per_edge));
        prop_assert_eq!(canonicalize(&canon), canon);
    }

    #[test]
    fn baseline_meets_cyclomatic_bound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..60);
        let extra = r.gen_range(0..12);
        let g = random_connected(&mut r, n, extra);
        let k = stats(&g).a as u64;
        let rep = count(&g, &baseline_2page(&g)).unwrap();
        prop_assert!(rep.crossed_count() <= k);
        prop_assert!(rep.crossings <= k * k.saturating_sub(1) / 2);
    }

    #[test]
    fn kernels_replay_and_lift(seed in any::<u64>(), k in 1usize..5, n in 5usize..120) {
        let mut r = rng(seed);
        let g = random_almost_tree(&mut r, k, n);
        let forest = biconnected_components(&g);
        for b in (0..forest.len()).filter(|&b| forest.blocks[b].len() > 1) {
            let sub = forest.block_subgraph(&g, b).graph;
            for (style, objective) in [
                (Style::OnePage, Objective::Crossings),
                (Style::TwoPage, Objective::Crossings),
                (Style::TwoPage, Objective::CrossedEdges),
            ] {
                let kernel = kernel_for(&sub, style, objective);
                prop_assert!(kernel.within_bound());
                prop_assert!(kernel.graph.min_degree() >= 2);
                let back = kernel.reconstruct();
                let unordered = |g: &Graph| g.edges().iter().map(|&[u, v]| (u.min(v), u.max(v))).collect::<Vec<_>>();
                prop_assert_eq!(unordered(&back), unordered(&sub));
                let emb = random_layout(seed ^ b as u64, &kernel.graph);
                let lifted = lift_layout(&kernel, &emb).unwrap();
                prop_assert_eq!(
                    count(&kernel.graph, &emb).unwrap().crossings,
                    count(&sub, &lifted).unwrap().crossings
                );
                prop_assert_eq!(
                    count(&kernel.graph, &emb).unwrap().crossed_count(),
                    count(&sub, &lifted).unwrap().crossed_count()
                );
            }
        }
    }

    #[test]
    fn exhaustive_reduction_keeps_counts(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = r.gen_range(1..=3);
        let n = r.gen_range(6..40);
        let g = random_almost_tree(&mut r, k, n);
        let emb = baseline_2page(&g);
        let before = count(&g, &emb).unwrap();
        let red = reduce_exhaustively(&g, &emb).unwrap();
        let after = count(&red.graph, &red.layout).unwrap();
        prop_assert_eq!(before.crossings, after.crossings);
        prop_assert_eq!(before.crossed_count(), after.crossed_count());
        prop_assert!(red.graph.vertex_count() <= g.vertex_count());
        prop_assert_eq!(red.vertex_origin.len(), red.graph.vertex_count());
    }
}
