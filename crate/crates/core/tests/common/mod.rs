//! Test-only helpers: a brute-force reference solver that shares no code
//! with the library engines, and seeded random graph generators.
#![allow(dead_code)]

use bookcross::Graph;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Optima of all four objectives, found by trying everything.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Optima {
    pub crossings_1p: u64,
    pub crossed_1p: u64,
    pub crossings_2p: u64,
    pub crossed_2p: u64,
}

fn chord_pairs_cross(pos: &[usize], e: [usize; 2], f: [usize; 2]) -> bool {
    if e[0] == f[0] || e[0] == f[1] || e[1] == f[0] || e[1] == f[1] {
        return false;
    }
    let (lo, hi) = (pos[e[0]].min(pos[e[1]]), pos[e[0]].max(pos[e[1]]));
    let inside = |p: usize| lo < p && p < hi;
    inside(pos[f[0]]) != inside(pos[f[1]])
}

/// Lexicographic next permutation; false after the last one.
fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Every circular order (vertex 0 first) times every page assignment with
/// edge 0 on page 0. `two_page = false` skips the assignments.
pub fn naive_optima(g: &Graph, two_page: bool) -> Optima {
    let n = g.vertex_count();
    let m = g.edge_count();
    assert!(m <= 63, "oracle uses 64-bit edge masks");
    let edges = g.edges();
    let mut best = Optima {
        crossings_1p: u64::MAX,
        crossed_1p: u64::MAX,
        crossings_2p: u64::MAX,
        crossed_2p: u64::MAX,
    };
    if n == 0 {
        return Optima {
            crossings_1p: 0,
            crossed_1p: 0,
            crossings_2p: 0,
            crossed_2p: 0,
        };
    }
    let mut rest: Vec<usize> = (1..n).collect();
    let mut pos = vec![0usize; n];
    let mut conf = vec![0u64; m];
    loop {
        pos[0] = 0;
        for (i, &v) in rest.iter().enumerate() {
            pos[v] = i + 1;
        }
        for e in 0..m {
            conf[e] = 0;
            for f in 0..m {
                if e != f && chord_pairs_cross(&pos, edges[e], edges[f]) {
                    conf[e] |= 1 << f;
                }
            }
        }
        let mut x = 0;
        let mut crossed = 0;
        for &c in &conf {
            x += c.count_ones() as u64;
            crossed += (c != 0) as u64;
        }
        best.crossings_1p = best.crossings_1p.min(x / 2);
        best.crossed_1p = best.crossed_1p.min(crossed);

        if two_page {
            let all = if m == 0 { 0 } else { (1u64 << m) - 1 };
            let half = if m == 0 { 1 } else { 1u64 << (m - 1) };
            for bits in 0..half {
                let on1 = bits << 1;
                let on0 = all & !on1;
                let mut x = 0;
                let mut crossed = 0;
                for (e, &c) in conf.iter().enumerate() {
                    let same = if on1 >> e & 1 == 1 { c & on1 } else { c & on0 };
                    x += same.count_ones() as u64;
                    crossed += (same != 0) as u64;
                }
                best.crossings_2p = best.crossings_2p.min(x / 2);
                best.crossed_2p = best.crossed_2p.min(crossed);
            }
        }
        if !next_permutation(&mut rest) {
            break;
        }
    }
    best
}

fn shuffled_ids(rng: &mut TestRng, n: usize) -> Vec<usize> {
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(rng);
    ids
}

/// Random simple connected graph: a random spanning tree plus up to `extra`
/// further distinct edges.
pub fn random_connected(rng: &mut TestRng, n: usize, extra: usize) -> Graph {
    let ids = shuffled_ids(rng, n);
    let mut g = Graph::new(n);
    let mut have = std::collections::HashSet::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let (u, v) = (ids[i], ids[j]);
        g.add_edge(u, v);
        have.insert((u.min(v), u.max(v)));
    }
    let max_edges = n * n.saturating_sub(1) / 2;
    let mut added = 0;
    let mut tries = 0;
    while added < extra && have.len() < max_edges && tries < 1000 + 50 * extra {
        tries += 1;
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && have.insert((u.min(v), u.max(v))) {
            g.add_edge(u, v);
            added += 1;
        }
    }
    g
}

/// Random connected simple graph with exactly `n` vertices and `m` edges.
pub fn random_connected_exact(rng: &mut TestRng, n: usize, m: usize) -> Graph {
    let g = random_connected(rng, n, m + 1 - n);
    assert_eq!(g.edge_count(), m);
    g
}

/// Random multigraph: `m` uniformly random vertex pairs (self-loops are
/// dropped by the graph).
pub fn random_multigraph(rng: &mut TestRng, n: usize, m: usize) -> Graph {
    let mut g = Graph::new(n);
    for _ in 0..m {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        g.add_edge(u, v);
    }
    g
}

/// Random 2-connected graph with cyclomatic number `k` (a cycle plus `k - 1`
/// ears) on roughly `size` vertices, appended to `g`. Returns its vertices.
fn add_block(rng: &mut TestRng, g: &mut Graph, k: usize, size: usize) -> Vec<usize> {
    let cycle_len = rng.gen_range(3..=size.max(3));
    let first = g.vertex_count();
    for _ in 0..cycle_len {
        g.add_vertex(g.vertex_count() as i64);
    }
    let mut verts: Vec<usize> = (first..first + cycle_len).collect();
    for i in 0..cycle_len {
        g.add_edge(verts[i], verts[(i + 1) % cycle_len]);
    }
    for _ in 1..k {
        let u = verts[rng.gen_range(0..verts.len())];
        let mut v = verts[rng.gen_range(0..verts.len())];
        while v == u {
            v = verts[rng.gen_range(0..verts.len())];
        }
        let len = rng.gen_range(2..=size.max(2));
        let mut prev = u;
        for _ in 1..len {
            let w = g.add_vertex(g.vertex_count() as i64);
            g.add_edge(prev, w);
            verts.push(w);
            prev = w;
        }
        g.add_edge(prev, v);
    }
    verts
}

/// Random connected almost-tree: blocks of cyclomatic number at most `k`
/// (at least one block with exactly `k`) glued into a tree with pendant
/// trees, about `n` vertices total. Vertex ids are shuffled.
pub fn random_almost_tree(rng: &mut TestRng, k: usize, n: usize) -> Graph {
    let mut g = Graph::new(1);
    let mut all = vec![0usize];
    let mut first_block = true;
    while g.vertex_count() < n {
        let anchor = all[rng.gen_range(0..all.len())];
        if k > 0 && (first_block || rng.gen_bool(0.3)) {
            let kb = if first_block { k } else { rng.gen_range(1..=k) };
            first_block = false;
            let size = rng.gen_range(3..=((n - g.vertex_count()) / 4).clamp(3, 200));
            let verts = add_block(rng, &mut g, kb, size);
            // Glue the block to the existing graph at one vertex.
            g.add_edge(anchor, verts[0]);
            all.extend(verts);
        } else {
            let w = g.add_vertex(g.vertex_count() as i64);
            g.add_edge(anchor, w);
            all.push(w);
        }
    }
    relabel(rng, &g)
}

/// Same graph with vertex ids permuted at random.
pub fn relabel(rng: &mut TestRng, g: &Graph) -> Graph {
    let ids = shuffled_ids(rng, g.vertex_count());
    let mut h = Graph::new(g.vertex_count());
    for &[u, v] in g.edges() {
        h.add_edge(ids[u], ids[v]);
    }
    h
}

/// Value of `objective` for a recounted layout.
pub fn objective_value(g: &Graph, emb: &bookcross::BookEmbedding, objective: bookcross::Objective) -> u64 {
    let r = bookcross::count(g, emb).unwrap();
    match objective {
        bookcross::Objective::Crossings => r.crossings,
        bookcross::Objective::CrossedEdges => r.crossed_count(),
    }
}
