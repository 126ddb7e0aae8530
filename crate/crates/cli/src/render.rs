//! Sunburst drawing: the 2-core sits on an inner circle in layout order with
//! page-0 edges as chords and page-1 edges as arcs outside the circle; trees
//! hang off it on concentric rings.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::fmt::Write as _;

use bookcross::{count, two_core, BookEmbedding, Graph, PrunedTree, Result};

const RING: f64 = 36.0;
const MARGIN: f64 = 24.0;
const DOT: f64 = 4.0;

struct Point {
    x: f64,
    y: f64,
}

fn polar(r: f64, angle: f64) -> Point {
    Point {
        x: r * angle.cos(),
        y: r * angle.sin(),
    }
}

/// Leaves below each non-root vertex of `t` (a leaf counts itself), and
/// below the root if it has children.
fn leaf_counts(t: &PrunedTree) -> HashMap<usize, usize> {
    let mut acc = HashMap::new();
    // Reverse preorder visits children before their parents.
    for &(child, parent, _) in t.links.iter().rev() {
        let c = *acc.entry(child).or_insert(1);
        *acc.entry(parent).or_insert(0) += c;
    }
    acc
}

/// Places `t` below its root, which owns the angular interval `[lo, hi)`
/// and sits at ring `base`. Children split the interval by leaf count.
fn place_tree(
    t: &PrunedTree,
    lo: f64,
    hi: f64,
    base: f64,
    pos: &mut [Option<Point>],
    max_depth: &mut usize,
) {
    let leaves = leaf_counts(t);
    let mut children: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(child, parent, _) in &t.links {
        children.entry(parent).or_default().push(child);
    }
    // (vertex, interval, depth)
    let mut stack = vec![(t.root, lo, hi, 0usize)];
    while let Some((v, lo, hi, depth)) = stack.pop() {
        *max_depth = (*max_depth).max(depth);
        if depth > 0 || pos[v].is_none() {
            pos[v] = Some(polar(base + depth as f64 * RING, (lo + hi) / 2.0));
        }
        let Some(kids) = children.get(&v) else { continue };
        let total: usize = kids.iter().map(|k| leaves[k]).sum();
        let mut at = lo;
        for &k in kids {
            let width = (hi - lo) * leaves[&k] as f64 / total as f64;
            stack.push((k, at, at + width, depth + 1));
            at += width;
        }
    }
}

/// SVG 1.1 sunburst of `emb`. The recounted crossing number is embedded as
/// a `<!-- crossings: N -->` comment.
pub fn sunburst(g: &Graph, emb: &BookEmbedding) -> Result<String> {
    emb.validate(g)?;
    let report = count(g, emb)?;
    let peel = two_core(g);
    let n = g.vertex_count();

    // Circle members: core vertices and floating-tree roots, in layout order.
    let mut tree_at: Vec<Option<&PrunedTree>> = vec![None; n];
    for t in peel.attached.iter().chain(&peel.floating) {
        tree_at[t.root] = Some(t);
    }
    let on_circle: Vec<usize> = emb
        .order
        .iter()
        .copied()
        .filter(|&v| peel.in_core[v] || peel.floating.iter().any(|t| t.root == v))
        .collect();
    let weight = |v: usize| tree_at[v].map_or(1, |t| leaf_counts(t).get(&t.root).copied().unwrap_or(1).max(1));
    let total: usize = on_circle.iter().map(|&v| weight(v)).sum();

    let centered = on_circle.len() == 1 && !peel.in_core[on_circle[0]];
    let radius = if centered { 0.0 } else { (60.0 + 6.0 * on_circle.len() as f64).max(RING * 2.0) };
    let mut pos: Vec<Option<Point>> = (0..n).map(|_| None).collect();
    let mut max_depth = 0;
    let mut at = -TAU / 4.0;
    for &v in &on_circle {
        let width = TAU * weight(v) as f64 / total as f64;
        pos[v] = Some(polar(radius, at + width / 2.0));
        if let Some(t) = tree_at[v] {
            place_tree(t, at, at + width, radius, &mut pos, &mut max_depth);
        }
        at += width;
    }

    let two_page = !emb.is_one_page();
    let arc_room = if two_page { radius * 0.6 } else { 0.0 };
    let extent = radius + arc_room.max(max_depth as f64 * RING) + MARGIN;
    let size = 2.0 * extent;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size:.0}" height="{size:.0}" viewBox="{:.2} {:.2} {size:.2} {size:.2}">"#,
        -extent, -extent
    );
    let _ = writeln!(s, "<!-- crossings: {} -->", report.crossings);
    let _ = writeln!(s, "<!-- crossed-edges: {} -->", report.crossed_count());
    if !centered && !on_circle.is_empty() {
        let _ = writeln!(
            s,
            r##"<circle cx="0" cy="0" r="{radius:.2}" fill="none" stroke="#dddddd"/>"##
        );
    }
    let p = |v: usize| pos[v].as_ref().expect("every vertex is placed");
    for (e, &[u, v]) in g.edges().iter().enumerate() {
        let (a, b) = (p(u), p(v));
        let core_edge = peel.in_core[u] && peel.in_core[v];
        if !core_edge {
            let _ = writeln!(
                s,
                r##"<line class="tree" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#888888"/>"##,
                a.x, a.y, b.x, b.y
            );
        } else if emb.page[e] == 0 {
            let _ = writeln!(
                s,
                r##"<line class="chord" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#1f5fa8"/>"##,
                a.x, a.y, b.x, b.y
            );
        } else {
            // Quadratic arc bulging outward through the midpoint direction.
            let (mx, my) = ((a.x + b.x) / 2.0, (a.y + b.y) / 2.0);
            let len = (mx * mx + my * my).sqrt();
            let (ux, uy) = if len < 1e-9 {
                let d = ((b.y - a.y), -(b.x - a.x));
                let l = (d.0 * d.0 + d.1 * d.1).sqrt();
                (d.0 / l, d.1 / l)
            } else {
                (mx / len, my / len)
            };
            let reach = radius + arc_room * (1.0 - len / radius).clamp(0.2, 1.0);
            let (cx, cy) = (ux * reach * 2.0 - mx, uy * reach * 2.0 - my);
            let _ = writeln!(
                s,
                r##"<path class="arc" d="M {:.2} {:.2} Q {cx:.2} {cy:.2} {:.2} {:.2}" fill="none" stroke="#c23b22" stroke-dasharray="6 3"/>"##,
                a.x, a.y, b.x, b.y
            );
        }
    }
    for v in 0..n {
        let q = p(v);
        let _ = writeln!(
            s,
            r##"<circle cx="{:.2}" cy="{:.2}" r="{DOT}" fill="{}"><title>{}</title></circle>"##,
            q.x,
            q.y,
            if peel.in_core[v] { "#222222" } else { "#777777" },
            g.label(v)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}
