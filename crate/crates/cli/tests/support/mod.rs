//! Shared helpers for the cli test targets.
#![allow(dead_code)]

pub mod enumerate;

use mixlay_core::{Graph, Vertex};
use rand::Rng;

/// G(n, p) with `p` itself drawn per graph, so densities vary.
pub fn random_graph(rng: &mut impl Rng, max_n: usize) -> Graph {
    let n = rng.gen_range(1..=max_n);
    let p: f64 = rng.gen_range(0.1..0.95);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, edges).unwrap()
}

/// Naive pair scan: every unordered pair of edges on a page, with the
/// relation read straight off the positions. Returns the offending pairs as
/// `(page, [lo, hi] of e, [lo, hi] of f)` with `e < f`.
pub fn naive_violations(order: &[Vertex], pages: &[(bool, Vec<[usize; 2]>)]) -> Vec<(usize, [usize; 2], [usize; 2])> {
    let mut pos = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let span = |[u, v]: [usize; 2]| (pos[u].min(pos[v]), pos[u].max(pos[v]));
    let mut out = Vec::new();
    for (p, (is_stack, edges)) in pages.iter().enumerate() {
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let ((a, b), (c, d)) = (span(edges[i]), span(edges[j]));
                let cross = (a < c && c < b && b < d) || (c < a && a < d && d < b);
                let nest = (a < c && d < b) || (c < a && b < d);
                if (*is_stack && cross) || (!*is_stack && nest) {
                    let (e, f) = (edges[i].min(edges[j]), edges[i].max(edges[j]));
                    out.push((p, e, f));
                }
            }
        }
    }
    out.sort();
    out
}
