//! Fixed inputs shared by the criterion benches.

use mixlay_core::generators::{counterexample_gc, random_triangulation};
use mixlay_core::{Graph, MixedLayout};

pub fn complete(n: usize) -> Graph {
    Graph::from_edge_list(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("simple")
}

/// Triangulations of growing size with fixed seeds.
pub fn triangulations(sizes: &[usize]) -> Vec<Graph> {
    sizes.iter().map(|&n| random_triangulation(n, n as u64)).collect()
}

/// A triangulation and the concentric layout of its subdivision, for
/// verifier benches on valid input.
pub fn concentric_fixture(n: usize) -> (Graph, MixedLayout) {
    let g = random_triangulation(n, 7);
    let out = mixlay_core::concentric::concentric_layout(&g, 0).expect("triangulations are planar");
    (out.subdivided.graph, out.layout)
}

/// Gc with few copies: small enough to solve inside a bench loop.
pub fn small_gc(copies: usize) -> Graph {
    counterexample_gc(copies, 7)
}
