//! The subdivision layout on random plane graphs.

use mixlay_core::concentric::{build_concentric, concentric_layout, mixed_layout_from_concentric, validate_representation};
use mixlay_core::generators::{counterexample_gc, gadget_h, random_triangulation};
use mixlay_core::{planar_embed_with_outer, verify_mixed, Graph, PageKind};
use proptest::prelude::*;

fn check(g: &Graph, origin: usize) {
    let rot = planar_embed_with_outer(g, origin).unwrap();
    let rep = build_concentric(g, origin, &rot).unwrap();
    let report = validate_representation(g, &rep);
    assert!(report.valid, "{:?}", report.issues);
    let (sub, layout) = mixed_layout_from_concentric(g, &rep).unwrap();
    assert!(verify_mixed(&sub.graph, &layout).unwrap().is_valid());
    assert_eq!(layout.pages.count(PageKind::Stack), 1);
    assert_eq!(layout.pages.count(PageKind::Queue), 1);
    assert_eq!(sub.division.len(), rep.long_edges.len());
    assert!(sub.division.len() <= g.edge_count());
    assert_eq!(sub.graph.vertex_count(), g.vertex_count() + sub.division.len());
    assert_eq!(sub.graph.edge_count(), g.edge_count() + sub.division.len());
    // stack edges stay on one level, queue edges join consecutive levels
    let mut level = vec![0usize; sub.graph.vertex_count()];
    level[..g.vertex_count()].copy_from_slice(&rep.layering.dist);
    for le in &rep.long_edges {
        level[sub.division_vertex(le.edge).unwrap()] = rep.layering.dist[le.far];
    }
    for (e, p) in layout.pages.iter() {
        let gap = level[e.lo()].abs_diff(level[e.hi()]);
        match layout.pages.kind(p) {
            PageKind::Stack => assert_eq!(gap, 0, "{e}"),
            PageKind::Queue => assert_eq!(gap, 1, "{e}"),
        }
    }
}

#[test]
fn gadgets_from_a() {
    let h = gadget_h(7);
    check(&h, 0);
    let rep = build_concentric(&h, 0, &planar_embed_with_outer(&h, 0).unwrap()).unwrap();
    assert!(rep.layering.max_level() <= 2);
    check(&counterexample_gc(19, 7), 0);
    check(&counterexample_gc(19, 7), 100);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn triangulations(n in 3usize..50, seed in any::<u64>(), origin in any::<prop::sample::Index>()) {
        let g = random_triangulation(n, seed);
        check(&g, origin.index(n));
    }

    #[test]
    fn random_trees(n in 1usize..60, parents in proptest::collection::vec(any::<prop::sample::Index>(), 60)) {
        let edges: Vec<(usize, usize)> = (1..n).map(|v| (parents[v].index(v), v)).collect();
        let t = Graph::from_edge_list(n, edges).unwrap();
        let out = concentric_layout(&t, 0).unwrap();
        assert!(out.subdivided.division.is_empty());
        assert!(out.layout.pages.edges_on(0).is_empty());
        assert!(verify_mixed(&out.subdivided.graph, &out.layout).unwrap().is_valid());
    }

    #[test]
    fn sparse_planar_graphs(n in 3usize..40, seed in any::<u64>(), keep in proptest::collection::vec(any::<bool>(), 120)) {
        // random spanning subgraphs of triangulations, possibly disconnected
        let t = random_triangulation(n, seed);
        let edges = t.edges().iter().zip(&keep).filter(|(_, k)| **k).map(|(e, _)| (e.lo(), e.hi()));
        let g = Graph::from_edge_list(n, edges).unwrap();
        let out = concentric_layout(&g, 0).unwrap();
        assert!(verify_mixed(&out.subdivided.graph, &out.layout).unwrap().is_valid());
        assert!(out.subdivided.division.len() <= g.edge_count());
    }
}
