mod support;

use mixlay_core::embedding::RotationSystem;
use mixlay_core::formats::{parse_planar_code, read_graphs};
use mixlay_core::planar_embed;
use support::enumerate::{canonical_code, maximal_planar, planar_code_corpus, to_graph};

#[test]
fn enumerator_counts() {
    // isomorphism classes of triangulations (OEIS A000109)
    let expected = [1, 1, 2, 5, 14, 50, 233];
    for (n, &count) in (4..).zip(&expected) {
        let all = maximal_planar(n);
        assert_eq!(all.len(), count, "n = {n}");
        for rot in &all {
            let g = to_graph(rot);
            assert_eq!(g.edge_count(), 3 * n - 6);
            let rs = RotationSystem::new(&g, rot.clone()).unwrap();
            assert!(rs.satisfies_euler(&g));
            assert!(planar_embed(&g).is_ok());
        }
    }
}

#[test]
fn canonical_code_ignores_labels_and_mirroring() {
    for rot in maximal_planar(8) {
        let n = rot.len();
        // relabel v -> n-1-v and mirror every rotation
        let image: Vec<Vec<usize>> = (0..n)
            .map(|v| rot[n - 1 - v].iter().rev().map(|&w| n - 1 - w).collect())
            .collect();
        assert_eq!(canonical_code(&rot), canonical_code(&image));
    }
}

#[test]
fn corpus_round_trips_through_planar_code() {
    let bytes = planar_code_corpus(7);
    let plane = parse_planar_code(&bytes).unwrap();
    assert_eq!(plane.len(), 5);
    assert_eq!(read_graphs(&bytes).unwrap().len(), 5);
    for p in plane {
        assert!(p.rotation.satisfies_euler(&p.graph));
    }
}
