//! Constructors for the counterexample family and for test corpora.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Vertex};

/// Vertex numbering of the gadget graphs: `A = 0`, `B = 1`, then per copy
/// `s`, `t` and the connectors `x_1..x_c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GadgetSpec {
    pub connectors: usize,
}

impl Default for GadgetSpec {
    fn default() -> Self {
        GadgetSpec { connectors: 7 }
    }
}

impl GadgetSpec {
    pub const A: Vertex = 0;
    pub const B: Vertex = 1;

    fn base(&self, copy: usize) -> Vertex {
        2 + copy * (2 + self.connectors)
    }

    pub fn s(&self, copy: usize) -> Vertex {
        self.base(copy)
    }

    pub fn t(&self, copy: usize) -> Vertex {
        self.base(copy) + 1
    }

    /// Connector `j` (1-based) of `copy` (0-based).
    pub fn x(&self, copy: usize, j: usize) -> Vertex {
        assert!((1..=self.connectors).contains(&j));
        self.base(copy) + 1 + j
    }

    pub fn vertex_count(&self, copies: usize) -> usize {
        2 + copies * (2 + self.connectors)
    }

    pub fn edge_count(&self, copies: usize) -> usize {
        copies * (5 + 2 * self.connectors)
    }
}

/// `k` gadgets with `c` connectors each, sharing `A` and `B`.
pub fn counterexample_gc(k: usize, c: usize) -> Graph {
    assert!(k >= 1 && c >= 1, "need at least one copy and one connector");
    let spec = GadgetSpec { connectors: c };
    let (a, b) = (GadgetSpec::A, GadgetSpec::B);
    let mut edges = Vec::with_capacity(spec.edge_count(k));
    let mut labels = vec!["A".to_string(), "B".to_string()];
    for i in 0..k {
        let (s, t) = (spec.s(i), spec.t(i));
        edges.extend([(s, t), (a, s), (a, t), (b, s), (b, t)]);
        labels.push(format!("s{}", i + 1));
        labels.push(format!("t{}", i + 1));
        for j in 1..=c {
            let x = spec.x(i, j);
            edges.extend([(s, x), (t, x)]);
            labels.push(format!("x{}_{}", i + 1, j));
        }
    }
    Graph::from_edge_list(spec.vertex_count(k), edges)
        .and_then(|g| g.with_labels(labels))
        .expect("gadget edges are distinct")
}

/// A single gadget with `c` connectors.
pub fn gadget_h(c: usize) -> Graph {
    counterexample_gc(1, c)
}

/// The Goldner–Harary graph: the triangular bipyramid on `0,1,2` with
/// apexes `3,4`, plus one vertex stacked into each of its six faces.
pub fn goldner_harary() -> Graph {
    let mut edges = vec![(0, 1), (0, 2), (1, 2)];
    for apex in [3, 4] {
        edges.extend([(apex, 0), (apex, 1), (apex, 2)]);
    }
    let faces = [(0, 1, 3), (1, 2, 3), (2, 0, 3), (0, 1, 4), (1, 2, 4), (2, 0, 4)];
    for (i, &(a, b, c)) in faces.iter().enumerate() {
        let v = 5 + i;
        edges.extend([(v, a), (v, b), (v, c)]);
    }
    Graph::from_edge_list(11, edges).expect("distinct edges")
}

/// A maximal planar graph on `n >= 3` vertices, deterministic per seed.
///
/// Vertices are inserted into uniformly chosen faces, then a round of
/// random edge flips mixes the degree sequence.
pub fn random_triangulation(n: usize, seed: u64) -> Graph {
    assert!(n >= 3, "triangulations need three vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // counterclockwise triangles; the outer face is a triangle too
    let mut tris: Vec<[Vertex; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    for v in 3..n {
        let i = rng.gen_range(0..tris.len());
        let [a, b, c] = tris[i];
        tris[i] = [a, b, v];
        tris.push([b, c, v]);
        tris.push([c, a, v]);
    }

    // directed edge -> triangle on its left
    let mut left: HashMap<(Vertex, Vertex), usize> = HashMap::new();
    for (i, t) in tris.iter().enumerate() {
        for k in 0..3 {
            left.insert((t[k], t[(k + 1) % 3]), i);
        }
    }
    let mut order: Vec<usize> = (0..tris.len()).collect();
    for _ in 0..2 {
        order.shuffle(&mut rng);
        for &i in &order {
            let k = rng.gen_range(0..3);
            let [a, b, c] = [tris[i][k], tris[i][(k + 1) % 3], tris[i][(k + 2) % 3]];
            let j = left[&(b, a)];
            let d = *tris[j].iter().find(|&&x| x != a && x != b).unwrap();
            if d == c || left.contains_key(&(c, d)) {
                continue;
            }
            // (a,b,c) + (b,a,d) -> (a,d,c) + (d,b,c)
            for t in [tris[i], tris[j]] {
                for k in 0..3 {
                    left.remove(&(t[k], t[(k + 1) % 3]));
                }
            }
            tris[i] = [a, d, c];
            tris[j] = [d, b, c];
            for idx in [i, j] {
                let t = tris[idx];
                for k in 0..3 {
                    left.insert((t[k], t[(k + 1) % 3]), idx);
                }
            }
        }
    }

    let edges = left.keys().filter(|(u, v)| u < v).copied().collect::<Vec<_>>();
    Graph::from_edge_list(n, edges).expect("flips keep the graph simple")
}

/// Replaces every edge `e` (by id) with a path through the new vertex
/// `n + e`.
pub fn subdivide_all_edges(g: &Graph) -> Graph {
    let n = g.vertex_count();
    let edges = g
        .edges()
        .iter()
        .enumerate()
        .flat_map(|(i, e)| [(e.lo(), n + i), (n + i, e.hi())]);
    Graph::from_edge_list(n + g.edge_count(), edges).expect("subdivision of a simple graph")
}
