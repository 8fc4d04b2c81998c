//! All maximal planar graphs on `n` vertices, up to isomorphism.
//!
//! Triangulations with the same vertex count are connected by edge flips,
//! so a search over the flip graph from any one of them reaches all of
//! them. Isomorphism classes are told apart by a canonical code: the
//! breadth-first numbering from every directed edge in both orientations,
//! keeping the lexicographically smallest. Since triangulations are
//! 3-connected their embedding is unique up to mirroring, so the code
//! identifies the graph.

use std::collections::{HashSet, VecDeque};

use mixlay_core::embedding::RotationSystem;
use mixlay_core::formats::write_planar_code;
use mixlay_core::Graph;

/// Rotation of every vertex; consecutive neighbors span a face.
pub type Rotations = Vec<Vec<usize>>;

fn stacked(n: usize) -> Rotations {
    // K4 drawn with 0, 1, 2 outside and 3 inside (counterclockwise
    // rotations); vertex v >= 4 goes into the face (0, v-1, 1)
    let mut rot: Rotations = vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![2, 0, 1]];
    for v in 4..n {
        let (a, b, c) = (0, v - 1, 1);
        insert_between(&mut rot[a], b, c, v);
        insert_between(&mut rot[b], c, a, v);
        insert_between(&mut rot[c], a, b, v);
        rot.push(vec![b, a, c]);
    }
    rot
}

/// Inserts `x` between the cyclically adjacent entries `a` and `b`.
fn insert_between(r: &mut Vec<usize>, a: usize, b: usize, x: usize) {
    let k = r.len();
    let i = (0..k)
        .find(|&i| {
            let (p, q) = (r[i], r[(i + 1) % k]);
            (p == a && q == b) || (p == b && q == a)
        })
        .expect("neighbors of a face corner are adjacent in the rotation");
    r.insert(i + 1, x);
}

fn step(r: &[usize], x: usize, by: isize) -> usize {
    let k = r.len() as isize;
    let i = r.iter().position(|&y| y == x).unwrap() as isize;
    r[(i + by).rem_euclid(k) as usize]
}

/// Flips edge `a-b` if the result is still simple.
fn flip(rot: &Rotations, a: usize, b: usize) -> Option<Rotations> {
    if rot[a].len() < 4 || rot[b].len() < 4 {
        return None;
    }
    let (c, d) = (step(&rot[a], b, 1), step(&rot[a], b, -1));
    if rot[c].contains(&d) {
        return None;
    }
    let mut next = rot.clone();
    next[a].retain(|&x| x != b);
    next[b].retain(|&x| x != a);
    insert_between(&mut next[c], a, b, d);
    insert_between(&mut next[d], a, b, c);
    Some(next)
}

fn code_from(rot: &Rotations, root: usize, first: usize, dir: isize) -> Vec<u8> {
    let n = rot.len();
    let mut num = vec![0u8; n];
    let mut reference = vec![usize::MAX; n];
    let mut queue = VecDeque::from([root]);
    num[root] = 1;
    reference[root] = first;
    let mut next = 2;
    let mut code = Vec::with_capacity(n + 6 * n);
    while let Some(x) = queue.pop_front() {
        let r = &rot[x];
        let start = r.iter().position(|&y| y == reference[x]).unwrap() as isize;
        for k in 0..r.len() as isize {
            let y = r[(start + dir * k).rem_euclid(r.len() as isize) as usize];
            if num[y] == 0 {
                num[y] = next;
                next += 1;
                reference[y] = x;
                queue.push_back(y);
            }
            code.push(num[y]);
        }
        code.push(0);
    }
    code
}

pub fn canonical_code(rot: &Rotations) -> Vec<u8> {
    let mut best: Option<Vec<u8>> = None;
    for v in 0..rot.len() {
        for &w in &rot[v] {
            for dir in [1, -1] {
                let c = code_from(rot, v, w, dir);
                if best.as_ref().is_none_or(|b| c < *b) {
                    best = Some(c);
                }
            }
        }
    }
    best.unwrap()
}

/// One representative rotation system per isomorphism class, in discovery
/// order (deterministic).
pub fn maximal_planar(n: usize) -> Vec<Rotations> {
    assert!(n >= 4);
    let start = stacked(n);
    let mut seen = HashSet::from([canonical_code(&start)]);
    let mut out = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(rot) = queue.pop_front() {
        for a in 0..n {
            for &b in &rot[a] {
                if a > b {
                    continue;
                }
                if let Some(next) = flip(&rot, a, b) {
                    if seen.insert(canonical_code(&next)) {
                        out.push(next.clone());
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    out
}

pub fn to_graph(rot: &Rotations) -> Graph {
    let edges = rot
        .iter()
        .enumerate()
        .flat_map(|(u, r)| r.iter().filter(move |&&v| u < v).map(move |&v| (u, v)));
    Graph::from_edge_list(rot.len(), edges).unwrap()
}

/// The whole class for `n` as a planar_code file.
pub fn planar_code_corpus(n: usize) -> Vec<u8> {
    let plane: Vec<(Graph, RotationSystem)> = maximal_planar(n)
        .into_iter()
        .map(|rot| {
            let g = to_graph(&rot);
            let rs = RotationSystem::new(&g, rot).unwrap();
            (g, rs)
        })
        .collect();
    write_planar_code(plane.iter().map(|(g, r)| (g, r)))
}
