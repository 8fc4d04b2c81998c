//! Combinatorial embeddings (rotation systems) and planarity testing.
//!
//! Faces are traced with the rule: after the dart `u -> v`, continue with
//! `v -> w` where `w` follows `u` in the rotation of `v`.
//!
//! [`planar_embed`] uses path addition (Demoucron, Malgrange and Pertuiset)
//! on every biconnected block and glues the block rotations at cut
//! vertices. It is quadratic, which is plenty for the graph sizes this
//! crate decides layouts for.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};

/// A directed copy of an edge, `(tail, head)`.
pub type Dart = (Vertex, Vertex);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("rotation system has {got} vertices, graph has {expected}")]
    VertexCount { expected: usize, got: usize },
    #[error("rotation at vertex {0} does not list its incident edges exactly once")]
    RotationMismatch(Vertex),
    #[error("dart {0:?} is not an edge of the graph")]
    UnknownDart(Dart),
    #[error("vertex {0} does not lie on any face")]
    NotOnFace(Vertex),
}

/// Returned by [`planar_embed`] for non-planar input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("graph is not planar")]
pub struct NotPlanar;

/// Cyclic order of neighbors around every vertex plus a designated outer face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    rot: Vec<Vec<Vertex>>,
    /// Per vertex: (neighbor, position in `rot`), sorted by neighbor.
    index: Vec<Vec<(Vertex, usize)>>,
    outer: Option<Dart>,
}

impl RotationSystem {
    pub fn new(g: &Graph, rot: Vec<Vec<Vertex>>) -> Result<Self, EmbeddingError> {
        if rot.len() != g.vertex_count() {
            return Err(EmbeddingError::VertexCount {
                expected: g.vertex_count(),
                got: rot.len(),
            });
        }
        let mut index = Vec::with_capacity(rot.len());
        for (v, r) in rot.iter().enumerate() {
            let mut idx: Vec<(Vertex, usize)> = r.iter().enumerate().map(|(i, &w)| (w, i)).collect();
            idx.sort_unstable();
            let sorted: Vec<Vertex> = idx.iter().map(|p| p.0).collect();
            if sorted != g.neighbors(v) {
                return Err(EmbeddingError::RotationMismatch(v));
            }
            index.push(idx);
        }
        let outer = rot.iter().enumerate().find(|(_, r)| !r.is_empty()).map(|(v, r)| (v, r[0]));
        Ok(RotationSystem { rot, index, outer })
    }

    pub fn vertex_count(&self) -> usize {
        self.rot.len()
    }

    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        &self.rot[v]
    }

    pub fn rotations(&self) -> &[Vec<Vertex>] {
        &self.rot
    }

    /// Position of `w` in the rotation of `v`.
    pub fn position(&self, v: Vertex, w: Vertex) -> Option<usize> {
        let idx = &self.index[v];
        idx.binary_search_by_key(&w, |p| p.0).ok().map(|i| idx[i].1)
    }

    /// Neighbor following `u` around `v`.
    pub fn succ(&self, v: Vertex, u: Vertex) -> Vertex {
        let i = self.position(v, u).expect("dart of the embedded graph");
        self.rot[v][(i + 1) % self.rot[v].len()]
    }

    pub fn next_dart(&self, (u, v): Dart) -> Dart {
        (v, self.succ(v, u))
    }

    fn darts(&self) -> impl Iterator<Item = Dart> + '_ {
        self.rot
            .iter()
            .enumerate()
            .flat_map(|(v, r)| r.iter().map(move |&w| (v, w)))
    }

    pub fn face_of(&self, start: Dart) -> Vec<Dart> {
        let mut face = vec![start];
        let mut d = self.next_dart(start);
        while d != start {
            face.push(d);
            d = self.next_dart(d);
        }
        face
    }

    /// All faces in a deterministic order (by first dart in vertex/rotation order).
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let mut seen: Vec<Vec<bool>> = self.rot.iter().map(|r| vec![false; r.len()]).collect();
        let mut faces = Vec::new();
        for d in self.darts().collect::<Vec<_>>() {
            let i = self.position(d.0, d.1).unwrap();
            if seen[d.0][i] {
                continue;
            }
            let face = self.face_of(d);
            for &(a, b) in &face {
                let j = self.position(a, b).unwrap();
                seen[a][j] = true;
            }
            faces.push(face);
        }
        faces
    }

    pub fn face_count(&self) -> usize {
        self.faces().len()
    }

    /// Checks `V - E + F = 2` on every component that has an edge.
    pub fn satisfies_euler(&self, g: &Graph) -> bool {
        let comps = g.components();
        let mut comp_of = vec![0; g.vertex_count()];
        for (c, comp) in comps.iter().enumerate() {
            for &v in comp {
                comp_of[v] = c;
            }
        }
        let mut face_counts = vec![0i64; comps.len()];
        for face in self.faces() {
            face_counts[comp_of[face[0].0]] += 1;
        }
        let mut edge_counts = vec![0i64; comps.len()];
        for e in g.edges() {
            edge_counts[comp_of[e.lo()]] += 1;
        }
        comps.iter().enumerate().all(|(c, comp)| {
            edge_counts[c] == 0 || comp.len() as i64 - edge_counts[c] + face_counts[c] == 2
        })
    }

    /// Dart identifying the outer face, `None` for edgeless graphs.
    pub fn outer_dart(&self) -> Option<Dart> {
        self.outer
    }

    pub fn outer_face(&self) -> Vec<Dart> {
        self.outer.map(|d| self.face_of(d)).unwrap_or_default()
    }

    /// True if `v` is isolated or has a corner on the outer face.
    pub fn on_outer_face(&self, v: Vertex) -> bool {
        self.rot[v].is_empty() || self.outer_face().iter().any(|d| d.0 == v)
    }

    /// Re-designates the outer face as the first face that contains `v`.
    pub fn with_outer_vertex(mut self, v: Vertex) -> Result<Self, EmbeddingError> {
        if self.rot[v].is_empty() {
            return Ok(self);
        }
        let face = self
            .faces()
            .into_iter()
            .find(|f| f.iter().any(|d| d.0 == v))
            .ok_or(EmbeddingError::NotOnFace(v))?;
        self.outer = face.iter().copied().find(|d| d.0 == v);
        Ok(self)
    }

    /// Designates the face containing `dart` as the outer face.
    pub fn with_outer_dart(mut self, dart: Dart) -> Result<Self, EmbeddingError> {
        if dart.0 >= self.rot.len() || self.position(dart.0, dart.1).is_none() {
            return Err(EmbeddingError::UnknownDart(dart));
        }
        self.outer = Some(dart);
        Ok(self)
    }
}

/// Embeds `g` in the plane or reports that it is not planar.
pub fn planar_embed(g: &Graph) -> Result<RotationSystem, NotPlanar> {
    let n = g.vertex_count();
    let mut rot: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for block in biconnected_blocks(g) {
        for (v, r) in embed_block(&block)? {
            rot[v].extend(r);
        }
    }
    let rs = RotationSystem::new(g, rot).expect("block rotations cover every edge");
    assert!(rs.satisfies_euler(g), "path addition produced a non-planar rotation system");
    Ok(rs)
}

/// [`planar_embed`] with the outer face chosen to contain `v`.
pub fn planar_embed_with_outer(g: &Graph, v: Vertex) -> Result<RotationSystem, NotPlanar> {
    let rs = planar_embed(g)?;
    Ok(rs.with_outer_vertex(v).expect("every non-isolated vertex lies on a face"))
}

/// Edge sets of the biconnected blocks (bridges are single-edge blocks).
fn biconnected_blocks(g: &Graph) -> Vec<Vec<Edge>> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut edge_stack: Vec<Edge> = Vec::new();
    let mut blocks = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX || g.degree(root) == 0 {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent, next neighbor index)
        let mut stack: Vec<(Vertex, Option<Vertex>, usize)> = vec![(root, None, 0)];
        while let Some(&mut (v, parent, ref mut next)) = stack.last_mut() {
            if let Some(&w) = g.neighbors(v).get(*next) {
                *next += 1;
                if Some(w) == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push(Edge::new(v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, Some(v), 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(Edge::new(v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(p) = parent {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let target = Edge::new(p, v);
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == target {
                                break;
                            }
                        }
                        block.sort_unstable();
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

enum Fragment {
    /// A single unembedded edge between embedded vertices (local edge id).
    Chord(usize),
    /// A component of unembedded vertices with its attachment vertices.
    Component { id: usize, contacts: Vec<usize> },
}

/// Path addition on one biconnected block; returns global rotations.
fn embed_block(block: &[Edge]) -> Result<Vec<(Vertex, Vec<Vertex>)>, NotPlanar> {
    if block.len() == 1 {
        let e = block[0];
        return Ok(vec![(e.lo(), vec![e.hi()]), (e.hi(), vec![e.lo()])]);
    }
    let mut verts: Vec<Vertex> = block.iter().flat_map(|e| e.endpoints()).collect();
    verts.sort_unstable();
    verts.dedup();
    let nb = verts.len();
    let m = block.len();
    if nb >= 3 && m > 3 * nb - 6 {
        return Err(NotPlanar);
    }
    let local = |v: Vertex| verts.binary_search(&v).unwrap();
    let ends: Vec<(usize, usize)> = block.iter().map(|e| (local(e.lo()), local(e.hi()))).collect();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nb];
    for (id, &(a, b)) in ends.iter().enumerate() {
        adj[a].push((b, id));
        adj[b].push((a, id));
    }

    let mut emb_v = vec![false; nb];
    let mut emb_e = vec![false; m];
    let mut embedded_edges = 0;

    // Initial cycle through edge 0.
    let (a, b) = ends[0];
    let mut prev = vec![usize::MAX; nb];
    prev[b] = b;
    let mut queue = VecDeque::from([b]);
    'bfs: while let Some(v) = queue.pop_front() {
        for &(w, id) in &adj[v] {
            if id == 0 || prev[w] != usize::MAX {
                continue;
            }
            prev[w] = v;
            if w == a {
                break 'bfs;
            }
            queue.push_back(w);
        }
    }
    let mut cycle = vec![a];
    let mut v = prev[a];
    while v != b {
        cycle.push(v);
        v = prev[v];
    }
    cycle.push(b);
    for i in 0..cycle.len() {
        let (x, y) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        emb_v[x] = true;
        let id = adj[x].iter().find(|p| p.0 == y).unwrap().1;
        if !emb_e[id] {
            emb_e[id] = true;
            embedded_edges += 1;
        }
    }
    let mut reversed = cycle.clone();
    reversed.reverse();
    let mut faces: Vec<Vec<usize>> = vec![cycle, reversed];

    while embedded_edges < m {
        // Components of unembedded vertices.
        let mut comp = vec![usize::MAX; nb];
        let mut comp_count = 0;
        for s in 0..nb {
            if emb_v[s] || comp[s] != usize::MAX {
                continue;
            }
            comp[s] = comp_count;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for &(y, _) in &adj[x] {
                    if !emb_v[y] && comp[y] == usize::MAX {
                        comp[y] = comp_count;
                        q.push_back(y);
                    }
                }
            }
            comp_count += 1;
        }
        let mut fragments: Vec<(Fragment, Vec<usize>)> = Vec::new();
        for (id, &(x, y)) in ends.iter().enumerate() {
            if !emb_e[id] && emb_v[x] && emb_v[y] {
                fragments.push((Fragment::Chord(id), vec![x, y]));
            }
        }
        let mut contacts: Vec<Vec<usize>> = vec![Vec::new(); comp_count];
        for x in 0..nb {
            if emb_v[x] {
                continue;
            }
            for &(y, _) in &adj[x] {
                if emb_v[y] {
                    contacts[comp[x]].push(y);
                }
            }
        }
        for (id, mut c) in contacts.into_iter().enumerate() {
            c.sort_unstable();
            c.dedup();
            fragments.push((
                Fragment::Component {
                    id,
                    contacts: c.clone(),
                },
                c,
            ));
        }

        let mut faces_of_vertex: Vec<Vec<usize>> = vec![Vec::new(); nb];
        let mut sorted_faces: Vec<Vec<usize>> = Vec::with_capacity(faces.len());
        for (fi, f) in faces.iter().enumerate() {
            for &x in f {
                faces_of_vertex[x].push(fi);
            }
            let mut s = f.clone();
            s.sort_unstable();
            sorted_faces.push(s);
        }
        let admissible = |cs: &[usize]| -> Vec<usize> {
            faces_of_vertex[cs[0]]
                .iter()
                .copied()
                .filter(|&fi| cs.iter().all(|c| sorted_faces[fi].binary_search(c).is_ok()))
                .collect()
        };

        let mut choice: Option<(usize, usize)> = None;
        for (i, (_, cs)) in fragments.iter().enumerate() {
            let adm = admissible(cs);
            match adm.len() {
                0 => return Err(NotPlanar),
                1 => {
                    choice = Some((i, adm[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((i, adm[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("unembedded edges leave at least one fragment");

        let path: Vec<usize> = match &fragments[fi].0 {
            Fragment::Chord(id) => {
                emb_e[*id] = true;
                embedded_edges += 1;
                vec![ends[*id].0, ends[*id].1]
            }
            Fragment::Component { id, contacts } => {
                let c1 = contacts[0];
                let (x, _) = *adj[c1]
                    .iter()
                    .find(|&&(y, _)| !emb_v[y] && comp[y] == *id)
                    .unwrap();
                let mut prev = vec![usize::MAX; nb];
                prev[x] = x;
                let mut q = VecDeque::from([x]);
                let mut end = None;
                'search: while let Some(y) = q.pop_front() {
                    for &(z, _) in &adj[y] {
                        if emb_v[z] {
                            if z != c1 {
                                end = Some((y, z));
                                break 'search;
                            }
                        } else if prev[z] == usize::MAX {
                            prev[z] = y;
                            q.push_back(z);
                        }
                    }
                }
                let (y, c2) = end.expect("blocks attach every fragment at two vertices");
                let mut inner = vec![y];
                let mut t = y;
                while t != x {
                    t = prev[t];
                    inner.push(t);
                }
                inner.reverse();
                let mut path = vec![c1];
                path.extend(inner);
                path.push(c2);
                for w in path.windows(2) {
                    let id = adj[w[0]].iter().find(|p| p.0 == w[1]).unwrap().1;
                    emb_e[id] = true;
                    embedded_edges += 1;
                }
                for &p in &path[1..path.len() - 1] {
                    emb_v[p] = true;
                }
                path
            }
        };

        let face = std::mem::take(&mut faces[face_idx]);
        let (c1, c2) = (path[0], *path.last().unwrap());
        let len = face.len();
        let i = face.iter().position(|&x| x == c1).unwrap();
        let j = face.iter().position(|&x| x == c2).unwrap();
        let interior = &path[1..path.len() - 1];
        let mut first = Vec::new();
        let mut t = i;
        loop {
            first.push(face[t]);
            if t == j {
                break;
            }
            t = (t + 1) % len;
        }
        first.extend(interior.iter().rev());
        let mut second = Vec::new();
        let mut t = j;
        loop {
            second.push(face[t]);
            if t == i {
                break;
            }
            t = (t + 1) % len;
        }
        second.extend(interior.iter());
        faces[face_idx] = first;
        faces.push(second);
    }

    // succ[b][a] = c for every a -> b -> c along a face.
    let mut succ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nb];
    for f in &faces {
        let l = f.len();
        for t in 0..l {
            succ[f[(t + 1) % l]].push((f[t], f[(t + 2) % l]));
        }
    }
    let mut out = Vec::with_capacity(nb);
    for (b, s) in succ.iter_mut().enumerate() {
        s.sort_unstable();
        let start = s[0].0;
        let mut r = vec![verts[start]];
        let mut cur = start;
        loop {
            let next = s[s.binary_search_by_key(&cur, |p| p.0).unwrap()].1;
            if next == start {
                break;
            }
            r.push(verts[next]);
            cur = next;
        }
        assert_eq!(r.len(), adj[b].len(), "face boundaries give a single rotation cycle");
        out.push((verts[b], r));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edge_list(n, pairs).unwrap()
    }

    #[test]
    fn k4_has_four_faces() {
        let g = complete(4);
        let rs = planar_embed(&g).unwrap();
        assert!(rs.satisfies_euler(&g));
        assert_eq!(rs.face_count(), 4);
    }

    #[test]
    fn kuratowski_graphs_rejected() {
        assert_eq!(planar_embed(&complete(5)), Err(NotPlanar));
        let k33 = Graph::from_edge_list(6, (0..3).flat_map(|u| (3..6).map(move |v| (u, v)))).unwrap();
        assert_eq!(planar_embed(&k33), Err(NotPlanar));
    }

    #[test]
    fn petersen_is_not_planar() {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let g = Graph::from_edge_list(10, outer.chain(spokes).chain(inner)).unwrap();
        assert_eq!(planar_embed(&g), Err(NotPlanar));
    }

    #[test]
    fn trees_and_cut_vertices() {
        // two triangles sharing vertex 2, plus a pendant path and an isolated vertex
        let g = Graph::from_edge_list(8, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5), (5, 6)])
            .unwrap();
        let rs = planar_embed(&g).unwrap();
        assert!(rs.satisfies_euler(&g));
        assert_eq!(rs.face_count(), 3);
        assert!(rs.on_outer_face(7));
    }

    #[test]
    fn outer_face_can_be_chosen() {
        let g = complete(4);
        for v in 0..4 {
            let rs = planar_embed_with_outer(&g, v).unwrap();
            assert!(rs.on_outer_face(v));
        }
    }

    #[test]
    fn rotation_must_match_graph() {
        let g = complete(3);
        let bad = RotationSystem::new(&g, vec![vec![1], vec![0, 2], vec![0, 1]]);
        assert_eq!(bad, Err(EmbeddingError::RotationMismatch(0)));
    }
}
