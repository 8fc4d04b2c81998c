//! Breadth-first layering from an origin vertex.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, GraphError, Vertex};

/// Distance levels of a connected graph around `origin`.
///
/// Level `i` holds exactly the vertices at graph distance `i`, sorted by id.
/// `parent` records the BFS tree (the first discoverer of every vertex).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BfsLayering {
    pub origin: Vertex,
    pub dist: Vec<usize>,
    pub levels: Vec<Vec<Vertex>>,
    pub parent: Vec<Option<Vertex>>,
}

impl BfsLayering {
    pub fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level_of(&self, v: Vertex) -> usize {
        self.dist[v]
    }

    pub fn is_tree_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.parent[u] == Some(v) || self.parent[v] == Some(u)
    }
}

/// BFS distances of every vertex reachable from `origin` (`None` otherwise).
pub fn distances(g: &Graph, origin: Vertex) -> (Vec<Option<usize>>, Vec<Option<Vertex>>) {
    let mut dist = vec![None; g.vertex_count()];
    let mut parent = vec![None; g.vertex_count()];
    dist[origin] = Some(0);
    let mut queue = VecDeque::from([origin]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap();
        for &w in g.neighbors(v) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                parent[w] = Some(v);
                queue.push_back(w);
            }
        }
    }
    (dist, parent)
}

pub fn bfs_levels(g: &Graph, origin: Vertex) -> Result<BfsLayering, GraphError> {
    if origin >= g.vertex_count() {
        return Err(GraphError::VertexOutOfRange {
            vertex: origin,
            n: g.vertex_count(),
        });
    }
    let (dist, parent) = distances(g, origin);
    let dist: Vec<usize> = dist
        .into_iter()
        .collect::<Option<_>>()
        .ok_or(GraphError::Disconnected)?;
    let k = dist.iter().copied().max().unwrap_or(0);
    let mut levels = vec![Vec::new(); k + 1];
    for (v, &d) in dist.iter().enumerate() {
        levels[d].push(v);
    }
    Ok(BfsLayering {
        origin,
        dist,
        levels,
        parent,
    })
}
