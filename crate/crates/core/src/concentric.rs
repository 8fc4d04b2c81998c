//! Ordered concentric representations and the 1-stack 1-queue layout of a
//! subdivision with at most one division vertex per edge.
//!
//! The construction is purely combinatorial. A BFS tree from the origin is
//! walked around its contour, following the rotation system, with one time
//! stamp per vertex entry and per non-tree dart. Each level's circle is
//! ordered by these stamps. Because the graph is plane, the non-tree edges
//! are pairwise non-crossing chords of the contour, and the subtree of every
//! vertex occupies a contiguous time interval; those two facts make both
//! pages below valid.
//!
//! * Tree edges are short and go to the queue.
//! * Non-tree edges inside a level are level edges and go to the stack.
//! * Non-tree edges between consecutive levels are long. Each one is split
//!   at a division vertex `y1` on the circle of its far endpoint: the piece
//!   from the near endpoint joins the queue, the piece on the circle joins
//!   the stack.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bfs::{bfs_levels, distances, BfsLayering};
use crate::embedding::{planar_embed_with_outer, RotationSystem};
use crate::graph::{Edge, Graph, GraphError, Vertex};
use crate::layout::{verify_mixed, MixedLayout, PageAssignment, VertexOrder};

#[derive(Debug, Error)]
pub enum ConcentricError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid embedding: {0}")]
    EmbeddingInvalid(String),
    #[error("graph is not planar")]
    NotPlanar,
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeClass {
    Level,
    Short,
    Long,
}

/// A point on a level circle: a vertex, or the first crossing of a long edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CircleItem {
    Vertex(Vertex),
    Crossing(Edge),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LongEdge {
    pub edge: Edge,
    /// Endpoint closer to the origin.
    pub near: Vertex,
    pub far: Vertex,
    /// Levels of the circles the routed curve meets, starting at `near`.
    pub crossings: Vec<usize>,
    /// Index of the division point within the circle of `far`.
    pub y1_position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcentricRepresentation {
    pub layering: BfsLayering,
    /// Per level, the cyclic order cut open into a sequence.
    pub circles: Vec<Vec<CircleItem>>,
    /// Every edge with its class, in edge order.
    pub classes: Vec<(Edge, EdgeClass)>,
    /// Long edges in edge order.
    pub long_edges: Vec<LongEdge>,
}

impl ConcentricRepresentation {
    /// Vertices of level `j` in circle order.
    pub fn level_order(&self, j: usize) -> Vec<Vertex> {
        self.circles[j]
            .iter()
            .filter_map(|it| match it {
                CircleItem::Vertex(v) => Some(*v),
                CircleItem::Crossing(_) => None,
            })
            .collect()
    }

    pub fn edges_of(&self, class: EdgeClass) -> Vec<Edge> {
        self.classes.iter().filter(|(_, c)| *c == class).map(|(e, _)| *e).collect()
    }

    pub fn class_of(&self, e: Edge) -> Option<EdgeClass> {
        self.classes
            .binary_search_by_key(&e, |(f, _)| *f)
            .ok()
            .map(|i| self.classes[i].1)
    }
}

fn crossing_sequence(near_level: usize, max_level: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (near_level..=max_level).collect();
    p.extend((near_level + 1..=max_level).rev());
    p
}

/// Builds the representation of a connected plane graph around `origin`.
/// If `origin` is not on the designated outer face, a face containing it is
/// used instead.
pub fn build_concentric(
    g: &Graph,
    origin: Vertex,
    rot: &RotationSystem,
) -> Result<ConcentricRepresentation, ConcentricError> {
    let n = g.vertex_count();
    if rot.vertex_count() != n {
        return Err(ConcentricError::EmbeddingInvalid(format!(
            "rotation system has {} vertices, graph has {n}",
            rot.vertex_count()
        )));
    }
    for v in 0..n {
        let mut r = rot.rotation(v).to_vec();
        r.sort_unstable();
        if r != g.neighbors(v) {
            return Err(ConcentricError::EmbeddingInvalid(format!("rotation at {v} does not match the graph")));
        }
    }
    if !rot.satisfies_euler(g) {
        return Err(ConcentricError::EmbeddingInvalid("rotation system is not planar".into()));
    }
    let layering = bfs_levels(g, origin)?;
    let parent = &layering.parent;
    let dist = &layering.dist;

    // start the contour walk at a corner of the origin on the outer face
    let rot = if rot.on_outer_face(origin) {
        rot.clone()
    } else {
        rot.clone()
            .with_outer_vertex(origin)
            .map_err(|e| ConcentricError::EmbeddingInvalid(e.to_string()))?
    };
    let start = rot
        .outer_face()
        .iter()
        .find(|d| d.0 == origin)
        .map(|d| d.1)
        .or_else(|| rot.rotation(origin).first().copied());

    let mut first = vec![usize::MAX; n];
    let mut dart_time: HashMap<(Vertex, Vertex), usize> = HashMap::new();
    let mut time = 0usize;
    first[origin] = time;
    time += 1;
    // (vertex, next rotation index, darts left)
    let mut stack: Vec<(Vertex, usize, usize)> = Vec::new();
    if let Some(w) = start {
        let pos = rot.position(origin, w).expect("dart at the origin");
        stack.push((origin, pos, rot.rotation(origin).len()));
    }
    while let Some(top) = stack.last_mut() {
        let (u, pos, left) = *top;
        if left == 0 {
            stack.pop();
            continue;
        }
        let r = rot.rotation(u);
        let w = r[pos];
        *top = (u, (pos + 1) % r.len(), left - 1);
        if parent[w] == Some(u) {
            first[w] = time;
            time += 1;
            let deg = rot.rotation(w).len();
            let back = rot.position(w, u).expect("tree edge in rotation");
            stack.push((w, (back + 1) % deg, deg - 1));
        } else if parent[u] != Some(w) {
            dart_time.insert((u, w), time);
            time += 1;
        }
    }
    debug_assert!(first.iter().all(|&t| t != usize::MAX));

    let k = layering.max_level();
    let mut classes = Vec::with_capacity(g.edge_count());
    let mut long_edges = Vec::new();
    let mut circle_keys: Vec<Vec<(usize, CircleItem)>> = layering
        .levels
        .iter()
        .map(|lvl| lvl.iter().map(|&v| (first[v], CircleItem::Vertex(v))).collect())
        .collect();
    for &e in g.edges() {
        let (a, b) = (e.lo(), e.hi());
        let class = if layering.is_tree_edge(a, b) {
            EdgeClass::Short
        } else if dist[a] == dist[b] {
            EdgeClass::Level
        } else {
            let (near, far) = if dist[a] < dist[b] { (a, b) } else { (b, a) };
            let i = dist[near];
            circle_keys[i + 1].push((dart_time[&(near, far)], CircleItem::Crossing(e)));
            long_edges.push(LongEdge {
                edge: e,
                near,
                far,
                crossings: crossing_sequence(i, k),
                y1_position: 0,
            });
            EdgeClass::Long
        };
        classes.push((e, class));
    }

    let circles: Vec<Vec<CircleItem>> = circle_keys
        .into_iter()
        .map(|mut c| {
            c.sort_unstable_by_key(|&(t, _)| t);
            c.into_iter().map(|(_, it)| it).collect()
        })
        .collect();
    for le in &mut long_edges {
        let circle = &circles[dist[le.far]];
        le.y1_position = circle
            .iter()
            .position(|it| *it == CircleItem::Crossing(le.edge))
            .expect("every long edge has a division point");
    }

    Ok(ConcentricRepresentation {
        layering,
        circles,
        classes,
        long_edges,
    })
}

/// A problem found by [`validate_representation`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum RepIssue {
    /// Levels or distances differ from a fresh BFS.
    Layering { detail: String },
    /// A circle's vertices are not exactly its level.
    LevelOrder { level: usize },
    /// An edge is missing, repeated or has a class its levels forbid.
    Class { edge: Edge, detail: String },
    /// Long-edge bookkeeping (endpoints, crossing sequence, division point).
    LongEdge { edge: Edge, detail: String },
    /// Two stack items on one circle cross.
    LevelCrossing { level: usize, e: Edge, f: Edge },
    /// Two queue items between circles `level` and `level + 1` cross.
    StripCrossing { level: usize, e: Edge, f: Edge },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationReport {
    pub valid: bool,
    pub issues: Vec<RepIssue>,
}

/// Checks a representation against `g` without trusting how it was built.
pub fn validate_representation(g: &Graph, rep: &ConcentricRepresentation) -> RepresentationReport {
    let mut issues = Vec::new();
    let report = |issues: Vec<RepIssue>| RepresentationReport {
        valid: issues.is_empty(),
        issues,
    };
    let n = g.vertex_count();
    let lay = &rep.layering;
    if lay.origin >= n || lay.dist.len() != n {
        issues.push(RepIssue::Layering {
            detail: "layering does not fit the graph".into(),
        });
        return report(issues);
    }
    let (dist, _) = distances(g, lay.origin);
    if dist.iter().zip(&lay.dist).any(|(d, &l)| *d != Some(l)) {
        issues.push(RepIssue::Layering {
            detail: "distances differ from BFS".into(),
        });
        return report(issues);
    }
    let k = lay.dist.iter().copied().max().unwrap_or(0);
    let mut expected_levels = vec![Vec::new(); k + 1];
    for v in 0..n {
        expected_levels[lay.dist[v]].push(v);
    }
    if lay.levels != expected_levels {
        issues.push(RepIssue::Layering {
            detail: "level sets differ from BFS".into(),
        });
    }
    if rep.circles.len() != k + 1 {
        issues.push(RepIssue::Layering {
            detail: format!("{} circles for {} levels", rep.circles.len(), k + 1),
        });
        return report(issues);
    }
    let d = &lay.dist;

    // circle contents
    for (j, level) in expected_levels.iter().enumerate() {
        let mut got = rep.level_order(j);
        got.sort_unstable();
        if &got != level {
            issues.push(RepIssue::LevelOrder { level: j });
        }
    }

    // classes
    let listed: Vec<Edge> = rep.classes.iter().map(|(e, _)| *e).collect();
    if listed != g.edges() {
        for &e in g.edges() {
            if rep.class_of(e).is_none() {
                issues.push(RepIssue::Class {
                    edge: e,
                    detail: "unclassified".into(),
                });
            }
        }
        for w in listed.windows(2).filter(|w| w[0] >= w[1]) {
            issues.push(RepIssue::Class {
                edge: w[1],
                detail: "listed out of order or twice".into(),
            });
        }
    }
    for &(e, class) in &rep.classes {
        if e.hi() >= n || !g.has_edge(e.lo(), e.hi()) {
            issues.push(RepIssue::Class {
                edge: e,
                detail: "not an edge of the graph".into(),
            });
            continue;
        }
        let gap = d[e.lo()].abs_diff(d[e.hi()]);
        let ok = match class {
            EdgeClass::Level => gap == 0,
            EdgeClass::Short | EdgeClass::Long => gap == 1,
        };
        if !ok {
            issues.push(RepIssue::Class {
                edge: e,
                detail: format!("{class:?} edge joins levels {} and {}", d[e.lo()], d[e.hi()]),
            });
        }
    }
    if !issues.is_empty() {
        return report(issues);
    }

    // long edges and division points
    let long: Vec<Edge> = rep.edges_of(EdgeClass::Long);
    let listed_long: Vec<Edge> = rep.long_edges.iter().map(|l| l.edge).collect();
    if long != listed_long {
        issues.push(RepIssue::LongEdge {
            edge: long.first().or(listed_long.first()).copied().unwrap_or(Edge::new(0, 1)),
            detail: "long-edge list differs from the long class".into(),
        });
        return report(issues);
    }
    let mut crossing_count: HashMap<Edge, usize> = HashMap::new();
    for circle in &rep.circles {
        for it in circle {
            if let CircleItem::Crossing(e) = it {
                *crossing_count.entry(*e).or_default() += 1;
            }
        }
    }
    for le in &rep.long_edges {
        let e = le.edge;
        let bad = |detail: &str| RepIssue::LongEdge {
            edge: e,
            detail: detail.into(),
        };
        if !e.touches(le.near) || e.other(le.near) != le.far || d[le.near] + 1 != d[le.far] {
            issues.push(bad("near/far endpoints wrong"));
            continue;
        }
        let i = d[le.near];
        let p = &le.crossings;
        let shape = p.len() >= 3
            && p[0] == i
            && p[1] == i + 1
            && p[p.len() - 1] == i + 1
            && p.iter().all(|&x| x >= i && x <= k)
            && p.windows(2).all(|w| w[0].abs_diff(w[1]) <= 1);
        if !shape {
            issues.push(bad("crossing sequence has the wrong shape"));
        }
        if crossing_count.get(&e) != Some(&1) {
            issues.push(bad("division point missing or repeated"));
        } else if rep.circles[i + 1].get(le.y1_position) != Some(&CircleItem::Crossing(e)) {
            issues.push(bad("division point not on the far circle at y1_position"));
        }
    }
    if crossing_count.keys().any(|e| rep.class_of(*e) != Some(EdgeClass::Long)) {
        issues.push(RepIssue::Layering {
            detail: "crossing point for an edge that is not long".into(),
        });
    }
    if !issues.is_empty() {
        return report(issues);
    }

    let positions: Vec<HashMap<CircleItem, usize>> = rep
        .circles
        .iter()
        .map(|c| c.iter().enumerate().map(|(i, &it)| (it, i)).collect())
        .collect();

    // stack side: level edges and second pieces must not cross on their circle
    for (j, pos) in positions.iter().enumerate() {
        let mut items: Vec<(Edge, CircleItem, CircleItem)> = Vec::new();
        for e in rep.edges_of(EdgeClass::Level).into_iter().filter(|e| d[e.lo()] == j) {
            items.push((e, CircleItem::Vertex(e.lo()), CircleItem::Vertex(e.hi())));
        }
        for le in rep.long_edges.iter().filter(|l| d[l.far] == j) {
            items.push((le.edge, CircleItem::Crossing(le.edge), CircleItem::Vertex(le.far)));
        }
        let spans: Vec<(usize, usize)> = items
            .iter()
            .map(|(_, a, b)| {
                let (x, y) = (pos[a], pos[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        for x in 0..items.len() {
            for y in x + 1..items.len() {
                let ((a, b), (c, dd)) = (spans[x], spans[y]);
                if a == c || a == dd || b == c || b == dd {
                    continue;
                }
                if (a < c && c < b && b < dd) || (c < a && a < dd && dd < b) {
                    issues.push(RepIssue::LevelCrossing {
                        level: j,
                        e: items[x].0,
                        f: items[y].0,
                    });
                }
            }
        }
    }

    // queue side: short edges and first pieces keep their order across a strip
    for j in 0..k {
        let mut items: Vec<(Edge, usize, usize)> = Vec::new();
        for e in rep.edges_of(EdgeClass::Short).into_iter().filter(|e| d[e.lo()].min(d[e.hi()]) == j) {
            let (up, down) = if d[e.lo()] == j { (e.lo(), e.hi()) } else { (e.hi(), e.lo()) };
            items.push((
                e,
                positions[j][&CircleItem::Vertex(up)],
                positions[j + 1][&CircleItem::Vertex(down)],
            ));
        }
        for le in rep.long_edges.iter().filter(|l| d[l.near] == j) {
            items.push((
                le.edge,
                positions[j][&CircleItem::Vertex(le.near)],
                positions[j + 1][&CircleItem::Crossing(le.edge)],
            ));
        }
        for x in 0..items.len() {
            for y in x + 1..items.len() {
                let (_, a, b) = items[x];
                let (_, c, dd) = items[y];
                if a != c && b != dd && (a < c) != (b < dd) {
                    issues.push(RepIssue::StripCrossing {
                        level: j,
                        e: items[x].0,
                        f: items[y].0,
                    });
                }
            }
        }
    }
    report(issues)
}

/// A graph in which every long edge is split once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdividedGraph {
    pub base: Graph,
    pub graph: Graph,
    /// Long edge of `base` and its division vertex in `graph`.
    pub division: Vec<(Edge, Vertex)>,
    pub level_edges: Vec<Edge>,
    pub short_edges: Vec<Edge>,
    /// Near endpoint to division vertex.
    pub first_pieces: Vec<Edge>,
    /// Division vertex to far endpoint.
    pub second_pieces: Vec<Edge>,
}

impl SubdividedGraph {
    pub fn division_vertex(&self, e: Edge) -> Option<Vertex> {
        self.division.iter().find(|(f, _)| *f == e).map(|(_, y)| *y)
    }
}

/// One connected component: its vertices (local id to id in the whole
/// graph) and its representation in local ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRepresentation {
    pub vertices: Vec<Vertex>,
    pub representation: ConcentricRepresentation,
}

struct Assembly {
    sub: SubdividedGraph,
    order: Vec<Vertex>,
}

/// Maps the parts' local ids to `g`'s ids, numbers division vertices
/// `n, n+1, ..` over long edges in edge order and concatenates the circles.
fn assemble(g: &Graph, parts: &[(&[Vertex], &ConcentricRepresentation)]) -> Assembly {
    let n = g.vertex_count();
    let mut longs: Vec<(Edge, Vertex, Vertex)> = Vec::new();
    let mut level_edges = Vec::new();
    let mut short_edges = Vec::new();
    for (map, rep) in parts {
        let global = |e: Edge| Edge::new(map[e.lo()], map[e.hi()]);
        for &(e, class) in &rep.classes {
            match class {
                EdgeClass::Level => level_edges.push(global(e)),
                EdgeClass::Short => short_edges.push(global(e)),
                EdgeClass::Long => {}
            }
        }
        for le in &rep.long_edges {
            longs.push((global(le.edge), map[le.near], map[le.far]));
        }
    }
    longs.sort_unstable();
    level_edges.sort_unstable();
    short_edges.sort_unstable();
    let division: Vec<(Edge, Vertex)> = longs.iter().enumerate().map(|(i, l)| (l.0, n + i)).collect();
    let div_of: HashMap<Edge, Vertex> = division.iter().copied().collect();
    let first_pieces: Vec<Edge> = longs.iter().map(|l| Edge::new(l.1, div_of[&l.0])).collect();
    let second_pieces: Vec<Edge> = longs.iter().map(|l| Edge::new(div_of[&l.0], l.2)).collect();

    let mut order = Vec::with_capacity(n + longs.len());
    for (map, rep) in parts {
        for circle in &rep.circles {
            for it in circle {
                order.push(match it {
                    CircleItem::Vertex(v) => map[*v],
                    CircleItem::Crossing(e) => div_of[&Edge::new(map[e.lo()], map[e.hi()])],
                });
            }
        }
    }

    let all = level_edges
        .iter()
        .chain(&short_edges)
        .chain(&first_pieces)
        .chain(&second_pieces)
        .map(|e| (e.lo(), e.hi()));
    let graph = Graph::from_edge_list(n + longs.len(), all).expect("subdivision of a simple graph");
    Assembly {
        sub: SubdividedGraph {
            base: g.clone(),
            graph,
            division,
            level_edges,
            short_edges,
            first_pieces,
            second_pieces,
        },
        order,
    }
}

/// Splits every long edge of `rep` once.
pub fn subdivide(g: &Graph, rep: &ConcentricRepresentation) -> SubdividedGraph {
    let identity: Vec<Vertex> = (0..g.vertex_count()).collect();
    assemble(g, &[(&identity, rep)]).sub
}

fn layout_of(a: Assembly) -> Result<(SubdividedGraph, MixedLayout), ConcentricError> {
    let Assembly { sub, order } = a;
    let order = VertexOrder::new(order)
        .map_err(|_| ConcentricError::ConstructionFailed("circles do not cover every vertex once".into()))?;
    let mut pages = PageAssignment::new(1, 1);
    for &e in sub.level_edges.iter().chain(&sub.second_pieces) {
        pages.assign(e, 0).expect("edge classes are disjoint");
    }
    for &e in sub.short_edges.iter().chain(&sub.first_pieces) {
        pages.assign(e, 1).expect("edge classes are disjoint");
    }
    let layout = MixedLayout { order, pages };
    let report = verify_mixed(&sub.graph, &layout).map_err(|e| ConcentricError::ConstructionFailed(e.to_string()))?;
    if !report.is_valid() {
        return Err(ConcentricError::ConstructionFailed(format!(
            "{} violations, first {:?}",
            report.violations.len(),
            report.violations[0]
        )));
    }
    Ok((sub, layout))
}

/// The 1-stack 1-queue layout of the subdivision described by `rep`
/// (`g` connected). Page 0 is the stack, page 1 the queue. The layout is
/// verified before it is returned.
pub fn mixed_layout_from_concentric(
    g: &Graph,
    rep: &ConcentricRepresentation,
) -> Result<(SubdividedGraph, MixedLayout), ConcentricError> {
    if rep.layering.dist.len() != g.vertex_count() {
        return Err(ConcentricError::ConstructionFailed("representation is for another graph".into()));
    }
    let identity: Vec<Vertex> = (0..g.vertex_count()).collect();
    layout_of(assemble(g, &[(&identity, rep)]))
}

/// Result of the whole pipeline on an arbitrary planar graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcentricLayout {
    pub components: Vec<ComponentRepresentation>,
    pub subdivided: SubdividedGraph,
    pub layout: MixedLayout,
}

/// JSON dump of the representations and the division map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcentricDump {
    pub components: Vec<ComponentRepresentation>,
    pub division: Vec<(Edge, Vertex)>,
}

impl ConcentricLayout {
    pub fn dump(&self) -> ConcentricDump {
        ConcentricDump {
            components: self.components.clone(),
            division: self.subdivided.division.clone(),
        }
    }
}

/// Embeds `g`, builds a representation per component and lays out the
/// subdivision. The component containing `origin` is layered from it; every
/// other component from its smallest vertex. Components are placed one
/// after another.
pub fn concentric_layout(g: &Graph, origin: Vertex) -> Result<ConcentricLayout, ConcentricError> {
    if origin >= g.vertex_count() {
        return Err(GraphError::VertexOutOfRange {
            vertex: origin,
            n: g.vertex_count(),
        }
        .into());
    }
    let mut components = Vec::new();
    for comp in g.components() {
        let (local, map) = g.induced(&comp);
        let root = map.iter().position(|&v| v == origin).unwrap_or(0);
        let rot = planar_embed_with_outer(&local, root).map_err(|_| ConcentricError::NotPlanar)?;
        let representation = build_concentric(&local, root, &rot)?;
        components.push(ComponentRepresentation {
            vertices: map,
            representation,
        });
    }
    let parts: Vec<(&[Vertex], &ConcentricRepresentation)> = components
        .iter()
        .map(|c| (c.vertices.as_slice(), &c.representation))
        .collect();
    let (subdivided, layout) = layout_of(assemble(g, &parts))?;
    Ok(ConcentricLayout {
        components,
        subdivided,
        layout,
    })
}
