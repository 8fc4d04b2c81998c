//! Vertex orders, page assignments and mixed stack/queue layouts.

mod brute;
mod verify;

pub use brute::{brute_force_solve, BruteOutcome};
pub use verify::{verify_mixed, VerifyReport, Violation};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};

#[derive(Debug, Error)]
pub enum LayoutError {
    #[error("order is not a permutation of 0..{0}")]
    NotPermutation(usize),
    #[error("order has {got} vertices, graph has {expected}")]
    OrderSize { expected: usize, got: usize },
    #[error("layout edges differ from graph edges (missing {missing:?}, extra {extra:?})")]
    EdgeSetMismatch { missing: Vec<Edge>, extra: Vec<Edge> },
    #[error("edge {0} assigned to more than one page")]
    DoubleAssignment(Edge),
    #[error("page {page} does not exist (layout has {pages})")]
    UnknownPage { page: usize, pages: usize },
    #[error("invalid layout JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// A total order of the vertices with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrder {
    order: Vec<Vertex>,
    pos: Vec<usize>,
}

impl VertexOrder {
    pub fn new(order: Vec<Vertex>) -> Result<Self, LayoutError> {
        let n = order.len();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(LayoutError::NotPermutation(n));
            }
            pos[v] = i;
        }
        Ok(VertexOrder { order, pos })
    }

    pub fn identity(n: usize) -> Self {
        VertexOrder {
            order: (0..n).collect(),
            pos: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.order
    }

    pub fn position(&self, v: Vertex) -> usize {
        self.pos[v]
    }

    /// Earlier endpoint of `e`.
    pub fn left(&self, e: Edge) -> Vertex {
        if self.pos[e.lo()] < self.pos[e.hi()] {
            e.lo()
        } else {
            e.hi()
        }
    }

    /// Later endpoint of `e`.
    pub fn right(&self, e: Edge) -> Vertex {
        e.other(self.left(e))
    }

    /// Positions of `(L(e), R(e))`.
    pub fn span(&self, e: Edge) -> (usize, usize) {
        let (a, b) = (self.pos[e.lo()], self.pos[e.hi()]);
        (a.min(b), a.max(b))
    }

    pub fn reversed(&self) -> Self {
        let mut order = self.order.clone();
        order.reverse();
        VertexOrder::new(order).expect("reversal of a permutation")
    }
}

/// How two distinct edges sit relative to each other in a vertex order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    Cross,
    Nest,
    Disjoint,
    SharedEndpoint,
}

pub fn relation(order: &VertexOrder, e: Edge, f: Edge) -> Relation {
    debug_assert_ne!(e, f);
    if e.shares_endpoint(f) {
        return Relation::SharedEndpoint;
    }
    let (a, b) = order.span(e);
    let (c, d) = order.span(f);
    let (outer, inner) = if a < c { ((a, b), (c, d)) } else { ((c, d), (a, b)) };
    if inner.0 > outer.1 {
        Relation::Disjoint
    } else if inner.1 < outer.1 {
        Relation::Nest
    } else {
        Relation::Cross
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PageKind {
    Stack,
    Queue,
}

impl PageKind {
    /// The relation two edges on a page of this kind must avoid.
    pub fn forbidden(self) -> Relation {
        match self {
            PageKind::Stack => Relation::Cross,
            PageKind::Queue => Relation::Nest,
        }
    }
}

/// Page table plus the page of every assigned edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageAssignment {
    kinds: Vec<PageKind>,
    page_of: BTreeMap<Edge, usize>,
}

impl PageAssignment {
    /// `stacks` stack pages followed by `queues` queue pages, nothing assigned.
    pub fn new(stacks: usize, queues: usize) -> Self {
        let mut kinds = vec![PageKind::Stack; stacks];
        kinds.extend(std::iter::repeat_n(PageKind::Queue, queues));
        PageAssignment {
            kinds,
            page_of: BTreeMap::new(),
        }
    }

    pub fn with_kinds(kinds: Vec<PageKind>) -> Self {
        PageAssignment {
            kinds,
            page_of: BTreeMap::new(),
        }
    }

    pub fn assign(&mut self, e: Edge, page: usize) -> Result<(), LayoutError> {
        if page >= self.kinds.len() {
            return Err(LayoutError::UnknownPage {
                page,
                pages: self.kinds.len(),
            });
        }
        if self.page_of.insert(e, page).is_some() {
            return Err(LayoutError::DoubleAssignment(e));
        }
        Ok(())
    }

    pub fn page(&self, e: Edge) -> Option<usize> {
        self.page_of.get(&e).copied()
    }

    pub fn kinds(&self) -> &[PageKind] {
        &self.kinds
    }

    pub fn kind(&self, page: usize) -> PageKind {
        self.kinds[page]
    }

    pub fn page_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn count(&self, kind: PageKind) -> usize {
        self.kinds.iter().filter(|&&k| k == kind).count()
    }

    /// Assigned edges in edge order with their pages.
    pub fn iter(&self) -> impl Iterator<Item = (Edge, usize)> + '_ {
        self.page_of.iter().map(|(&e, &p)| (e, p))
    }

    pub fn edges_on(&self, page: usize) -> Vec<Edge> {
        self.iter().filter(|&(_, p)| p == page).map(|(e, _)| e).collect()
    }

    /// Exchanges the contents of two pages of the same kind.
    pub fn swap_pages(&mut self, a: usize, b: usize) {
        assert_eq!(self.kinds[a], self.kinds[b], "only pages of one kind are interchangeable");
        for p in self.page_of.values_mut() {
            if *p == a {
                *p = b;
            } else if *p == b {
                *p = a;
            }
        }
    }
}

/// A vertex order together with a page for every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedLayout {
    pub order: VertexOrder,
    pub pages: PageAssignment,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageJson {
    pub kind: PageKind,
    pub edges: Vec<[usize; 2]>,
}

/// `{"order": [..], "pages": [{"kind": "stack", "edges": [[u,v], ..]}, ..]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutJson {
    pub order: Vec<Vertex>,
    pub pages: Vec<PageJson>,
}

impl MixedLayout {
    pub fn to_json(&self) -> LayoutJson {
        LayoutJson {
            order: self.order.as_slice().to_vec(),
            pages: (0..self.pages.page_count())
                .map(|p| PageJson {
                    kind: self.pages.kind(p),
                    edges: self.pages.edges_on(p).into_iter().map(Into::into).collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &LayoutJson) -> Result<Self, LayoutError> {
        let order = VertexOrder::new(j.order.clone())?;
        let mut pages = PageAssignment::with_kinds(j.pages.iter().map(|p| p.kind).collect());
        for (i, p) in j.pages.iter().enumerate() {
            for &[u, v] in &p.edges {
                pages.assign(Edge::new(u, v), i)?;
            }
        }
        Ok(MixedLayout { order, pages })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("layouts serialize")
    }

    pub fn from_json_str(text: &str) -> Result<Self, LayoutError> {
        let j: LayoutJson = serde_json::from_str(text)?;
        Self::from_json(&j)
    }

    /// Same pages, reversed vertex order.
    pub fn reversed(&self) -> Self {
        MixedLayout {
            order: self.order.reversed(),
            pages: self.pages.clone(),
        }
    }
}

/// Checks that the layout covers exactly the edges of `g` and that its order
/// has the right size.
pub(crate) fn check_covers(g: &Graph, layout: &MixedLayout) -> Result<(), LayoutError> {
    if layout.order.len() != g.vertex_count() {
        return Err(LayoutError::OrderSize {
            expected: g.vertex_count(),
            got: layout.order.len(),
        });
    }
    let assigned: Vec<Edge> = layout.pages.iter().map(|(e, _)| e).collect();
    if assigned != g.edges() {
        let missing = g.edges().iter().filter(|e| layout.pages.page(**e).is_none()).copied().collect();
        let extra = assigned.iter().filter(|e| g.edge_id(e.lo(), e.hi()).is_none()).copied().collect();
        return Err(LayoutError::EdgeSetMismatch { missing, extra });
    }
    Ok(())
}
