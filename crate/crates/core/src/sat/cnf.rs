//! CNF instances and the layout encoding.
//!
//! Variables (1-based, DIMACS style):
//!
//! * `order(u, v)` for every vertex pair `u < v`, true when `u` precedes `v`;
//! * `page(e, p)` for every edge `e` and page `p`, stacks first.
//!
//! Clause families: transitivity on every triple, exactly one page per
//! edge, and for every pair of independent edges sharing a page, one clause
//! per forbidden interleaving of their four endpoints (crossing on stack
//! pages, nesting on queue pages). Each such clause pins the three
//! consecutive comparisons of one full ordering, which transitivity makes
//! equivalent to that ordering.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};
use crate::layout::{PageAssignment, PageKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("empty clause")]
    EmptyClause,
    #[error("literal {lit} references an undeclared variable (instance has {vars})")]
    UndeclaredVariable { lit: i32, vars: usize },
}

/// A propositional formula in conjunctive normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfInstance {
    num_vars: usize,
    lits: Vec<i32>,
    starts: Vec<usize>,
    varmap: Option<VarMap>,
}

impl CnfInstance {
    pub fn new(num_vars: usize) -> Self {
        CnfInstance {
            num_vars,
            lits: Vec::new(),
            starts: vec![0],
            varmap: None,
        }
    }

    pub fn add_clause(&mut self, clause: &[i32]) -> Result<(), CnfError> {
        if clause.is_empty() {
            return Err(CnfError::EmptyClause);
        }
        if let Some(&lit) = clause
            .iter()
            .find(|&&l| l == 0 || l.unsigned_abs() as usize > self.num_vars)
        {
            return Err(CnfError::UndeclaredVariable {
                lit,
                vars: self.num_vars,
            });
        }
        self.lits.extend_from_slice(clause);
        self.starts.push(self.lits.len());
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.starts.len() - 1
    }

    pub fn clause(&self, i: usize) -> &[i32] {
        &self.lits[self.starts[i]..self.starts[i + 1]]
    }

    pub fn clauses(&self) -> impl ExactSizeIterator<Item = &[i32]> + '_ {
        (0..self.num_clauses()).map(move |i| self.clause(i))
    }

    /// Variable layout when the instance encodes a layout question.
    pub fn varmap(&self) -> Option<&VarMap> {
        self.varmap.as_ref()
    }

    pub fn is_satisfied_by(&self, values: &[bool]) -> bool {
        self.clauses().all(|c| {
            c.iter().any(|&l| {
                let v = values[l.unsigned_abs() as usize - 1];
                if l > 0 {
                    v
                } else {
                    !v
                }
            })
        })
    }
}

/// Meaning of the variables of an encoded layout instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarMap {
    pub n: usize,
    pub edges: Vec<Edge>,
    pub stacks: usize,
    pub queues: usize,
}

impl VarMap {
    pub fn pages(&self) -> usize {
        self.stacks + self.queues
    }

    pub fn order_var_count(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }

    pub fn num_vars(&self) -> usize {
        self.order_var_count() + self.edges.len() * self.pages()
    }

    /// Variable meaning "`u` precedes `v`", for `u < v`.
    pub fn order_var(&self, u: Vertex, v: Vertex) -> i32 {
        debug_assert!(u < v && v < self.n);
        let idx = u * self.n - u * (u + 1) / 2 + (v - u - 1);
        (idx + 1) as i32
    }

    /// Literal meaning "`a` precedes `b`" for any distinct `a`, `b`.
    pub fn before(&self, a: Vertex, b: Vertex) -> i32 {
        if a < b {
            self.order_var(a, b)
        } else {
            -self.order_var(b, a)
        }
    }

    /// Variable meaning "edge `e` (by id) lies on page `p`".
    pub fn page_var(&self, e: usize, p: usize) -> i32 {
        debug_assert!(e < self.edges.len() && p < self.pages());
        (self.order_var_count() + e * self.pages() + p + 1) as i32
    }

    pub fn kinds(&self) -> Vec<PageKind> {
        PageAssignment::new(self.stacks, self.queues).kinds().to_vec()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EncodeOptions {
    /// Fix the orientation of one vertex pair (plus, for pure stack
    /// instances, the first vertex) and the page of the first edge within
    /// each page kind. Anchor vertices are chosen outside twin classes when
    /// `twin_ordering` is on.
    pub symmetry_breaking: bool,
    /// Order the members of every twin class (vertices with equal open or
    /// equal closed neighborhoods) by id. Swapping twins is an automorphism,
    /// so this keeps satisfiability.
    pub twin_ordering: bool,
}

impl Default for EncodeOptions {
    fn default() -> Self {
        EncodeOptions {
            symmetry_breaking: true,
            twin_ordering: true,
        }
    }
}

impl EncodeOptions {
    pub fn without_symmetry_breaking() -> Self {
        EncodeOptions {
            symmetry_breaking: false,
            twin_ordering: false,
        }
    }
}

/// Classes of at least two vertices sharing their open neighborhood, or
/// sharing their closed neighborhood. Members are sorted; classes are
/// disjoint.
pub fn twin_classes(g: &Graph) -> Vec<Vec<Vertex>> {
    let mut by_key: BTreeMap<(bool, Vec<Vertex>), Vec<Vertex>> = BTreeMap::new();
    for v in 0..g.vertex_count() {
        if g.degree(v) == 0 {
            continue;
        }
        let open = g.neighbors(v).to_vec();
        let mut closed = open.clone();
        closed.push(v);
        closed.sort_unstable();
        by_key.entry((false, open)).or_default().push(v);
        by_key.entry((true, closed)).or_default().push(v);
    }
    by_key.into_values().filter(|c| c.len() >= 2).collect()
}

/// Whether the linear order `seq` of the endpoints of `e` and `f` is the
/// pattern forbidden on a page of `kind`.
fn forbidden_pattern(seq: &[Vertex; 4], e: Edge, kind: PageKind) -> bool {
    let in_e: Vec<bool> = seq.iter().map(|&x| e.touches(x)).collect();
    match kind {
        // e f e f  or  f e f e
        PageKind::Stack => in_e[0] == in_e[2] && in_e[1] == in_e[3] && in_e[0] != in_e[1],
        // e f f e  or  f e e f
        PageKind::Queue => in_e[0] == in_e[3] && in_e[1] == in_e[2] && in_e[0] != in_e[1],
    }
}

fn permutations4(items: [Vertex; 4]) -> Vec<[Vertex; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    if a != b && a != c && a != d && b != c && b != d && c != d {
                        out.push([items[a], items[b], items[c], items[d]]);
                    }
                }
            }
        }
    }
    out
}

/// Encodes "`g` has an `s`-stack `q`-queue layout" as CNF.
pub fn encode(g: &Graph, s: usize, q: usize, opts: EncodeOptions) -> CnfInstance {
    assert!(s + q >= 1, "a layout needs at least one page");
    let map = VarMap {
        n: g.vertex_count(),
        edges: g.edges().to_vec(),
        stacks: s,
        queues: q,
    };
    let n = map.n;
    let pages = map.pages();
    let kinds = map.kinds();
    let mut cnf = CnfInstance::new(map.num_vars());
    let mut add = |c: &[i32]| cnf.add_clause(c).expect("encoder emits well-formed clauses");

    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (ij, jk, ik) = (map.order_var(i, j), map.order_var(j, k), map.order_var(i, k));
                add(&[-ij, -jk, ik]);
                add(&[ij, jk, -ik]);
            }
        }
    }

    for e in 0..map.edges.len() {
        let vars: Vec<i32> = (0..pages).map(|p| map.page_var(e, p)).collect();
        add(&vars);
        for a in 0..pages {
            for b in a + 1..pages {
                add(&[-vars[a], -vars[b]]);
            }
        }
    }

    let edges = &map.edges;
    for (ei, &e) in edges.iter().enumerate() {
        for (fi, &f) in edges.iter().enumerate().skip(ei + 1) {
            if e.shares_endpoint(f) {
                continue;
            }
            let orders = permutations4([e.lo(), e.hi(), f.lo(), f.hi()]);
            for (p, &kind) in kinds.iter().enumerate() {
                for seq in orders.iter().filter(|seq| forbidden_pattern(seq, e, kind)) {
                    add(&[
                        -map.page_var(ei, p),
                        -map.page_var(fi, p),
                        -map.before(seq[0], seq[1]),
                        -map.before(seq[1], seq[2]),
                        -map.before(seq[2], seq[3]),
                    ]);
                }
            }
        }
    }

    // vertices moved by twin relabeling cannot anchor the other symmetries
    let mut free: Vec<Vertex> = (0..n).collect();
    if opts.twin_ordering {
        let classes = twin_classes(g);
        for class in &classes {
            for w in class.windows(2) {
                add(&[map.before(w[0], w[1])]);
            }
        }
        let twins: Vec<Vertex> = classes.concat();
        free.retain(|v| !twins.contains(v));
    }

    if opts.symmetry_breaking {
        if q == 0 && !free.is_empty() {
            // circular symmetry of stack layouts: one vertex first, then a mirror
            let first = free[0];
            for v in (0..n).filter(|&v| v != first) {
                add(&[map.before(first, v)]);
            }
            if free.len() >= 3 {
                add(&[map.before(free[1], free[2])]);
            }
        } else if free.len() >= 2 {
            add(&[map.before(free[0], free[1])]);
        }
        if !edges.is_empty() {
            let mut first_of_kind = [true; 2];
            for (p, &kind) in kinds.iter().enumerate() {
                let k = kind as usize;
                if first_of_kind[k] {
                    first_of_kind[k] = false;
                } else {
                    add(&[-map.page_var(0, p)]);
                }
            }
        }
    }

    cnf.varmap = Some(map);
    cnf
}
