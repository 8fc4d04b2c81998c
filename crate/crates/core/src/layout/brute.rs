//! Exhaustive search over vertex orders and page assignments.
//!
//! Independent of the SAT route and meant for graphs with at most nine
//! non-isolated vertices. Orders are enumerated lexicographically, so the
//! returned witness is deterministic. Symmetry pruning:
//!
//! * every layout stays valid when the order is reversed, so the first two
//!   non-isolated vertices are kept in increasing position;
//! * with stacks only, cyclic shifts are also harmless (crossing is a
//!   property of the circular order), so the first non-isolated vertex is
//!   pinned to the front and mirror images are skipped instead.
//!
//! Page assignment is a backtracking search that always branches on the edge
//! with the fewest admissible pages and opens at most one empty page of
//! each kind per branch.

use super::{relation, MixedLayout, PageAssignment, PageKind, Relation, VertexOrder};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteOutcome {
    Found(MixedLayout),
    Infeasible,
    BudgetExceeded,
}

type Bits = Vec<u64>;

fn set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn clear(b: &mut Bits, i: usize) {
    b[i / 64] &= !(1 << (i % 64));
}

fn meets(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

struct Search<'a> {
    g: &'a Graph,
    kinds: Vec<PageKind>,
    limit: Option<u64>,
    nodes: u64,
    words: usize,
}

enum Step {
    Found(Vec<usize>),
    Exhausted,
    OutOfBudget,
}

impl Search<'_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.limit.is_some_and(|l| self.nodes > l)
    }

    /// Page options for edge `e`: non-conflicting used pages plus the first
    /// empty page of each kind.
    fn options(&self, e: usize, conflicts: &[[Bits; 2]], members: &[Bits], used: &[bool]) -> Vec<usize> {
        let mut out = Vec::new();
        let mut opened = [false; 2];
        for (p, &kind) in self.kinds.iter().enumerate() {
            let k = kind as usize;
            if used[p] {
                if !meets(&conflicts[e][k], &members[p]) {
                    out.push(p);
                }
            } else if !opened[k] {
                opened[k] = true;
                out.push(p);
            }
        }
        out
    }

    fn assign(
        &mut self,
        conflicts: &[[Bits; 2]],
        members: &mut Vec<Bits>,
        used: &mut Vec<bool>,
        page_of: &mut Vec<usize>,
        left: usize,
    ) -> Step {
        if left == 0 {
            return Step::Found(page_of.clone());
        }
        if self.tick() {
            return Step::OutOfBudget;
        }
        let m = page_of.len();
        let mut best: Option<(usize, Vec<usize>)> = None;
        for e in (0..m).filter(|&e| page_of[e] == usize::MAX) {
            let opts = self.options(e, conflicts, members, used);
            if opts.is_empty() {
                return Step::Exhausted;
            }
            if best.as_ref().is_none_or(|(_, b)| opts.len() < b.len()) {
                best = Some((e, opts));
            }
        }
        let (e, opts) = best.unwrap();
        for p in opts {
            let was_used = used[p];
            used[p] = true;
            set(&mut members[p], e);
            page_of[e] = p;
            match self.assign(conflicts, members, used, page_of, left - 1) {
                Step::Exhausted => {}
                other => return other,
            }
            page_of[e] = usize::MAX;
            clear(&mut members[p], e);
            used[p] = was_used;
        }
        Step::Exhausted
    }

    fn try_order(&mut self, order: &VertexOrder) -> Step {
        let edges = self.g.edges();
        let m = edges.len();
        // conflicts[e][kind]: edges that may not share a page of that kind with e
        let mut conflicts: Vec<[Bits; 2]> = vec![[vec![0; self.words], vec![0; self.words]]; m];
        for i in 0..m {
            for j in i + 1..m {
                let k = match relation(order, edges[i], edges[j]) {
                    Relation::Cross => PageKind::Stack as usize,
                    Relation::Nest => PageKind::Queue as usize,
                    _ => continue,
                };
                set(&mut conflicts[i][k], j);
                set(&mut conflicts[j][k], i);
            }
        }
        let mut members = vec![vec![0; self.words]; self.kinds.len()];
        let mut used = vec![false; self.kinds.len()];
        let mut page_of = vec![usize::MAX; m];
        self.assign(&conflicts, &mut members, &mut used, &mut page_of, m)
    }
}

/// Searches every vertex order (up to symmetry) for an `s`-stack `q`-queue
/// layout. `limit` caps the number of search nodes.
pub fn brute_force_solve(g: &Graph, s: usize, q: usize, limit: Option<u64>) -> BruteOutcome {
    let n = g.vertex_count();
    let m = g.edge_count();
    let build = |order: Vec<Vertex>, page_of: &[usize]| {
        let mut pages = PageAssignment::new(s, q);
        for (e, &p) in g.edges().iter().zip(page_of) {
            pages.assign(*e, p).expect("search assigns each edge once");
        }
        MixedLayout {
            order: VertexOrder::new(order).expect("search builds permutations"),
            pages,
        }
    };
    if m == 0 {
        return BruteOutcome::Found(build((0..n).collect(), &[]));
    }
    if s + q == 0 {
        return BruteOutcome::Infeasible;
    }

    let active: Vec<Vertex> = (0..n).filter(|&v| g.degree(v) > 0).collect();
    let isolated: Vec<Vertex> = (0..n).filter(|&v| g.degree(v) == 0).collect();
    let stack_only = q == 0;
    let search = Search {
        g,
        kinds: PageAssignment::new(s, q).kinds().to_vec(),
        limit,
        nodes: 0,
        words: m.div_ceil(64),
    };

    let mut perm: Vec<Vertex> = Vec::with_capacity(active.len());
    let mut taken = vec![false; active.len()];
    if stack_only {
        perm.push(active[0]);
        taken[0] = true;
    }
    let mut ctx = Enumeration {
        active: &active,
        isolated: &isolated,
        stack_only,
        search,
    };
    match ctx.extend(&mut perm, &mut taken) {
        Step::Found(page_of) => BruteOutcome::Found(build(perm, &page_of)),
        Step::OutOfBudget => BruteOutcome::BudgetExceeded,
        Step::Exhausted => BruteOutcome::Infeasible,
    }
}

struct Enumeration<'a> {
    active: &'a [Vertex],
    isolated: &'a [Vertex],
    stack_only: bool,
    search: Search<'a>,
}

impl Enumeration<'_> {
    fn canonical(&self, perm: &[Vertex]) -> bool {
        let k = perm.len();
        if self.stack_only {
            k < 3 || perm[1] < perm[k - 1]
        } else {
            let p0 = perm.iter().position(|&v| v == self.active[0]);
            let p1 = perm.iter().position(|&v| v == self.active[1]);
            p0 < p1
        }
    }

    /// Extends `perm` lexicographically; on success `perm` holds the full
    /// order (isolated vertices appended).
    fn extend(&mut self, perm: &mut Vec<Vertex>, taken: &mut [bool]) -> Step {
        if perm.len() == self.active.len() {
            if !self.canonical(perm) {
                return Step::Exhausted;
            }
            if self.search.tick() {
                return Step::OutOfBudget;
            }
            perm.extend_from_slice(self.isolated);
            let order = VertexOrder::new(perm.clone()).expect("permutation");
            let step = self.search.try_order(&order);
            if !matches!(step, Step::Found(_)) {
                perm.truncate(self.active.len());
            }
            return step;
        }
        for i in 0..self.active.len() {
            // vertex active[1] never precedes active[0] unless stacks only
            if taken[i] || (!self.stack_only && i == 1 && !taken[0]) {
                continue;
            }
            taken[i] = true;
            perm.push(self.active[i]);
            match self.extend(perm, taken) {
                Step::Exhausted => {}
                other => return other,
            }
            perm.pop();
            taken[i] = false;
        }
        Step::Exhausted
    }
}
