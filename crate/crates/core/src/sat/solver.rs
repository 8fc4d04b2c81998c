//! A small conflict-driven clause-learning solver.
//!
//! Two-watched-literal propagation, first-UIP learning with local clause
//! minimization, Luby restarts and activity-based learnt clause deletion.
//! Every choice is deterministic: ties in the variable heap are broken by
//! index, and no randomness is involved, so runs are reproducible.

use std::time::Instant;

use super::cnf::CnfInstance;

/// Literal: variable `v` (0-based) is `2v`, its negation `2v + 1`.
type Lit = u32;

const NO_REASON: u32 = u32::MAX;
const UNDEF: u8 = 2;

fn lit_of(dimacs: i32) -> Lit {
    let v = dimacs.unsigned_abs() - 1;
    2 * v + u32::from(dimacs < 0)
}

fn var(l: Lit) -> usize {
    (l >> 1) as usize
}

fn neg(l: Lit) -> Lit {
    l ^ 1
}

/// How the next decision variable is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Branching {
    /// Activity ordering with saved phases (initially false).
    #[default]
    Activity,
    /// Lowest-index unassigned variable, set to false.
    LowestIndex,
}

#[derive(Debug, Clone, Default)]
pub struct SolverConfig {
    pub branching: Branching,
    pub conflict_limit: Option<u64>,
    pub deadline: Option<Instant>,
}

/// A total assignment, indexed by 0-based variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatModel {
    values: Vec<bool>,
}

impl SatModel {
    pub fn new(values: Vec<bool>) -> Self {
        SatModel { values }
    }

    /// Truth value of a DIMACS literal.
    pub fn value(&self, lit: i32) -> bool {
        let v = self.values[lit.unsigned_abs() as usize - 1];
        if lit > 0 {
            v
        } else {
            !v
        }
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// Positive/negative DIMACS literals, one per variable.
    pub fn literals(&self) -> Vec<i32> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &b)| if b { i as i32 + 1 } else { -(i as i32 + 1) })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    Sat(SatModel),
    Unsat,
    /// A conflict or time limit was hit first.
    Unknown,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
    pub restarts: u64,
    pub learnt_deleted: u64,
}

#[derive(Clone, Copy)]
struct Watch {
    cref: u32,
    blocker: Lit,
}

#[derive(Clone)]
struct ClauseMeta {
    start: u32,
    len: u32,
    learnt: bool,
    deleted: bool,
    lbd: u32,
    activity: f64,
}

/// Max-heap of variables by activity, ties to the lower index.
struct VarHeap {
    heap: Vec<u32>,
    index: Vec<usize>,
}

const NOT_IN_HEAP: usize = usize::MAX;

impl VarHeap {
    fn new(n: usize) -> Self {
        VarHeap {
            heap: (0..n as u32).collect(),
            index: (0..n).collect(),
        }
    }

    fn better(act: &[f64], a: u32, b: u32) -> bool {
        let (x, y) = (act[a as usize], act[b as usize]);
        x > y || (x == y && a < b)
    }

    fn contains(&self, v: usize) -> bool {
        self.index[v] != NOT_IN_HEAP
    }

    fn up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            if !Self::better(act, v, self.heap[parent]) {
                break;
            }
            self.heap[i] = self.heap[parent];
            self.index[self.heap[i] as usize] = i;
            i = parent;
        }
        self.heap[i] = v;
        self.index[v as usize] = i;
    }

    fn down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        loop {
            let l = 2 * i + 1;
            if l >= self.heap.len() {
                break;
            }
            let r = l + 1;
            let c = if r < self.heap.len() && Self::better(act, self.heap[r], self.heap[l]) {
                r
            } else {
                l
            };
            if !Self::better(act, self.heap[c], v) {
                break;
            }
            self.heap[i] = self.heap[c];
            self.index[self.heap[i] as usize] = i;
            i = c;
        }
        self.heap[i] = v;
        self.index[v as usize] = i;
    }

    fn insert(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            return;
        }
        self.heap.push(v as u32);
        self.index[v] = self.heap.len() - 1;
        self.up(self.heap.len() - 1, act);
    }

    fn pop(&mut self, act: &[f64]) -> Option<usize> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().unwrap();
        self.index[top as usize] = NOT_IN_HEAP;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.index[last as usize] = 0;
            self.down(0, act);
        }
        Some(top as usize)
    }

    fn bumped(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            self.up(self.index[v], act);
        }
    }
}

/// Luby sequence 1 1 2 1 1 2 4 ... (0-based index).
fn luby(mut i: u64) -> u64 {
    let (mut size, mut seq) = (1u64, 0u32);
    while size < i + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != i {
        size = (size - 1) >> 1;
        seq -= 1;
        i %= size;
    }
    1 << seq
}

pub struct Solver {
    num_vars: usize,
    arena: Vec<Lit>,
    clauses: Vec<ClauseMeta>,
    watches: Vec<Vec<Watch>>,
    assigns: Vec<u8>,
    level: Vec<u32>,
    reason: Vec<u32>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    cla_inc: f64,
    heap: VarHeap,
    phase: Vec<bool>,
    seen: Vec<bool>,
    lowest_hint: usize,
    unsat: bool,
    num_learnts: usize,
    config: SolverConfig,
    pub stats: SolverStats,
}

impl Solver {
    pub fn new(cnf: &CnfInstance, config: SolverConfig) -> Self {
        let n = cnf.num_vars();
        let mut s = Solver {
            num_vars: n,
            arena: Vec::new(),
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * n],
            assigns: vec![UNDEF; n],
            level: vec![0; n],
            reason: vec![NO_REASON; n],
            trail: Vec::with_capacity(n),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: vec![0.0; n],
            var_inc: 1.0,
            cla_inc: 1.0,
            heap: VarHeap::new(n),
            phase: vec![false; n],
            seen: vec![false; n],
            lowest_hint: 0,
            unsat: false,
            num_learnts: 0,
            config,
            stats: SolverStats::default(),
        };
        let mut units = Vec::new();
        let mut buf: Vec<Lit> = Vec::new();
        for clause in cnf.clauses() {
            buf.clear();
            buf.extend(clause.iter().map(|&l| lit_of(l)));
            buf.sort_unstable();
            buf.dedup();
            if buf.windows(2).any(|w| w[0] == neg(w[1])) {
                continue; // tautology
            }
            match buf.len() {
                0 => s.unsat = true,
                1 => units.push(buf[0]),
                _ => {
                    s.attach_new(&buf, false, 0);
                }
            }
        }
        for u in units {
            match s.value(u) {
                0 => s.unsat = true,
                1 => {}
                _ => s.enqueue(u, NO_REASON),
            }
        }
        s
    }

    fn value(&self, l: Lit) -> u8 {
        match self.assigns[var(l)] {
            UNDEF => UNDEF,
            a => a ^ (l & 1) as u8,
        }
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    fn enqueue(&mut self, l: Lit, reason: u32) {
        let v = var(l);
        self.assigns[v] = 1 ^ (l & 1) as u8;
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    fn attach_new(&mut self, lits: &[Lit], learnt: bool, lbd: u32) -> u32 {
        let cref = self.clauses.len() as u32;
        self.clauses.push(ClauseMeta {
            start: self.arena.len() as u32,
            len: lits.len() as u32,
            learnt,
            deleted: false,
            lbd,
            activity: 0.0,
        });
        self.arena.extend_from_slice(lits);
        self.watches[lits[0] as usize].push(Watch { cref, blocker: lits[1] });
        self.watches[lits[1] as usize].push(Watch { cref, blocker: lits[0] });
        cref
    }

    fn lits(&self, cref: u32) -> &[Lit] {
        let c = &self.clauses[cref as usize];
        &self.arena[c.start as usize..(c.start + c.len) as usize]
    }

    /// Unit propagation; returns a conflicting clause if one arises.
    fn propagate(&mut self) -> Option<u32> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = neg(p);
            let mut ws = std::mem::take(&mut self.watches[false_lit as usize]);
            let (mut i, mut j) = (0, 0);
            let mut conflict = None;
            while i < ws.len() {
                let w = ws[i];
                i += 1;
                if self.value(w.blocker) == 1 {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let meta = &self.clauses[w.cref as usize];
                if meta.deleted {
                    continue;
                }
                let (start, len) = (meta.start as usize, meta.len as usize);
                if self.arena[start] == false_lit {
                    self.arena.swap(start, start + 1);
                }
                let first = self.arena[start];
                let watch = Watch { cref: w.cref, blocker: first };
                if first != w.blocker && self.value(first) == 1 {
                    ws[j] = watch;
                    j += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..len {
                    let l = self.arena[start + k];
                    if self.value(l) != 0 {
                        self.arena.swap(start + 1, start + k);
                        self.watches[l as usize].push(watch);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = watch;
                j += 1;
                if self.value(first) == 0 {
                    conflict = Some(w.cref);
                    while i < ws.len() {
                        ws[j] = ws[i];
                        i += 1;
                        j += 1;
                    }
                } else {
                    self.enqueue(first, w.cref);
                }
            }
            ws.truncate(j);
            self.watches[false_lit as usize] = ws;
            if conflict.is_some() {
                self.qhead = self.trail.len();
                return conflict;
            }
        }
        None
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.heap.bumped(v, &self.activity);
    }

    fn bump_clause(&mut self, cref: u32) {
        let c = &mut self.clauses[cref as usize];
        if !c.learnt {
            return;
        }
        c.activity += self.cla_inc;
        if c.activity > 1e20 {
            for c in self.clauses.iter_mut().filter(|c| c.learnt) {
                c.activity *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    /// First-UIP analysis; returns the learnt clause (asserting literal
    /// first) and the backjump level.
    fn analyze(&mut self, mut confl: u32) -> (Vec<Lit>, u32) {
        let mut learnt: Vec<Lit> = vec![0];
        let mut path = 0usize;
        let mut p: Option<Lit> = None;
        let mut index = self.trail.len();
        let current = self.decision_level();
        loop {
            self.bump_clause(confl);
            let skip = usize::from(p.is_some());
            let lits: Vec<Lit> = self.lits(confl)[skip..].to_vec();
            for q in lits {
                let v = var(q);
                if !self.seen[v] && self.level[v] > 0 {
                    self.bump_var(v);
                    self.seen[v] = true;
                    if self.level[v] >= current {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[var(self.trail[index])] {
                    break;
                }
            }
            let lit = self.trail[index];
            p = Some(lit);
            confl = self.reason[var(lit)];
            self.seen[var(lit)] = false;
            path -= 1;
            if path == 0 {
                break;
            }
        }
        learnt[0] = neg(p.unwrap());

        // drop literals implied by the rest of the clause
        let mut keep = vec![learnt[0]];
        for &l in &learnt[1..] {
            let r = self.reason[var(l)];
            let redundant = r != NO_REASON
                && self.lits(r)[1..]
                    .iter()
                    .all(|&x| self.seen[var(x)] || self.level[var(x)] == 0);
            if !redundant {
                keep.push(l);
            }
        }
        for &l in &learnt {
            self.seen[var(l)] = false;
        }
        let mut learnt = keep;

        let bt = if learnt.len() == 1 {
            0
        } else {
            let (mut best, mut lvl) = (1, self.level[var(learnt[1])]);
            for (i, &l) in learnt.iter().enumerate().skip(2) {
                if self.level[var(l)] > lvl {
                    best = i;
                    lvl = self.level[var(l)];
                }
            }
            learnt.swap(1, best);
            lvl
        };
        (learnt, bt)
    }

    fn lbd(&mut self, lits: &[Lit]) -> u32 {
        let mut levels: Vec<u32> = lits.iter().map(|&l| self.level[var(l)]).collect();
        levels.sort_unstable();
        levels.dedup();
        levels.len() as u32
    }

    fn cancel_until(&mut self, lvl: u32) {
        if self.decision_level() <= lvl {
            return;
        }
        let lim = self.trail_lim[lvl as usize];
        for i in (lim..self.trail.len()).rev() {
            let l = self.trail[i];
            let v = var(l);
            self.phase[v] = l & 1 == 0;
            self.assigns[v] = UNDEF;
            self.reason[v] = NO_REASON;
            self.heap.insert(v, &self.activity);
            self.lowest_hint = self.lowest_hint.min(v);
        }
        self.trail.truncate(lim);
        self.trail_lim.truncate(lvl as usize);
        self.qhead = lim;
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        match self.config.branching {
            Branching::LowestIndex => {
                while self.lowest_hint < self.num_vars && self.assigns[self.lowest_hint] != UNDEF {
                    self.lowest_hint += 1;
                }
                (self.lowest_hint < self.num_vars).then(|| 2 * self.lowest_hint as u32 + 1)
            }
            Branching::Activity => loop {
                let v = self.heap.pop(&self.activity)?;
                if self.assigns[v] == UNDEF {
                    return Some(2 * v as u32 + u32::from(!self.phase[v]));
                }
            },
        }
    }

    /// Deletes about half of the learnt clauses (low activity, high LBD)
    /// and compacts the arena. Only called at decision level 0.
    fn reduce_db(&mut self) {
        debug_assert_eq!(self.decision_level(), 0);
        let mut learnts: Vec<u32> = (0..self.clauses.len() as u32)
            .filter(|&c| {
                let m = &self.clauses[c as usize];
                m.learnt && !m.deleted && m.lbd > 2
            })
            .collect();
        learnts.sort_by(|&a, &b| {
            let (x, y) = (&self.clauses[a as usize], &self.clauses[b as usize]);
            y.lbd
                .cmp(&x.lbd)
                .then(x.activity.partial_cmp(&y.activity).unwrap())
                .then(a.cmp(&b))
        });
        for &c in &learnts[..learnts.len() / 2] {
            self.clauses[c as usize].deleted = true;
            self.num_learnts -= 1;
            self.stats.learnt_deleted += 1;
        }

        let old = std::mem::take(&mut self.clauses);
        let old_arena = std::mem::take(&mut self.arena);
        for w in &mut self.watches {
            w.clear();
        }
        for r in &mut self.reason {
            *r = NO_REASON;
        }
        for meta in old.into_iter().filter(|m| !m.deleted) {
            let lits = &old_arena[meta.start as usize..(meta.start + meta.len) as usize];
            let cref = self.attach_new(lits, meta.learnt, meta.lbd);
            self.clauses[cref as usize].activity = meta.activity;
        }
    }

    fn out_of_budget(&self) -> bool {
        if self.config.conflict_limit.is_some_and(|l| self.stats.conflicts >= l) {
            return true;
        }
        self.config.deadline.is_some_and(|d| Instant::now() >= d)
    }

    pub fn solve(&mut self) -> SolveResult {
        if self.unsat || self.propagate().is_some() {
            self.unsat = true;
            return SolveResult::Unsat;
        }
        let mut max_learnts = (self.clauses.len() / 3).max(4000) as f64;
        let mut restart = 0u64;
        loop {
            let budget = 100 * luby(restart);
            match self.search(budget) {
                Some(r) => return r,
                None => {
                    restart += 1;
                    self.stats.restarts += 1;
                    self.cancel_until(0);
                    if self.num_learnts as f64 >= max_learnts {
                        self.reduce_db();
                        max_learnts *= 1.1;
                    }
                    if self.out_of_budget() {
                        return SolveResult::Unknown;
                    }
                }
            }
        }
    }

    /// Runs until a result, or `None` after `budget` conflicts.
    fn search(&mut self, budget: u64) -> Option<SolveResult> {
        let mut conflicts = 0u64;
        loop {
            if let Some(confl) = self.propagate() {
                self.stats.conflicts += 1;
                conflicts += 1;
                if self.decision_level() == 0 {
                    self.unsat = true;
                    return Some(SolveResult::Unsat);
                }
                let (learnt, bt) = self.analyze(confl);
                self.cancel_until(bt);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], NO_REASON);
                } else {
                    let lbd = self.lbd(&learnt);
                    let cref = self.attach_new(&learnt, true, lbd);
                    self.num_learnts += 1;
                    self.bump_clause(cref);
                    self.enqueue(learnt[0], cref);
                }
                self.var_inc /= 0.95;
                self.cla_inc /= 0.999;
                if self.stats.conflicts.is_multiple_of(256) && self.out_of_budget() {
                    return Some(SolveResult::Unknown);
                }
                if self.config.conflict_limit.is_some_and(|l| self.stats.conflicts >= l) {
                    return Some(SolveResult::Unknown);
                }
            } else {
                if conflicts >= budget {
                    return None;
                }
                match self.pick_branch() {
                    None => {
                        let values = self.assigns.iter().map(|&a| a == 1).collect();
                        return Some(SolveResult::Sat(SatModel::new(values)));
                    }
                    Some(l) => {
                        self.stats.decisions += 1;
                        self.trail_lim.push(self.trail.len());
                        self.enqueue(l, NO_REASON);
                    }
                }
            }
        }
    }
}

/// Solves `cnf` with the given configuration. A returned model always
/// satisfies every clause.
pub fn solve_cnf_with(cnf: &CnfInstance, config: SolverConfig) -> SolveResult {
    let r = Solver::new(cnf, config).solve();
    if let SolveResult::Sat(m) = &r {
        assert!(cnf.is_satisfied_by(m.values()), "solver produced a non-model");
    }
    r
}

/// Complete decision with the default configuration.
pub fn solve_cnf(cnf: &CnfInstance) -> SolveResult {
    solve_cnf_with(cnf, SolverConfig::default())
}
