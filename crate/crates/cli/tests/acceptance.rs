//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.
//!
//! Environment switches:
//! * `MIXLAY_SKIP_FULL_GC=1` skips the full-scale solve of Gc(19) (about
//!   20 s); the desk-scale checks of criterion 5 still run.
//! * `MIXLAY_TABLE_N12=1` adds the n = 12 row to criterion 1.

mod support;

use std::io::Write;
use std::process::{Command, Stdio};
use std::time::Instant;

use mixlay_cli::classify::{classify, ClassifyOptions};
use mixlay_core::concentric::concentric_layout;
use mixlay_core::formats::read_graphs;
use mixlay_core::generators::{counterexample_gc, goldner_harary, random_triangulation, GadgetSpec};
use mixlay_core::sat::parse_dimacs;
use mixlay_core::{
    brute_force_solve, planar_embed, solve_layout, stack_number, verify_mixed, BruteOutcome, Graph, LayoutOutcome,
    MixedLayout, PageAssignment, PageKind, SolveOptions, VertexOrder,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::enumerate::planar_code_corpus;

const BIN: &str = env!("CARGO_BIN_EXE_mixlay");

/// Published counts: n, total, mixed, 2-stack, 3-stack, 2-queue, 3-queue.
const TABLE: [[usize; 7]; 9] = [
    [4, 1, 1, 1, 0, 1, 0],
    [5, 1, 1, 1, 0, 1, 0],
    [6, 2, 2, 2, 0, 2, 0],
    [7, 5, 5, 5, 0, 5, 0],
    [8, 14, 14, 14, 0, 14, 0],
    [9, 50, 50, 50, 0, 50, 0],
    [10, 233, 233, 233, 0, 233, 0],
    [11, 1249, 1249, 1248, 1, 1249, 0],
    [12, 7595, 7595, 7593, 2, 7595, 0],
];

const QUERIES: [(usize, usize); 5] = [(1, 0), (2, 0), (0, 1), (0, 2), (1, 1)];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn flag(name: &str) -> bool {
    std::env::var(name).is_ok_and(|v| !v.is_empty() && v != "0")
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(2, |n| n.get())
}

fn table_rows() -> Outcome {
    let max_n = if flag("MIXLAY_TABLE_N12") { 12 } else { 11 };
    let mut failures = Vec::new();
    let mut total = 0;
    for row in TABLE.iter().filter(|r| r[0] <= max_n) {
        let n = row[0];
        // planar_code through the regular corpus reader
        let corpus = read_graphs(&planar_code_corpus(n)).map_err(|e| e.to_string())?;
        let opts = ClassifyOptions { jobs: jobs(), ..Default::default() };
        let report = classify(&corpus, &opts).map_err(|e| e.to_string())?;
        let got = report
            .row(n)
            .map(|r| [r.n, r.total, r.mixed, r.stack2, r.stack3, r.queue2, r.queue3])
            .unwrap_or([n, 0, 0, 0, 0, 0, 0]);
        let unknown = report.row(n).map_or(0, |r| r.unknown);
        if got != *row || unknown > 0 {
            failures.push(format!("n={n}: got {got:?} ({unknown} unknown), expected {row:?}"));
        }
        total += corpus.len();
    }
    if failures.is_empty() {
        Ok(format!("rows n=4..{max_n} match exactly ({total} graphs)"))
    } else {
        Err(failures.join("; "))
    }
}

fn sat_feasible(g: &Graph, s: usize, q: usize) -> Result<bool, String> {
    match solve_layout(g, s, q, &SolveOptions::default()).map_err(|e| e.to_string())? {
        LayoutOutcome::Feasible(l) => {
            let ok = verify_mixed(g, &l).map_err(|e| e.to_string())?.is_valid();
            ok.then_some(true).ok_or_else(|| "SAT witness fails verification".to_string())
        }
        LayoutOutcome::Infeasible => Ok(false),
        LayoutOutcome::Unknown => Err("SAT undecided without a budget".into()),
    }
}

fn brute_feasible(g: &Graph, s: usize, q: usize) -> Result<bool, String> {
    match brute_force_solve(g, s, q, None) {
        BruteOutcome::Found(l) => {
            let ok = verify_mixed(g, &l).map_err(|e| e.to_string())?.is_valid();
            ok.then_some(true).ok_or_else(|| "brute-force witness fails verification".to_string())
        }
        BruteOutcome::Infeasible => Ok(false),
        BruteOutcome::BudgetExceeded => Err("brute force ran out of budget".into()),
    }
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut corpus: Vec<Graph> = (0..1000).map(|_| support::random_graph(&mut rng, 7)).collect();
    for n in 4..=8 {
        corpus.extend(read_graphs(&planar_code_corpus(n)).map_err(|e| e.to_string())?);
    }
    let mut mismatches = Vec::new();
    let mut feasible = 0;
    for (i, g) in corpus.iter().enumerate() {
        for (s, q) in QUERIES {
            let (a, b) = (sat_feasible(g, s, q)?, brute_feasible(g, s, q)?);
            if a != b {
                mismatches.push(format!("graph {i} ({s},{q}): sat {a}, brute {b}"));
            }
            feasible += usize::from(a);
        }
    }
    let checks = corpus.len() * QUERIES.len();
    if mismatches.is_empty() {
        Ok(format!("{} graphs, {checks} queries agree ({feasible} feasible)", corpus.len()))
    } else {
        Err(mismatches.join("; "))
    }
}

/// Checks that `sub` arises from `g` by putting at most one new vertex on
/// each edge, and returns the number of new vertices.
fn check_subdivision(g: &Graph, sub: &Graph) -> Result<usize, String> {
    let (n, extra) = (g.vertex_count(), sub.vertex_count() - g.vertex_count());
    let mut used = vec![false; g.edge_count()];
    for d in n..sub.vertex_count() {
        let &[a, b] = sub.neighbors(d) else {
            return Err(format!("division vertex {d} does not have degree 2"));
        };
        if a >= n || b >= n {
            return Err(format!("division vertex {d} is next to another division vertex"));
        }
        let e = g.edge_id(a, b).ok_or(format!("{d} subdivides a non-edge {a}-{b}"))?;
        if std::mem::replace(&mut used[e], true) {
            return Err(format!("edge {a}-{b} carries two division vertices"));
        }
    }
    for (i, e) in g.edges().iter().enumerate() {
        if !used[i] && !sub.has_edge(e.lo(), e.hi()) {
            return Err(format!("edge {e} is missing"));
        }
    }
    if sub.edge_count() != g.edge_count() + extra {
        return Err("unexpected extra edges".into());
    }
    Ok(extra)
}

fn concentric_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut runs = 0;
    let mut divisions = 0;
    for i in 0..100u64 {
        let n = rng.gen_range(4..=50);
        let g = random_triangulation(n, 1000 + i);
        for origin in [0, n - 1, rng.gen_range(0..n)] {
            let tag = format!("triangulation {i} (n={n}) origin {origin}");
            let out = concentric_layout(&g, origin).map_err(|e| format!("{tag}: {e}"))?;
            let report = verify_mixed(&out.subdivided.graph, &out.layout).map_err(|e| format!("{tag}: {e}"))?;
            if !report.is_valid() {
                return Err(format!("{tag}: {} violations", report.violations.len()));
            }
            let pages = &out.layout.pages;
            if (pages.page_count(), pages.count(PageKind::Stack), pages.count(PageKind::Queue)) != (2, 1, 1) {
                return Err(format!("{tag}: not one stack and one queue"));
            }
            divisions += check_subdivision(&g, &out.subdivided.graph).map_err(|e| format!("{tag}: {e}"))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} layouts valid on 1 stack + 1 queue, {divisions} division vertices, none doubled"))
}

fn gc_structure() -> Outcome {
    let g = counterexample_gc(19, 7);
    let (n, m) = (g.vertex_count(), g.edge_count());
    let rot = planar_embed(&g).map_err(|_| "Gc(19) rejected as non-planar".to_string())?;
    if (n, m) != (173, 361) {
        return Err(format!("|V|={n}, |E|={m}"));
    }
    if !rot.satisfies_euler(&g) {
        return Err("embedding violates Euler's formula".into());
    }
    Ok(format!("|V|=173, |E|=361, planar with {} faces", rot.face_count()))
}

fn choose(x: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (x - i) / (i + 1))
}

/// Expected DIMACS header of the Gc(k, c) 1-stack 1-queue instance, from
/// the gadget structure alone.
fn predicted_header(k: usize, c: usize, symmetry: bool) -> (usize, usize) {
    let n = 2 + k * (2 + c);
    let m = k * (5 + 2 * c);
    // degrees: A and B 2k, twins c+3, connectors 2
    let adjacent_pairs = 2 * choose(2 * k, 2) + 2 * k * choose(c + 3, 2) + k * c * choose(2, 2);
    let independent = choose(m, 2) - adjacent_pairs;
    let vars = choose(n, 2) + 2 * m;
    let base = 2 * choose(n, 3) + 2 * m + 8 * 2 * independent;
    // twin chains A < B, s < t and x_1 < .. < x_c per copy; every vertex
    // is a twin, so no orientation unit is added on top
    let chains = if symmetry { 1 + k + k * (c - 1) } else { 0 };
    (vars, base + chains)
}

fn run_bin(args: &[&str], stdin: &[u8]) -> Result<(i32, Vec<u8>), String> {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .map_err(|e| e.to_string())?;
    child.stdin.take().unwrap().write_all(stdin).map_err(|e| e.to_string())?;
    let out = child.wait_with_output().map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

/// Naive 1-stack test over all orders of a small graph.
fn has_one_stack_layout(g: &Graph) -> bool {
    fn permutations(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(k - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, k - 1);
                out.push(q);
            }
        }
        out
    }
    let edges: Vec<[usize; 2]> = g.edges().iter().map(|&e| e.into()).collect();
    permutations(g.vertex_count())
        .iter()
        .any(|order| support::naive_violations(order, &[(true, edges.clone())]).is_empty())
}

fn gc_infeasible() -> Outcome {
    let (_, gc) = run_bin(&["gen", "gc", "--copies", "19", "--connectors", "7"], b"")?;
    let mut notes = Vec::new();
    for (symmetry, extra) in [(true, &[][..]), (false, &["--no-symmetry"][..])] {
        let (code, cnf) = run_bin(&[&["export-cnf", "--stacks", "1", "--queues", "1"], extra].concat(), &gc)?;
        let text = String::from_utf8(cnf).map_err(|e| e.to_string())?;
        if code != 0 {
            return Err("export-cnf failed".into());
        }
        let parsed = parse_dimacs(&text).map_err(|e| e.to_string())?;
        let got = (parsed.num_vars(), parsed.num_clauses());
        let expected = predicted_header(19, 7, symmetry);
        if got != expected {
            return Err(format!("DIMACS size {got:?}, predicted {expected:?}"));
        }
        notes.push(format!("{}/{}", got.0, got.1));
    }

    // the twins and three connectors of one gadget form an outerplanarity
    // obstruction
    let spec = GadgetSpec::default();
    let core = [spec.s(0), spec.t(0), spec.x(0, 5), spec.x(0, 6), spec.x(0, 7)];
    let (h, _) = counterexample_gc(19, 7).induced(&core);
    if h.edge_count() != 7 || brute_force_solve(&h, 1, 0, None) != BruteOutcome::Infeasible || has_one_stack_layout(&h) {
        return Err("core gadget subgraph has a 1-stack layout".into());
    }

    if flag("MIXLAY_SKIP_FULL_GC") {
        return Ok(format!(
            "DIMACS vars/clauses {} match prediction; core subgraph not 1-stack; full solve skipped",
            notes.join(" and ")
        ));
    }
    let start = Instant::now();
    let (code, out) = run_bin(&["solve", "--stacks", "1", "--queues", "1"], &gc)?;
    let status = String::from_utf8_lossy(&out).into_owned();
    if code != 1 || !status.contains("\"infeasible\"") {
        return Err(format!("full solve exit {code}: {}", status.trim()));
    }
    Ok(format!(
        "DIMACS vars/clauses {} match prediction; core subgraph not 1-stack; Gc(19) infeasible in {:.1} s",
        notes.join(" and "),
        start.elapsed().as_secs_f64()
    ))
}

fn small_facts() -> Outcome {
    let g = goldner_harary();
    if (g.vertex_count(), g.edge_count()) != (11, 27) || planar_embed(&g).is_err() {
        return Err("not an 11-vertex maximal planar graph".into());
    }
    let sn = stack_number(&g, 4).map_err(|e| e.to_string())?;
    if sn != 3 {
        return Err(format!("stack number {sn}"));
    }
    match solve_layout(&g, 1, 1, &SolveOptions::default()).map_err(|e| e.to_string())? {
        LayoutOutcome::Feasible(l) if verify_mixed(&g, &l).is_ok_and(|r| r.is_valid()) => {
            Ok("Goldner-Harary: stack number 3, 1 stack + 1 queue layout verified".into())
        }
        other => Err(format!("mixed query gave {other:?}")),
    }
}

fn verifier_fuzz() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut valid = 0;
    for round in 0..10_000 {
        let g = support::random_graph(&mut rng, 9);
        let mut order: Vec<usize> = (0..g.vertex_count()).collect();
        order.shuffle(&mut rng);
        let (s, q) = loop {
            let (s, q) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
            if s + q > 0 {
                break (s, q);
            }
        };
        let mut pages = PageAssignment::new(s, q);
        for &e in g.edges() {
            pages.assign(e, rng.gen_range(0..s + q)).unwrap();
        }
        let naive_pages: Vec<(bool, Vec<[usize; 2]>)> = (0..s + q)
            .map(|p| {
                let edges = g.edges().iter().filter(|&&e| pages.page(e) == Some(p)).map(|&e| e.into()).collect();
                (pages.kind(p) == PageKind::Stack, edges)
            })
            .collect();
        let layout = MixedLayout { order: VertexOrder::new(order.clone()).unwrap(), pages };
        let report = verify_mixed(&g, &layout).map_err(|e| e.to_string())?;
        let mut got: Vec<(usize, [usize; 2], [usize; 2])> = report
            .violations
            .iter()
            .map(|v| {
                let (e, f): ([usize; 2], [usize; 2]) = (v.e.into(), v.f.into());
                (v.page, e.min(f), e.max(f))
            })
            .collect();
        got.sort();
        let expected = support::naive_violations(&order, &naive_pages);
        if got != expected || report.is_valid() != expected.is_empty() {
            return Err(format!("round {round}: verifier {got:?}, naive {expected:?}"));
        }
        valid += usize::from(report.is_valid());
    }
    Ok(format!("10000 pairs agree ({valid} valid, {} invalid)", 10_000 - valid))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("table rows for small maximal planar graphs", table_rows),
        ("SAT and brute force agree", oracle_equivalence),
        ("concentric layouts of subdivided triangulations", concentric_suite),
        ("counterexample size and planarity", gc_structure),
        ("counterexample has no 1 stack + 1 queue layout", gc_infeasible),
        ("11-vertex graph needing three stacks", small_facts),
        ("verifier against a naive pair scan", verifier_fuzz),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{}] {name}: {detail} ({secs:.1} s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{}] {name}: {detail} ({secs:.1} s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
