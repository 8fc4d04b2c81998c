//! Encoding sizes and agreement between the SAT engine and brute force.

use mixlay_core::generators::counterexample_gc;
use mixlay_core::sat::{decode, encode, solve_cnf, EncodeOptions, SolveResult};
use mixlay_core::{brute_force_solve, solve_layout, verify_mixed, BruteOutcome, Graph, LayoutOutcome, SolveOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn choose2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

fn choose3(x: usize) -> usize {
    if x < 3 {
        0
    } else {
        x * (x - 1) * (x - 2) / 6
    }
}

/// Independent pairs counted the slow way.
fn independent_pairs(g: &Graph) -> usize {
    let e = g.edges();
    let mut count = 0;
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            if !e[i].shares_endpoint(e[j]) {
                count += 1;
            }
        }
    }
    count
}

/// Vertices in some twin class, found by comparing neighborhoods pairwise,
/// and the number of chain clauses the classes need.
fn twins(g: &Graph) -> (Vec<bool>, usize) {
    let n = g.vertex_count();
    let closed = |v: usize| {
        let mut c = g.neighbors(v).to_vec();
        c.push(v);
        c.sort_unstable();
        c
    };
    let mut is_twin = vec![false; n];
    let mut chains = 0;
    for v in 0..n {
        if g.degree(v) == 0 {
            continue;
        }
        // v links to the previous member of its class, if any
        let earlier = (0..v).any(|u| {
            g.degree(u) > 0 && (g.neighbors(u) == g.neighbors(v) || closed(u) == closed(v))
        });
        let any = (0..n).any(|u| {
            u != v && g.degree(u) > 0 && (g.neighbors(u) == g.neighbors(v) || closed(u) == closed(v))
        });
        is_twin[v] = any;
        chains += usize::from(earlier);
    }
    (is_twin, chains)
}

/// Clause count predicted from the clause families.
fn predicted_clauses(g: &Graph, s: usize, q: usize, opts: EncodeOptions) -> usize {
    let (n, m, p) = (g.vertex_count(), g.edge_count(), s + q);
    let transitivity = 2 * choose3(n);
    let pages = m * (1 + choose2(p));
    let patterns = independent_pairs(g) * 8 * p;
    let (is_twin, chains) = if opts.twin_ordering { twins(g) } else { (vec![false; n], 0) };
    let free = is_twin.iter().filter(|t| !**t).count();
    let mut symmetry = 0;
    if opts.symmetry_breaking {
        symmetry += if q == 0 {
            if free >= 1 { (n - 1) + usize::from(free >= 3) } else { 0 }
        } else {
            usize::from(free >= 2)
        };
        if m > 0 {
            symmetry += s.saturating_sub(1) + q.saturating_sub(1);
        }
    }
    transitivity + pages + patterns + chains + symmetry
}

fn complete(n: usize) -> Graph {
    Graph::from_edge_list(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

#[test]
fn k4_counts_match_closed_form() {
    let k4 = complete(4);
    assert_eq!(independent_pairs(&k4), 3);
    let plain_sym = EncodeOptions {
        twin_ordering: false,
        ..EncodeOptions::default()
    };
    for opts in [EncodeOptions::default(), plain_sym, EncodeOptions::without_symmetry_breaking()] {
        for (s, q) in [(1, 0), (2, 0), (1, 1), (0, 2), (2, 2)] {
            let c = encode(&k4, s, q, opts);
            assert_eq!(c.num_vars(), 6 + 6 * (s + q));
            assert_eq!(c.num_clauses(), predicted_clauses(&k4, s, q, opts), "({s},{q}) {opts:?}");
        }
    }
    // (1,1): 8 transitivity + 12 page + 48 pattern, then either 3 twin
    // chain clauses (all of K4 is one class) or 1 orientation clause
    assert_eq!(encode(&k4, 1, 1, EncodeOptions::default()).num_clauses(), 71);
    assert_eq!(encode(&k4, 1, 1, plain_sym).num_clauses(), 69);
    assert_eq!(encode(&k4, 1, 1, EncodeOptions::without_symmetry_breaking()).num_clauses(), 68);
}

#[test]
fn gc19_counts_match_closed_form() {
    let g = counterexample_gc(19, 7);
    let c = encode(&g, 1, 1, EncodeOptions::default());
    let degree_pairs: usize = (0..g.vertex_count()).map(|v| choose2(g.degree(v))).sum();
    assert_eq!(choose2(361) - degree_pairs, independent_pairs(&g));
    assert_eq!(c.num_vars(), 173 * 172 / 2 + 361 * 2);
    assert_eq!(c.num_vars(), 15600);
    assert_eq!(c.num_clauses(), predicted_clauses(&g, 1, 1, EncodeOptions::default()));
    // twin chains: A<B, s<t per copy, x1<..<x7 per copy; every vertex is a twin
    assert_eq!(c.num_clauses(), 2_684_511 - 1 + 1 + 19 + 19 * 6);
    let plain_sym = EncodeOptions {
        twin_ordering: false,
        ..EncodeOptions::default()
    };
    let c = encode(&g, 1, 1, plain_sym);
    assert_eq!(c.num_clauses(), predicted_clauses(&g, 1, 1, plain_sym));
    assert_eq!(c.num_clauses(), 2_684_511);
}

fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = rng.gen_range(2..=max_n);
    let p = rng.gen_range(0.2..0.9);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::from_edge_list(n, pairs).unwrap()
}

fn sat_feasible(g: &Graph, s: usize, q: usize) -> bool {
    sat_feasible_with(g, s, q, EncodeOptions::default())
}

fn sat_feasible_with(g: &Graph, s: usize, q: usize, encode: EncodeOptions) -> bool {
    let opts = SolveOptions {
        encode,
        ..SolveOptions::default()
    };
    match solve_layout(g, s, q, &opts).unwrap() {
        LayoutOutcome::Feasible(l) => {
            assert!(verify_mixed(g, &l).unwrap().is_valid());
            true
        }
        LayoutOutcome::Infeasible => false,
        LayoutOutcome::Unknown => unreachable!("no budget"),
    }
}

#[test]
fn agrees_with_brute_force_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..150 {
        let g = random_graph(&mut rng, 7);
        for (s, q) in [(1, 0), (2, 0), (0, 1), (0, 2), (1, 1)] {
            let brute = brute_force_solve(&g, s, q, None);
            assert_ne!(brute, BruteOutcome::BudgetExceeded);
            let b = matches!(brute, BruteOutcome::Found(_));
            for opts in [
                EncodeOptions::default(),
                EncodeOptions {
                    twin_ordering: false,
                    ..EncodeOptions::default()
                },
                EncodeOptions::without_symmetry_breaking(),
            ] {
                assert_eq!(sat_feasible_with(&g, s, q, opts), b, "({s},{q}) {opts:?} on {:?}", g.edges());
            }
        }
    }
}

#[test]
fn decode_round_trip_without_symmetry_breaking() {
    let c5 = Graph::from_edge_list(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
    let c = encode(&c5, 0, 1, EncodeOptions::without_symmetry_breaking());
    let SolveResult::Sat(model) = solve_cnf(&c) else {
        panic!("C5 has a 1-queue layout");
    };
    let l = decode(&model, &c, &c5).unwrap();
    assert!(verify_mixed(&c5, &l).unwrap().is_valid());
}

#[test]
fn trees_have_one_queue() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 2..40 {
        let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
        let t = Graph::from_edge_list(n, edges).unwrap();
        assert!(sat_feasible(&t, 0, 1), "tree on {n} vertices");
    }
}

#[test]
fn monotone_in_pages() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let g = random_graph(&mut rng, 8);
        for (s, q) in [(1, 0), (0, 1), (1, 1)] {
            if sat_feasible(&g, s, q) {
                assert!(sat_feasible(&g, s + 1, q));
                assert!(sat_feasible(&g, s, q + 1));
            }
        }
    }
}
