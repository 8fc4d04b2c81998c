//! Corpus classification: runs a fixed list of layout queries on every
//! graph and aggregates the results per vertex count.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::{Duration, Instant};

use mixlay_core::formats::to_graph6;
use mixlay_core::sat::Branching;
use mixlay_core::{solve_layout, verify_mixed, Graph, LayoutOutcome, MixedLayout, SolveError, SolveOptions};
use serde::{Deserialize, Serialize};

use crate::input::{write_output, HarnessError};

/// An `s`-stack `q`-queue existence question.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Query {
    pub stacks: usize,
    pub queues: usize,
}

impl Query {
    pub const fn new(stacks: usize, queues: usize) -> Self {
        Query { stacks, queues }
    }

    /// Whether a layout for `self` also answers `other` (unused pages stay
    /// empty).
    pub fn implies(self, other: Query) -> bool {
        self.stacks <= other.stacks && self.queues <= other.queues
    }

    /// The queries behind the table columns.
    pub fn table_defaults() -> Vec<Query> {
        vec![Query::new(1, 1), Query::new(2, 0), Query::new(3, 0), Query::new(0, 2), Query::new(0, 3)]
    }

    pub fn parse_list(text: &str) -> Result<Vec<Query>, HarnessError> {
        text.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect()
    }
}

impl FromStr for Query {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, HarnessError> {
        let bad = || HarnessError::Query(s.to_string());
        let (a, b) = s.trim().split_once(':').ok_or_else(bad)?;
        let stacks = a.trim().parse().map_err(|_| bad())?;
        let queues = b.trim().parse().map_err(|_| bad())?;
        if stacks + queues == 0 {
            return Err(bad());
        }
        Ok(Query { stacks, queues })
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.stacks, self.queues)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Feasible,
    Infeasible,
    /// Budget exhausted; never counted as infeasible.
    Unknown,
    /// Not run because a smaller feasible query already answers it.
    Implied,
}

impl Status {
    pub fn is_feasible(self) -> bool {
        matches!(self, Status::Feasible | Status::Implied)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryResult {
    pub query: Query,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub id: usize,
    pub n: usize,
    pub m: usize,
    pub graph6: String,
    pub results: Vec<QueryResult>,
}

impl GraphRecord {
    pub fn status(&self, q: Query) -> Option<Status> {
        self.results.iter().find(|r| r.query == q).map(|r| r.status)
    }

    /// `Some(2)` if two pages of one kind suffice, `Some(3)` if two do not
    /// but three do, `None` otherwise (not asked, unknown or more).
    fn two_or_three(&self, pure: impl Fn(usize) -> Query) -> Option<usize> {
        match (self.status(pure(2)), self.status(pure(3))) {
            (Some(s), _) if s.is_feasible() => Some(2),
            (Some(Status::Infeasible), Some(s)) if s.is_feasible() => Some(3),
            _ => None,
        }
    }

    pub fn stack_class(&self) -> Option<usize> {
        self.two_or_three(|p| Query::new(p, 0))
    }

    pub fn queue_class(&self) -> Option<usize> {
        self.two_or_three(|p| Query::new(0, p))
    }

    pub fn has_unknown(&self) -> bool {
        self.results.iter().any(|r| r.status == Status::Unknown)
    }
}

/// One row of the summary table.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowCounts {
    pub n: usize,
    pub total: usize,
    pub mixed: usize,
    pub stack2: usize,
    pub stack3: usize,
    pub queue2: usize,
    pub queue3: usize,
    pub unknown: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub queries: Vec<Query>,
    pub rows: Vec<RowCounts>,
    pub records: Vec<GraphRecord>,
}

impl ClassificationReport {
    fn from_records(queries: Vec<Query>, records: Vec<GraphRecord>) -> Self {
        let mut rows: BTreeMap<usize, RowCounts> = BTreeMap::new();
        for r in &records {
            let row = rows.entry(r.n).or_insert_with(|| RowCounts { n: r.n, ..Default::default() });
            row.total += 1;
            if r.status(Query::new(1, 1)).is_some_and(Status::is_feasible) {
                row.mixed += 1;
            }
            match r.stack_class() {
                Some(2) => row.stack2 += 1,
                Some(3) => row.stack3 += 1,
                _ => {}
            }
            match r.queue_class() {
                Some(2) => row.queue2 += 1,
                Some(3) => row.queue3 += 1,
                _ => {}
            }
            if r.has_unknown() {
                row.unknown += 1;
            }
        }
        ClassificationReport {
            queries,
            rows: rows.into_values().collect(),
            records,
        }
    }

    pub fn row(&self, n: usize) -> Option<&RowCounts> {
        self.rows.iter().find(|r| r.n == n)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Plain-text table with one line per vertex count.
    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>4} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}",
            "n", "total", "mixed", "2-stack", "3-stack", "2-queue", "3-queue", "unknown"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:>4} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}",
                r.n, r.total, r.mixed, r.stack2, r.stack3, r.queue2, r.queue3, r.unknown
            );
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    pub queries: Vec<Query>,
    pub jobs: usize,
    /// Wall-clock budget per graph, shared by all of its queries.
    pub timeout: Option<Duration>,
    pub witness_dir: Option<PathBuf>,
    pub branching: Branching,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            queries: Query::table_defaults(),
            jobs: 1,
            timeout: None,
            witness_dir: None,
            branching: Branching::default(),
        }
    }
}

fn write_witness(dir: &std::path::Path, id: usize, q: Query, g: &Graph, layout: &MixedLayout) -> Result<PathBuf, HarnessError> {
    let path = dir.join(format!("g{id:06}_s{}q{}.json", q.stacks, q.queues));
    write_output(&path, layout.to_json_string().as_bytes())?;
    let reloaded = crate::input::load_layout(&path)?;
    if reloaded != *layout || !verify_mixed(g, &reloaded)?.is_valid() {
        return Err(HarnessError::Witness { path });
    }
    Ok(path)
}

fn classify_one(id: usize, g: &Graph, opts: &ClassifyOptions) -> Result<GraphRecord, HarnessError> {
    let deadline = opts.timeout.map(|t| Instant::now() + t);
    // cheapest first, so that larger queries can be implied
    let mut order: Vec<usize> = (0..opts.queries.len()).collect();
    order.sort_by_key(|&i| {
        let q = opts.queries[i];
        (q.stacks + q.queues, q.queues, i)
    });
    let mut results: Vec<Option<QueryResult>> = vec![None; opts.queries.len()];
    let mut feasible: Vec<Query> = Vec::new();
    for i in order {
        let query = opts.queries[i];
        if feasible.iter().any(|f| f.implies(query)) {
            results[i] = Some(QueryResult { query, status: Status::Implied, witness: None });
            continue;
        }
        let remaining = deadline.map(|d| d.saturating_duration_since(Instant::now()));
        let outcome = if remaining.is_some_and(|r| r.is_zero()) {
            LayoutOutcome::Unknown
        } else {
            let solve = SolveOptions {
                timeout: remaining,
                branching: opts.branching,
                ..SolveOptions::default()
            };
            match solve_layout(g, query.stacks, query.queues, &solve) {
                Ok(o) => o,
                // decode always verifies; a failure here is a solver bug
                Err(e @ SolveError::InvalidWitness(_)) | Err(e @ SolveError::CyclicOrder) => {
                    panic!("graph {id}: {e}")
                }
                Err(_) => LayoutOutcome::Unknown,
            }
        };
        let result = match outcome {
            LayoutOutcome::Feasible(layout) => {
                feasible.push(query);
                let witness = match &opts.witness_dir {
                    Some(dir) => Some(write_witness(dir, id, query, g, &layout)?),
                    None => None,
                };
                QueryResult { query, status: Status::Feasible, witness }
            }
            LayoutOutcome::Infeasible => QueryResult { query, status: Status::Infeasible, witness: None },
            LayoutOutcome::Unknown => QueryResult { query, status: Status::Unknown, witness: None },
        };
        results[i] = Some(result);
    }
    Ok(GraphRecord {
        id,
        n: g.vertex_count(),
        m: g.edge_count(),
        graph6: to_graph6(g),
        results: results.into_iter().map(|r| r.expect("every query visited")).collect(),
    })
}

/// Classifies every graph of `corpus`; ids are corpus positions.
///
/// Graphs are handed to `opts.jobs` workers through a shared counter and
/// results come back over a channel, so the report does not depend on the
/// number of workers.
pub fn classify(corpus: &[Graph], opts: &ClassifyOptions) -> Result<ClassificationReport, HarnessError> {
    if let Some(dir) = &opts.witness_dir {
        std::fs::create_dir_all(dir).map_err(|source| HarnessError::Io {
            path: dir.clone(),
            source,
        })?;
    }
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel();
    std::thread::scope(|scope| {
        for _ in 0..opts.jobs.max(1) {
            let tx = tx.clone();
            let next = &next;
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= corpus.len() {
                    break;
                }
                if tx.send(classify_one(i, &corpus[i], opts)).is_err() {
                    break;
                }
            });
        }
    });
    drop(tx);
    let mut records = rx.into_iter().collect::<Result<Vec<_>, _>>()?;
    records.sort_by_key(|r| r.id);
    Ok(ClassificationReport::from_records(opts.queries.clone(), records))
}
