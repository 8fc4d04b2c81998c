//! Exact layout decisions through SAT.

mod cnf;
mod dimacs;
mod solver;

pub use cnf::{encode, CnfError, CnfInstance, EncodeOptions, VarMap};
pub use dimacs::{
    dimacs_string, export_dimacs, format_solver_output, parse_dimacs, parse_solver_output,
    DimacsError, SolverAnswer,
};
pub use solver::{solve_cnf, solve_cnf_with, Branching, SatModel, SolveResult, Solver, SolverConfig, SolverStats};

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::graph::Graph;
use crate::layout::{verify_mixed, MixedLayout, PageAssignment, VertexOrder};

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("order variables do not describe a linear order")]
    CyclicOrder,
    #[error("witness failed verification: {0}")]
    InvalidWitness(String),
    #[error("instance carries no variable map")]
    NotALayoutInstance,
    #[error("external solver failed: {0}")]
    BackendFailure(String),
}

/// Reads the layout described by `model`. The result is verified against
/// `g` before it is returned.
pub fn decode(model: &SatModel, c: &CnfInstance, g: &Graph) -> Result<MixedLayout, SolveError> {
    let map = c.varmap().ok_or(SolveError::NotALayoutInstance)?;
    let n = map.n;
    if n != g.vertex_count() || map.edges != g.edges() {
        return Err(SolveError::InvalidWitness("instance was encoded from another graph".into()));
    }
    // position of v = number of vertices before it
    let mut order = vec![usize::MAX; n];
    for v in 0..n {
        let pos = (0..n).filter(|&u| u != v && model.value(map.before(u, v))).count();
        if order[pos] != usize::MAX {
            return Err(SolveError::CyclicOrder);
        }
        order[pos] = v;
    }
    let order = VertexOrder::new(order).map_err(|_| SolveError::CyclicOrder)?;

    let mut pages = PageAssignment::new(map.stacks, map.queues);
    for (i, &e) in map.edges.iter().enumerate() {
        let p = (0..map.pages())
            .find(|&p| model.value(map.page_var(i, p)))
            .ok_or_else(|| SolveError::InvalidWitness(format!("edge {e} has no page")))?;
        pages.assign(e, p).expect("each edge visited once");
    }
    let layout = MixedLayout { order, pages };
    let report = verify_mixed(g, &layout).map_err(|e| SolveError::InvalidWitness(e.to_string()))?;
    if !report.is_valid() {
        return Err(SolveError::InvalidWitness(format!(
            "{} violations, first {:?}",
            report.violations.len(),
            report.violations[0]
        )));
    }
    Ok(layout)
}

/// Which solver answers the CNF.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Backend {
    #[default]
    Embedded,
    /// An external program reading DIMACS. In `args`, `{cnf}` is replaced by
    /// the instance path and `{out}` by a result file path; if `{cnf}` does
    /// not occur the path is appended. Without `{out}`, the answer is read
    /// from standard output.
    ExternalDimacs { program: PathBuf, args: Vec<String> },
}

#[derive(Debug, Clone, Default)]
pub struct SolveOptions {
    pub backend: Backend,
    pub encode: EncodeOptions,
    pub branching: Branching,
    pub timeout: Option<Duration>,
    pub conflict_limit: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LayoutOutcome {
    Feasible(MixedLayout),
    Infeasible,
    /// The time or conflict budget ran out.
    Unknown,
}

impl LayoutOutcome {
    pub fn layout(&self) -> Option<&MixedLayout> {
        match self {
            LayoutOutcome::Feasible(l) => Some(l),
            _ => None,
        }
    }
}

fn run_external(c: &CnfInstance, program: &PathBuf, args: &[String], timeout: Option<Duration>) -> Result<SolveResult, SolveError> {
    let fail = |e: &dyn std::fmt::Display| SolveError::BackendFailure(e.to_string());
    let dir = tempfile::tempdir().map_err(|e| fail(&e))?;
    let cnf_path = dir.path().join("instance.cnf");
    let out_path = dir.path().join("result.txt");
    let mut file = std::fs::File::create(&cnf_path).map_err(|e| fail(&e))?;
    export_dimacs(c, &mut file).map_err(|e| fail(&e))?;
    drop(file);

    let cnf_s = cnf_path.to_string_lossy().into_owned();
    let out_s = out_path.to_string_lossy().into_owned();
    let mut argv: Vec<String> = args
        .iter()
        .map(|a| a.replace("{cnf}", &cnf_s).replace("{out}", &out_s))
        .collect();
    if !args.iter().any(|a| a.contains("{cnf}")) {
        argv.push(cnf_s);
    }
    let uses_out = args.iter().any(|a| a.contains("{out}"));

    let mut child = Command::new(program)
        .args(&argv)
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::null())
        .spawn()
        .map_err(|e| fail(&format!("{}: {e}", program.display())))?;
    // drain stdout on a thread so a chatty solver never blocks
    let mut stdout = child.stdout.take().expect("piped stdout");
    let reader = std::thread::spawn(move || {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut stdout, &mut s).map(|_| s)
    });
    let start = Instant::now();
    loop {
        if child.try_wait().map_err(|e| fail(&e))?.is_some() {
            break;
        }
        if timeout.is_some_and(|t| start.elapsed() >= t) {
            let _ = child.kill();
            let _ = child.wait();
            return Ok(SolveResult::Unknown);
        }
        std::thread::sleep(Duration::from_millis(5));
    }
    let stdout = reader
        .join()
        .map_err(|_| fail(&"reader thread panicked"))?
        .map_err(|e| fail(&e))?;
    let text = if uses_out {
        std::fs::read_to_string(&out_path).map_err(|e| fail(&e))?
    } else {
        stdout
    };
    match parse_solver_output(&text).map_err(|e| fail(&e))? {
        SolverAnswer::Unsat => Ok(SolveResult::Unsat),
        SolverAnswer::Unknown => Ok(SolveResult::Unknown),
        SolverAnswer::Sat(lits) => {
            let mut values = vec![false; c.num_vars()];
            for l in lits {
                let v = l.unsigned_abs() as usize;
                if v == 0 || v > values.len() {
                    return Err(fail(&format!("literal {l} out of range")));
                }
                values[v - 1] = l > 0;
            }
            if !c.is_satisfied_by(&values) {
                return Err(fail(&"reported model does not satisfy the instance"));
            }
            Ok(SolveResult::Sat(SatModel::new(values)))
        }
    }
}

/// Encodes, solves and decodes. A feasible outcome always carries a
/// verified layout.
pub fn solve_layout(g: &Graph, s: usize, q: usize, opts: &SolveOptions) -> Result<LayoutOutcome, SolveError> {
    if g.edge_count() == 0 {
        let layout = MixedLayout {
            order: VertexOrder::identity(g.vertex_count()),
            pages: PageAssignment::new(s, q),
        };
        return Ok(LayoutOutcome::Feasible(layout));
    }
    if s + q == 0 {
        return Ok(LayoutOutcome::Infeasible);
    }
    let c = encode(g, s, q, opts.encode);
    let result = match &opts.backend {
        Backend::Embedded => solve_cnf_with(
            &c,
            SolverConfig {
                branching: opts.branching,
                conflict_limit: opts.conflict_limit,
                deadline: opts.timeout.map(|t| Instant::now() + t),
            },
        ),
        Backend::ExternalDimacs { program, args } => run_external(&c, program, args, opts.timeout)?,
    };
    match result {
        SolveResult::Sat(model) => Ok(LayoutOutcome::Feasible(decode(&model, &c, g)?)),
        SolveResult::Unsat => Ok(LayoutOutcome::Infeasible),
        SolveResult::Unknown => Ok(LayoutOutcome::Unknown),
    }
}
