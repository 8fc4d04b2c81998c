//! DIMACS CNF output and parsing of solver answers.

use std::io::{self, Write};

use thiserror::Error;

use super::cnf::{CnfError, CnfInstance};

#[derive(Debug, Error)]
pub enum DimacsError {
    #[error("missing or malformed problem line")]
    ProblemLine,
    #[error("bad token {0:?}")]
    Token(String),
    #[error("expected {expected} clauses, found {got}")]
    ClauseCount { expected: usize, got: usize },
    #[error(transparent)]
    Clause(#[from] CnfError),
    #[error("no recognizable solver answer")]
    NoAnswer,
}

/// Writes `c` as DIMACS CNF.
pub fn export_dimacs(c: &CnfInstance, sink: &mut impl Write) -> io::Result<()> {
    let mut w = io::BufWriter::new(sink);
    if let Some(m) = c.varmap() {
        writeln!(
            w,
            "c mixed layout: n={} m={} stacks={} queues={}",
            m.n,
            m.edges.len(),
            m.stacks,
            m.queues
        )?;
    }
    writeln!(w, "p cnf {} {}", c.num_vars(), c.num_clauses())?;
    for clause in c.clauses() {
        for l in clause {
            write!(w, "{l} ")?;
        }
        writeln!(w, "0")?;
    }
    w.flush()
}

pub fn dimacs_string(c: &CnfInstance) -> String {
    let mut buf = Vec::new();
    export_dimacs(c, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ASCII output")
}

/// Parses DIMACS CNF. Clauses may span lines; comments start with `c`.
pub fn parse_dimacs(text: &str) -> Result<CnfInstance, DimacsError> {
    let mut cnf: Option<(CnfInstance, usize)> = None;
    let mut current: Vec<i32> = Vec::new();
    for line in text.lines() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('c') || t.starts_with('%') {
            continue;
        }
        if t.starts_with('p') {
            let parts: Vec<&str> = t.split_whitespace().collect();
            if cnf.is_some() || parts.len() != 4 || parts[1] != "cnf" {
                return Err(DimacsError::ProblemLine);
            }
            let vars = parts[2].parse().map_err(|_| DimacsError::ProblemLine)?;
            let clauses = parts[3].parse().map_err(|_| DimacsError::ProblemLine)?;
            cnf = Some((CnfInstance::new(vars), clauses));
            continue;
        }
        let (c, _) = cnf.as_mut().ok_or(DimacsError::ProblemLine)?;
        for tok in t.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| DimacsError::Token(tok.to_string()))?;
            if lit == 0 {
                c.add_clause(&current)?;
                current.clear();
            } else {
                current.push(lit);
            }
        }
    }
    let (mut c, expected) = cnf.ok_or(DimacsError::ProblemLine)?;
    if !current.is_empty() {
        c.add_clause(&current)?;
    }
    if c.num_clauses() != expected {
        return Err(DimacsError::ClauseCount {
            expected,
            got: c.num_clauses(),
        });
    }
    Ok(c)
}

/// What an external solver reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverAnswer {
    /// Satisfiable, with the literals it listed.
    Sat(Vec<i32>),
    Unsat,
    Unknown,
}

/// Reads competition-style output (`s SATISFIABLE` plus `v` lines) or the
/// minisat result file format (`SAT` followed by a literal line).
pub fn parse_solver_output(text: &str) -> Result<SolverAnswer, DimacsError> {
    let mut status: Option<SolverAnswer> = None;
    let mut lits = Vec::new();
    let mut minisat_body = false;
    for line in text.lines() {
        let t = line.trim();
        let mut push = |rest: &str| -> Result<(), DimacsError> {
            for tok in rest.split_whitespace() {
                let l: i32 = tok.parse().map_err(|_| DimacsError::Token(tok.to_string()))?;
                if l != 0 {
                    lits.push(l);
                }
            }
            Ok(())
        };
        if let Some(rest) = t.strip_prefix("s ") {
            status = Some(match rest.trim() {
                "SATISFIABLE" => SolverAnswer::Sat(Vec::new()),
                "UNSATISFIABLE" => SolverAnswer::Unsat,
                _ => SolverAnswer::Unknown,
            });
        } else if let Some(rest) = t.strip_prefix("v ") {
            push(rest)?;
        } else if t == "SAT" {
            status = Some(SolverAnswer::Sat(Vec::new()));
            minisat_body = true;
        } else if t == "UNSAT" {
            status = Some(SolverAnswer::Unsat);
        } else if t == "INDET" {
            status = Some(SolverAnswer::Unknown);
        } else if minisat_body && !t.is_empty() {
            push(t)?;
        }
    }
    match status.ok_or(DimacsError::NoAnswer)? {
        SolverAnswer::Sat(_) => Ok(SolverAnswer::Sat(lits)),
        other => Ok(other),
    }
}

/// Competition-style rendering of an answer (inverse of
/// [`parse_solver_output`]).
pub fn format_solver_output(answer: &SolverAnswer) -> String {
    match answer {
        SolverAnswer::Sat(lits) => {
            let mut out = String::from("s SATISFIABLE\n");
            for chunk in lits.chunks(20) {
                out.push('v');
                for l in chunk {
                    out.push(' ');
                    out.push_str(&l.to_string());
                }
                out.push('\n');
            }
            out.push_str("v 0\n");
            out
        }
        SolverAnswer::Unsat => "s UNSATISFIABLE\n".to_string(),
        SolverAnswer::Unknown => "s UNKNOWN\n".to_string(),
    }
}
