//! Stack and queue numbers by iterating the decision procedure.

use thiserror::Error;

use crate::graph::Graph;
use crate::layout::{brute_force_solve, BruteOutcome, PageKind};
use crate::sat::{solve_layout, LayoutOutcome, SolveError, SolveOptions};

#[derive(Debug, Error)]
pub enum NumberError {
    #[error("no layout with at most {0} pages")]
    ExceedsMax(usize),
    #[error("undecided at {0} pages within the budget")]
    Undecided(usize),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Non-isolated vertex count up to which the brute-force oracle is used
/// when the solver runs out of budget.
const BRUTE_FALLBACK_MAX: usize = 8;

fn feasible(g: &Graph, pages: usize, kind: PageKind, opts: &SolveOptions) -> Result<bool, NumberError> {
    let (s, q) = match kind {
        PageKind::Stack => (pages, 0),
        PageKind::Queue => (0, pages),
    };
    match solve_layout(g, s, q, opts)? {
        LayoutOutcome::Feasible(_) => Ok(true),
        LayoutOutcome::Infeasible => Ok(false),
        LayoutOutcome::Unknown => {
            let active = (0..g.vertex_count()).filter(|&v| g.degree(v) > 0).count();
            if active > BRUTE_FALLBACK_MAX {
                return Err(NumberError::Undecided(pages));
            }
            match brute_force_solve(g, s, q, None) {
                BruteOutcome::Found(_) => Ok(true),
                BruteOutcome::Infeasible => Ok(false),
                BruteOutcome::BudgetExceeded => Err(NumberError::Undecided(pages)),
            }
        }
    }
}

/// Smallest number of pages of one kind, at most `max`. Edgeless graphs
/// need none.
pub fn page_number(g: &Graph, kind: PageKind, max: usize, opts: &SolveOptions) -> Result<usize, NumberError> {
    if g.edge_count() == 0 {
        return Ok(0);
    }
    for p in 1..=max {
        if feasible(g, p, kind, opts)? {
            return Ok(p);
        }
    }
    Err(NumberError::ExceedsMax(max))
}

pub fn stack_number(g: &Graph, max: usize) -> Result<usize, NumberError> {
    page_number(g, PageKind::Stack, max, &SolveOptions::default())
}

pub fn queue_number(g: &Graph, max: usize) -> Result<usize, NumberError> {
    page_number(g, PageKind::Queue, max, &SolveOptions::default())
}
