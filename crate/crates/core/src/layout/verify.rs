use serde::{Deserialize, Serialize};

use super::{check_covers, relation, LayoutError, MixedLayout, Relation};
use crate::graph::{Edge, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub e: Edge,
    pub f: Edge,
    pub relation: Relation,
    pub page: usize,
}

/// Outcome of [`verify_mixed`]; `valid` is true iff `violations` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn from_violations(violations: Vec<Violation>) -> Self {
        VerifyReport {
            valid: violations.is_empty(),
            violations,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.valid
    }
}

/// Pairwise check of every page: stacks must not contain crossing edges,
/// queues must not contain nested edges.
pub fn verify_mixed(g: &Graph, layout: &MixedLayout) -> Result<VerifyReport, LayoutError> {
    check_covers(g, layout)?;
    let mut violations = Vec::new();
    for page in 0..layout.pages.page_count() {
        let forbidden = layout.pages.kind(page).forbidden();
        let edges = layout.pages.edges_on(page);
        for (i, &e) in edges.iter().enumerate() {
            for &f in &edges[i + 1..] {
                if relation(&layout.order, e, f) == forbidden {
                    violations.push(Violation {
                        e,
                        f,
                        relation: forbidden,
                        page,
                    });
                }
            }
        }
    }
    Ok(VerifyReport::from_violations(violations))
}
