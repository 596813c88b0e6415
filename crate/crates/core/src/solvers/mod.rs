//! Maximum-clique solvers, the exact-versus-alternates hardness label, and
//! the per-instance portfolio driver.

mod bitset;
mod exact;
mod heuristics;
mod portfolio;

pub use exact::{brute_force_omega, solve_exact_bnb, BRUTE_FORCE_LIMIT};
pub use heuristics::{solve_greedy, solve_local_search};
pub use portfolio::{run_portfolio, Clock, InstanceRecord, PortfolioConfig, SolverOutcome};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

pub const EXACT_SOLVER: &str = "exact_bnb";
pub const GREEDY_SOLVER: &str = "greedy";
pub const LOCAL_SEARCH_SOLVER: &str = "local_search";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("brute force limited to {limit} vertices, graph has {n}")]
    TooLarge { n: usize, limit: usize },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("reference result is not proven optimal")]
    UnprovenReference,
    #[error("no alternate results to compare against")]
    NoAlternates,
    #[error("{solver} found size {size}, above the proven optimum {optimum}")]
    ExceedsOptimum {
        solver: String,
        size: usize,
        optimum: usize,
    },
    #[error("{solver} returned a vertex set that is not a clique")]
    NotAClique { solver: String },
    #[error(transparent)]
    Features(#[from] crate::features::FeatureError),
}

/// A clique returned by one solver run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CliqueResult {
    /// Sorted ascending.
    pub vertices: Vec<usize>,
    pub size: usize,
    pub proven_optimal: bool,
    /// Wall-clock seconds on a monotonic clock.
    pub elapsed: f64,
    pub solver_name: String,
    pub timed_out: bool,
    /// Deterministic work count (search nodes or local moves).
    pub effort: u64,
}

impl CliqueResult {
    pub(crate) fn new(
        solver: &str,
        mut vertices: Vec<usize>,
        proven_optimal: bool,
        timed_out: bool,
        elapsed: f64,
        effort: u64,
    ) -> Self {
        vertices.sort_unstable();
        CliqueResult {
            size: vertices.len(),
            vertices,
            proven_optimal,
            elapsed,
            solver_name: solver.to_string(),
            timed_out,
            effort,
        }
    }
}

/// Independent completeness check: every listed pair is adjacent, the
/// vertices are distinct and in range.
pub fn is_clique(g: &Graph, vertices: &[usize]) -> bool {
    let n = g.vertex_count();
    for (i, &u) in vertices.iter().enumerate() {
        if u >= n {
            return false;
        }
        for &v in &vertices[i + 1..] {
            if u == v || !g.has_edge(u, v) {
                return false;
            }
        }
    }
    true
}

pub fn verify(g: &Graph, result: &CliqueResult) -> Result<(), SolverError> {
    if result.size != result.vertices.len() || !is_clique(g, &result.vertices) {
        return Err(SolverError::NotAClique {
            solver: result.solver_name.clone(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hardness {
    Hard,
    NotHard,
}

impl Hardness {
    pub fn is_hard(self) -> bool {
        self == Hardness::Hard
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HardnessLabel {
    pub value: Hardness,
    pub reference_size: usize,
    pub alternate_sizes: Vec<usize>,
}

/// Hard iff no alternate reaches the proven-optimal reference size. The gap
/// size is ignored.
pub fn label_hardness(
    reference: &CliqueResult,
    alternates: &[CliqueResult],
) -> Result<HardnessLabel, SolverError> {
    if !reference.proven_optimal {
        return Err(SolverError::UnprovenReference);
    }
    if alternates.is_empty() {
        return Err(SolverError::NoAlternates);
    }
    if let Some(over) = alternates.iter().find(|a| a.size > reference.size) {
        return Err(SolverError::ExceedsOptimum {
            solver: over.solver_name.clone(),
            size: over.size,
            optimum: reference.size,
        });
    }
    let alternate_sizes: Vec<usize> = alternates.iter().map(|a| a.size).collect();
    let value = if alternate_sizes.iter().all(|&s| s < reference.size) {
        Hardness::Hard
    } else {
        Hardness::NotHard
    };
    Ok(HardnessLabel {
        value,
        reference_size: reference.size,
        alternate_sizes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn result(size: usize, proven: bool) -> CliqueResult {
        CliqueResult::new("t", (0..size).collect(), proven, false, 0.0, 0)
    }

    #[test]
    fn none_matched_is_hard() {
        let label =
            label_hardness(&result(10, true), &[result(8, false), result(9, false), result(9, false)])
                .unwrap();
        assert_eq!(label.value, Hardness::Hard);
        assert_eq!(label.alternate_sizes, vec![8, 9, 9]);
    }

    #[test]
    fn one_match_is_not_hard() {
        let label = label_hardness(&result(10, true), &[result(10, false), result(8, false)]).unwrap();
        assert_eq!(label.value, Hardness::NotHard);
    }

    #[test]
    fn label_errors() {
        assert!(matches!(
            label_hardness(&result(10, true), &[result(11, false)]),
            Err(SolverError::ExceedsOptimum { size: 11, optimum: 10, .. })
        ));
        assert_eq!(
            label_hardness(&result(10, false), &[result(10, false)]),
            Err(SolverError::UnprovenReference)
        );
        assert_eq!(
            label_hardness(&result(3, true), &[]),
            Err(SolverError::NoAlternates)
        );
    }

    #[test]
    fn label_is_monotone_in_alternate_sizes() {
        let reference = result(6, true);
        for a in 0..=6 {
            for b in 0..=6 {
                let base = label_hardness(&reference, &[result(a, false), result(b, false)]).unwrap();
                if a < 6 {
                    let better =
                        label_hardness(&reference, &[result(a + 1, false), result(b, false)]).unwrap();
                    assert!(!(base.value == Hardness::NotHard && better.value == Hardness::Hard));
                }
            }
        }
    }

    #[test]
    fn clique_checker() {
        let g = Graph::cycle(5);
        assert!(is_clique(&g, &[0, 1]));
        assert!(!is_clique(&g, &[0, 2]));
        assert!(!is_clique(&g, &[1, 1]));
        assert!(!is_clique(&g, &[7]));
        assert!(is_clique(&g, &[]));
    }
}
