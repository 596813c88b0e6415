//! Runs the exact reference and the alternates on one instance, times them
//! and attaches features and the hardness label.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::{
    label_hardness, solve_exact_bnb, solve_greedy, solve_local_search, verify, CliqueResult,
    HardnessLabel, SolverError,
};
use crate::features::{extract_features, FeatureVector, DEFAULT_ZERO_TOL};
use crate::graph::Graph;
use crate::stats::median;

/// What the runtime columns measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Clock {
    /// Monotonic wall-clock seconds.
    #[default]
    Wall,
    /// Solver work counts; reproducible across runs and machines.
    Effort,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PortfolioConfig {
    /// Exact-solver limit per run, in seconds.
    pub time_limit: f64,
    /// Local-search restarts.
    pub restarts: usize,
    /// Timed repeats per solver; the median is recorded.
    pub repeats: usize,
    pub seed: u64,
    pub zero_tol: f64,
    pub clock: Clock,
}

impl Default for PortfolioConfig {
    fn default() -> Self {
        PortfolioConfig {
            time_limit: 60.0,
            restarts: 10,
            repeats: 6,
            seed: 0,
            zero_tol: DEFAULT_ZERO_TOL,
            clock: Clock::Wall,
        }
    }
}

/// One solver's representative result and its median runtime.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverOutcome {
    pub result: CliqueResult,
    pub runtime: f64,
}

/// One row of the learning dataset. `label` is `None` when the exact solver
/// timed out; such instances are excluded from training.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceRecord {
    pub id: String,
    pub features: FeatureVector<f64>,
    /// Exact reference first, then the alternates.
    pub outcomes: Vec<SolverOutcome>,
    pub label: Option<HardnessLabel>,
}

impl InstanceRecord {
    pub fn is_resolved(&self) -> bool {
        self.label.is_some()
    }

    pub fn reference(&self) -> &CliqueResult {
        &self.outcomes[0].result
    }
}

fn timed<F>(repeats: usize, clock: Clock, mut run: F) -> Result<SolverOutcome, SolverError>
where
    F: FnMut() -> Result<CliqueResult, SolverError>,
{
    let mut samples = Vec::with_capacity(repeats.max(1));
    let mut last = None;
    for _ in 0..repeats.max(1) {
        let r = run()?;
        samples.push(match clock {
            Clock::Wall => r.elapsed,
            Clock::Effort => r.effort as f64,
        });
        last = Some(r);
    }
    Ok(SolverOutcome {
        result: last.expect("at least one repeat"),
        runtime: median(&samples).expect("non-empty"),
    })
}

/// Features, exact reference, greedy and local-search alternates. Every
/// returned clique is re-verified before it is accepted.
pub fn run_portfolio(
    id: &str,
    g: &Graph,
    config: &PortfolioConfig,
) -> Result<InstanceRecord, SolverError> {
    let features = extract_features(g, config.zero_tol)?;
    let limit = Duration::from_secs_f64(config.time_limit.max(0.0));
    let exact = timed(config.repeats, config.clock, || solve_exact_bnb(g, Some(limit)))?;
    let greedy = timed(config.repeats, config.clock, || solve_greedy(g))?;
    let local = timed(config.repeats, config.clock, || {
        solve_local_search(g, config.restarts, config.seed)
    })?;
    for outcome in [&exact, &greedy, &local] {
        verify(g, &outcome.result)?;
    }
    let label = if exact.result.proven_optimal {
        Some(label_hardness(
            &exact.result,
            &[greedy.result.clone(), local.result.clone()],
        )?)
    } else {
        None
    };
    Ok(InstanceRecord {
        id: id.to_string(),
        features,
        outcomes: vec![exact, greedy, local],
        label,
    })
}
