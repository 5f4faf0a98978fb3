//! Result type and bookkeeping common to both solvers.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cost::{evaluate, Colouring, CostError, CostParams, Evaluation};
use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("empty population")]
    EmptyPopulation,
    #[error(transparent)]
    Cost(#[from] CostError),
}

pub(crate) fn invalid(msg: impl Into<String>) -> SolverError {
    SolverError::InvalidParams(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    DecadesExhausted,
    SingleEmpire,
    EarlyStop,
}

/// Best colouring found by one solver run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub best: Colouring,
    pub best_cost: f64,
    pub conflicts: usize,
    pub colours_used: usize,
    /// Decades (DICA) or generations (GA) actually executed.
    pub decades_executed: usize,
    /// Best-ever cost after each decade.
    pub cost_history: Vec<f64>,
    pub terminated_by: Termination,
}

/// How initial colourings are drawn.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitMode {
    /// Every entry independently uniform in `1..=k_max`.
    #[default]
    Uniform,
    /// A shuffle of the sequence `1, 2, .., k_max, 1, 2, ..` truncated to
    /// length `n`, so colour counts differ by at most one.
    Permuted,
}

impl std::str::FromStr for InitMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform" => Ok(InitMode::Uniform),
            "permuted" => Ok(InitMode::Permuted),
            other => Err(format!("unknown init mode `{other}` (expected uniform or permuted)")),
        }
    }
}

pub fn random_population<R: Rng + ?Sized>(
    n: usize,
    count: usize,
    k_max: u32,
    mode: InitMode,
    rng: &mut R,
) -> Vec<Colouring> {
    (0..count)
        .map(|_| match mode {
            InitMode::Uniform => {
                Colouring::new((0..n).map(|_| rng.gen_range(1..=k_max)).collect())
            }
            InitMode::Permuted => {
                let mut v: Vec<u32> = (0..n as u32).map(|i| i % k_max + 1).collect();
                v.shuffle(rng);
                Colouring::new(v)
            }
        })
        .collect()
}

/// Tracks the best-ever colouring of a run.
pub(crate) struct BestTracker {
    pub best: Colouring,
    pub eval: Evaluation,
    pub history: Vec<f64>,
}

impl BestTracker {
    pub fn new(best: Colouring, eval: Evaluation) -> Self {
        BestTracker {
            best,
            eval,
            history: Vec::new(),
        }
    }

    /// Replaces the incumbent only on strict improvement.
    pub fn offer(&mut self, g: &Graph, candidate: &Colouring, cost: f64, params: CostParams) {
        if cost < self.eval.cost {
            self.best = candidate.clone();
            self.eval = evaluate(g, candidate, params).expect("candidate length checked");
        }
    }

    pub fn record(&mut self) {
        self.history.push(self.eval.cost);
    }

    pub fn reached(&self, target: Option<usize>) -> bool {
        matches!(target, Some(chi) if self.eval.conflicts == 0 && self.eval.colours_used <= chi)
    }

    pub fn finish(self, terminated_by: Termination) -> RunResult {
        RunResult {
            decades_executed: self.history.len(),
            best: self.best,
            best_cost: self.eval.cost,
            conflicts: self.eval.conflicts,
            colours_used: self.eval.colours_used,
            cost_history: self.history,
            terminated_by,
        }
    }
}
