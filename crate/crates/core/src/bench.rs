//! Repeated seeded runs per (graph, algorithm), success tallies and reports.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cost::{count_conflicts, Colouring};
use crate::dica::{run_dica, DicaParams};
use crate::ga::{run_ga, GaParams};
use crate::graph::{Graph, GraphMeta};
use crate::oracle::{chromatic_number_exact, OracleError, OracleLimit};
use crate::run::{RunResult, SolverError};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("chromatic number of `{name}` is unknown and the oracle refused: {source}")]
    UnknownChromatic { name: String, source: OracleError },
    #[error("runs must be positive")]
    NoRuns,
    #[error("no records to report")]
    EmptyReport,
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("json output failed: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Dica,
    Ga,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Dica => "dica",
            Algorithm::Ga => "ga",
        })
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dica" => Ok(Algorithm::Dica),
            "ga" => Ok(Algorithm::Ga),
            other => Err(format!("unknown algorithm `{other}` (expected dica or ga)")),
        }
    }
}

/// Base parameters for one algorithm; the seed is replaced per trial.
#[derive(Debug, Clone, PartialEq)]
pub enum SolverConfig {
    Dica(DicaParams),
    Ga(GaParams),
}

impl SolverConfig {
    pub fn algorithm(&self) -> Algorithm {
        match self {
            SolverConfig::Dica(_) => Algorithm::Dica,
            SolverConfig::Ga(_) => Algorithm::Ga,
        }
    }

    pub fn run(&self, g: &Graph, seed: u64) -> Result<RunResult, SolverError> {
        match self {
            SolverConfig::Dica(p) => run_dica(g, &DicaParams { rng_seed: seed, ..p.clone() }),
            SolverConfig::Ga(p) => run_ga(g, &GaParams { rng_seed: seed, ..p.clone() }),
        }
    }
}

/// One solver run in a benchmark.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub graph: String,
    pub algorithm: Algorithm,
    pub seed: u64,
    pub success: bool,
    pub conflicts: usize,
    pub colours_used: usize,
    pub best_cost: f64,
    pub iterations: usize,
    pub elapsed_ms: f64,
}

/// A trial record with the colouring it was judged on.
#[derive(Debug, Clone, PartialEq)]
pub struct Trial {
    pub record: TrialRecord,
    pub best: Colouring,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialOptions {
    pub runs: usize,
    pub seed_base: u64,
    /// When false, `elapsed_ms` is written as 0 so repeated benchmarks are
    /// byte-identical.
    pub record_timing: bool,
    pub parallel: bool,
}

impl Default for TrialOptions {
    fn default() -> Self {
        TrialOptions {
            runs: 20,
            seed_base: 1,
            record_timing: true,
            parallel: true,
        }
    }
}

/// The known chromatic number, or the oracle's answer within default limits.
pub fn resolve_chromatic(g: &Graph, meta: &GraphMeta) -> Result<usize, BenchError> {
    if let Some(chi) = meta.known_chromatic {
        return Ok(chi);
    }
    chromatic_number_exact(g, OracleLimit::default()).map_err(|source| {
        BenchError::UnknownChromatic {
            name: meta.name.clone(),
            source,
        }
    })
}

pub fn run_trials(
    g: &Graph,
    meta: &GraphMeta,
    config: &SolverConfig,
    options: TrialOptions,
) -> Result<Vec<TrialRecord>, BenchError> {
    Ok(run_trials_detailed(g, meta, config, options)?
        .into_iter()
        .map(|t| t.record)
        .collect())
}

/// Runs `options.runs` trials with seeds `seed_base..seed_base + runs`,
/// ordered by seed. Success is decided by re-checking each returned colouring
/// against the graph, not by the solver's own bookkeeping.
pub fn run_trials_detailed(
    g: &Graph,
    meta: &GraphMeta,
    config: &SolverConfig,
    options: TrialOptions,
) -> Result<Vec<Trial>, BenchError> {
    if options.runs == 0 {
        return Err(BenchError::NoRuns);
    }
    let chi = resolve_chromatic(g, meta)?;
    let one = |i: usize| -> Result<Trial, BenchError> {
        let seed = options.seed_base.wrapping_add(i as u64);
        let start = Instant::now();
        let result = config.run(g, seed)?;
        let elapsed_ms = if options.record_timing {
            start.elapsed().as_secs_f64() * 1e3
        } else {
            0.0
        };
        let conflicts = count_conflicts(g, &result.best).map_err(SolverError::from)?;
        let colours_used = result.best.distinct_colours().map_err(SolverError::from)?;
        Ok(Trial {
            record: TrialRecord {
                graph: meta.name.clone(),
                algorithm: config.algorithm(),
                seed,
                success: conflicts == 0 && colours_used <= chi,
                conflicts,
                colours_used,
                best_cost: result.best_cost,
                iterations: result.decades_executed,
                elapsed_ms,
            },
            best: result.best,
        })
    };
    if options.parallel {
        (0..options.runs).into_par_iter().map(one).collect()
    } else {
        (0..options.runs).map(one).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Table,
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(ReportFormat::Table),
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(format!("unknown format `{other}` (expected table, csv or json)")),
        }
    }
}

/// Aggregate over all trials of one (graph, algorithm) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub graph: String,
    pub algorithm: Algorithm,
    pub runs: usize,
    pub successes: usize,
    pub failures: usize,
    pub mean_best_cost: f64,
    pub min_best_cost: f64,
    /// Mean colours used among successful runs.
    pub mean_colours_success: Option<f64>,
    pub mean_elapsed_ms: f64,
}

impl ReportRow {
    /// `successes(failures)`.
    pub fn cell(&self) -> String {
        format!("{}({})", self.successes, self.failures)
    }
}

/// Groups records by (graph, algorithm) in order of first appearance.
pub fn summarize(records: &[TrialRecord]) -> Vec<ReportRow> {
    let mut keys: Vec<(String, Algorithm)> = Vec::new();
    for r in records {
        let key = (r.graph.clone(), r.algorithm);
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    keys.into_iter()
        .map(|(graph, algorithm)| {
            let group: Vec<&TrialRecord> = records
                .iter()
                .filter(|r| r.graph == graph && r.algorithm == algorithm)
                .collect();
            let runs = group.len();
            let successes = group.iter().filter(|r| r.success).count();
            let mean = |f: &dyn Fn(&TrialRecord) -> f64| {
                group.iter().map(|r| f(r)).sum::<f64>() / runs as f64
            };
            let success_colours: Vec<f64> = group
                .iter()
                .filter(|r| r.success)
                .map(|r| r.colours_used as f64)
                .collect();
            ReportRow {
                runs,
                successes,
                failures: runs - successes,
                mean_best_cost: mean(&|r| r.best_cost),
                min_best_cost: group
                    .iter()
                    .map(|r| r.best_cost)
                    .fold(f64::INFINITY, f64::min),
                mean_colours_success: (!success_colours.is_empty()).then(|| {
                    success_colours.iter().sum::<f64>() / success_colours.len() as f64
                }),
                mean_elapsed_ms: mean(&|r| r.elapsed_ms),
                graph,
                algorithm,
            }
        })
        .collect()
}

pub fn emit_report(records: &[TrialRecord], format: ReportFormat) -> Result<String, BenchError> {
    if records.is_empty() {
        return Err(BenchError::EmptyReport);
    }
    match format {
        ReportFormat::Table => Ok(render_table(&summarize(records))),
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in records {
                w.serialize(r)?;
            }
            let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        ReportFormat::Json => Ok(serde_json::to_string_pretty(records)? + "\n"),
    }
}

fn render_table(rows: &[ReportRow]) -> String {
    let header = [
        "graph", "algorithm", "runs", "S(F)", "mean_cost", "min_cost", "mean_colours", "mean_ms",
    ];
    let body: Vec<[String; 8]> = rows
        .iter()
        .map(|r| {
            [
                r.graph.clone(),
                r.algorithm.to_string(),
                r.runs.to_string(),
                r.cell(),
                format!("{:.2}", r.mean_best_cost),
                format!("{}", r.min_best_cost),
                r.mean_colours_success
                    .map_or_else(|| "-".to_string(), |c| format!("{c:.2}")),
                format!("{:.1}", r.mean_elapsed_ms),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[&str]| {
        let joined: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", joined.join("  ").trim_end());
    };
    line(&header);
    for row in &body {
        line(&row.iter().map(String::as_str).collect::<Vec<_>>());
    }
    out
}
