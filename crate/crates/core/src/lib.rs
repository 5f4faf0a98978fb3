//! Graph colouring with a discrete imperialist competitive algorithm (DICA),
//! a genetic-algorithm baseline, an exact backtracking oracle and a
//! multi-run benchmark harness.

pub mod bench;
pub mod cost;
pub mod dica;
pub mod ga;
pub mod graph;
pub mod operators;
pub mod oracle;
pub mod run;

pub use cost::{Colouring, CostParams};
pub use dica::{run_dica, DicaParams};
pub use ga::{run_ga, GaParams};
pub use graph::{Graph, GraphMeta};
pub use run::{InitMode, RunResult, SolverError, Termination};
