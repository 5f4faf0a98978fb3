//! Runs both solvers on the seven benchmark instances and prints a
//! success(failure) table.

use gcolor_core::bench::{emit_report, run_trials, ReportFormat, SolverConfig, TrialOptions};
use gcolor_core::graph::benchmark_instances;
use gcolor_core::{DicaParams, GaParams};

fn main() {
    let mut records = Vec::new();
    for (g, meta) in benchmark_instances() {
        for config in [
            SolverConfig::Dica(DicaParams::default()),
            SolverConfig::Ga(GaParams::default()),
        ] {
            records.extend(run_trials(&g, &meta, &config, TrialOptions::default()).unwrap());
        }
    }
    print!("{}", emit_report(&records, ReportFormat::Table).unwrap());
}
