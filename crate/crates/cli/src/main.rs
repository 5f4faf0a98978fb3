use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use gcolor_core::bench::{
    emit_report, resolve_chromatic, run_trials, Algorithm, ReportFormat, SolverConfig,
    TrialOptions,
};
use gcolor_core::cost::evaluate;
use gcolor_core::graph::{benchmark_instances, parse_dimacs, write_dimacs, Family};
use gcolor_core::oracle::{chromatic_number_exact, exists_colouring, OracleError, OracleLimit};
use gcolor_core::{run_dica, run_ga, DicaParams, GaParams, Graph, GraphMeta, InitMode};
use log::{info, warn};

const EXIT_ERROR: u8 = 1;
const EXIT_CONFLICTS: u8 = 2;
const EXIT_REFUSED: u8 = 3;

/// Writes to standard output, treating a closed pipe as success.
fn emit(text: &str) -> Result<()> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

/// Graph colouring with DICA and a GA baseline.
#[derive(Debug, Parser)]
#[command(name = "gcolor", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a benchmark graph in DIMACS format.
    Gen {
        /// complete, mycielski or queen
        family: String,
        /// Clique size, Mycielski level or board side.
        param: usize,
        /// Output file; standard output if omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run one seeded solve on a DIMACS file.
    Solve {
        graph: PathBuf,
        #[arg(long, default_value = "dica")]
        algo: Algorithm,
        /// Known chromatic number, used by --early-stop.
        #[arg(long)]
        chromatic: Option<usize>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Repeated seeded runs with a success/failure report.
    Bench {
        /// DIMACS files or generator specs such as `complete:15`.
        graphs: Vec<String>,
        /// Add the seven standard benchmark instances.
        #[arg(long)]
        table1: bool,
        #[arg(long, value_delimiter = ',', default_value = "dica,ga")]
        algos: Vec<Algorithm>,
        #[arg(long, default_value_t = 20)]
        runs: usize,
        #[arg(long, default_value_t = 1)]
        seed_base: u64,
        #[arg(long, default_value = "table")]
        format: ReportFormat,
        /// Chromatic number for an instance, as NAME=K. Repeatable.
        #[arg(long, value_parser = parse_override)]
        chromatic: Vec<(String, usize)>,
        /// Write elapsed_ms as 0 so repeated runs are byte-identical.
        #[arg(long)]
        no_timing: bool,
        /// Run trials one after another.
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Exact chromatic number, or whether a k-colouring exists.
    Oracle {
        graph: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = OracleLimit::default().max_vertices)]
        max_vertices: usize,
        #[arg(long, default_value_t = OracleLimit::default().node_budget)]
        node_budget: u64,
    },
}

#[derive(Debug, Args)]
struct SolverArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, visible_alias = "pop", default_value_t = 300)]
    population_size: usize,
    #[arg(long, default_value_t = 0.10)]
    imperialist_fraction: f64,
    #[arg(long, default_value_t = 100)]
    decades: usize,
    #[arg(long, default_value_t = 100)]
    generations: usize,
    #[arg(long, default_value_t = 0.25)]
    revolution_rate: f64,
    #[arg(long, default_value_t = 0.02)]
    uniting_threshold: f64,
    #[arg(long, default_value_t = 0.90)]
    damp_ratio: f64,
    #[arg(long, default_value_t = 0.1)]
    xi: f64,
    /// Conflict penalty [default: vertex count]
    #[arg(long)]
    penalty: Option<f64>,
    /// Initial colour range [default: max degree + 1]
    #[arg(long)]
    k_max: Option<u32>,
    #[arg(long, default_value_t = 0.25)]
    mutation_rate: f64,
    #[arg(long, default_value_t = 0.50)]
    selection_probability: f64,
    #[arg(long, default_value_t = 1)]
    elitism: usize,
    /// uniform or permuted
    #[arg(long, default_value = "uniform")]
    init: InitMode,
    /// Stop once a proper colouring with the known chromatic number is found.
    #[arg(long)]
    early_stop: bool,
    /// Accepted and ignored.
    #[arg(long, default_value_t = 1.5)]
    assimilation_coefficient: f64,
    /// Accepted and ignored.
    #[arg(long, default_value_t = 0.5)]
    assimilation_angle_coefficient: f64,
}

impl SolverArgs {
    fn notice_ignored(&self) {
        if self.assimilation_coefficient != 1.5 || self.assimilation_angle_coefficient != 0.5 {
            warn!("assimilation coefficients have no effect on the discrete operators");
        } else {
            info!("assimilation coefficients are accepted but unused");
        }
    }

    fn dica(&self, chromatic: Option<usize>) -> DicaParams {
        DicaParams {
            population_size: self.population_size,
            imperialist_fraction: self.imperialist_fraction,
            decades: self.decades,
            revolution_rate: self.revolution_rate,
            uniting_threshold: self.uniting_threshold,
            damp_ratio: self.damp_ratio,
            xi: self.xi,
            k_max: self.k_max,
            init: self.init,
            penalty: self.penalty,
            early_stop_at_chromatic: self.early_stop,
            known_chromatic: chromatic,
            rng_seed: self.seed,
        }
    }

    fn ga(&self, chromatic: Option<usize>) -> GaParams {
        GaParams {
            population_size: self.population_size,
            generations: self.generations,
            mutation_rate: self.mutation_rate,
            selection_probability: self.selection_probability,
            elitism_count: self.elitism,
            k_max: self.k_max,
            init: self.init,
            penalty: self.penalty,
            early_stop_at_chromatic: self.early_stop,
            known_chromatic: chromatic,
            rng_seed: self.seed,
        }
    }

    fn config(&self, algo: Algorithm, chromatic: Option<usize>) -> SolverConfig {
        match algo {
            Algorithm::Dica => SolverConfig::Dica(self.dica(chromatic)),
            Algorithm::Ga => SolverConfig::Ga(self.ga(chromatic)),
        }
    }
}

fn parse_override(s: &str) -> Result<(String, usize), String> {
    let (name, k) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=K, got `{s}`"))?;
    let k = k.parse().map_err(|e| format!("bad chromatic number in `{s}`: {e}"))?;
    Ok((name.to_string(), k))
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_dimacs(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn cmd_gen(family: &str, param: usize, out: Option<&Path>) -> Result<ExitCode> {
    let fam = Family::parse(family)
        .ok_or_else(|| anyhow!("unknown family `{family}` (expected complete, mycielski or queen)"))?;
    let g = fam.generate(param)?;
    let chi = fam
        .known_chromatic(param)
        .map_or_else(|| "unknown".to_string(), |k| k.to_string());
    let summary = format!("n: {}\nm: {}\nchromatic_number: {chi}", g.n(), g.m());
    match out {
        Some(path) => {
            fs::write(path, write_dimacs(&g)).with_context(|| format!("cannot write {}", path.display()))?;
            emit(&format!("{summary}\n"))?;
        }
        None => {
            emit(&write_dimacs(&g))?;
            eprintln!("{summary}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_solve(path: &Path, algo: Algorithm, chromatic: Option<usize>, solver: &SolverArgs) -> Result<ExitCode> {
    let g = read_graph(path)?;
    let res = match algo {
        Algorithm::Dica => {
            solver.notice_ignored();
            run_dica(&g, &solver.dica(chromatic))?
        }
        Algorithm::Ga => run_ga(&g, &solver.ga(chromatic))?,
    };
    let cp = match algo {
        Algorithm::Dica => solver.dica(chromatic).cost_params_for(&g),
        Algorithm::Ga => solver.ga(chromatic).cost_params_for(&g),
    };
    let check = evaluate(&g, &res.best, cp)?;
    emit(&format!(
        "algorithm: {algo}\nbest_cost: {}\nconflicts: {}\ncolours_used: {}\niterations: {}\ncolouring: {}\n",
        res.best_cost, check.conflicts, check.colours_used, res.decades_executed, res.best
    ))?;
    Ok(if check.conflicts == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CONFLICTS)
    })
}

fn bench_instances(specs: &[String], table1: bool) -> Result<Vec<(Graph, GraphMeta)>> {
    let mut out = if table1 { benchmark_instances() } else { Vec::new() };
    for spec in specs {
        if let Some((family, param)) = spec.split_once(':') {
            if let Some(fam) = Family::parse(family) {
                let param = param
                    .parse()
                    .with_context(|| format!("bad parameter in `{spec}`"))?;
                out.push(fam.instance(param)?);
                continue;
            }
        }
        let path = Path::new(spec);
        let g = read_graph(path)?;
        let name = path
            .file_stem()
            .map_or_else(|| spec.clone(), |s| s.to_string_lossy().into_owned());
        out.push((g, GraphMeta { name, known_chromatic: None }));
    }
    if out.is_empty() {
        bail!("no graphs given (pass files, family specs like complete:15, or --table1)");
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    specs: &[String],
    table1: bool,
    algos: &[Algorithm],
    runs: usize,
    seed_base: u64,
    format: ReportFormat,
    overrides: &[(String, usize)],
    no_timing: bool,
    sequential: bool,
    solver: &SolverArgs,
) -> Result<ExitCode> {
    if algos.contains(&Algorithm::Dica) {
        solver.notice_ignored();
    }
    let options = TrialOptions {
        runs,
        seed_base,
        record_timing: !no_timing,
        parallel: !sequential,
    };
    let mut records = Vec::new();
    for (g, mut meta) in bench_instances(specs, table1)? {
        if let Some(&(_, k)) = overrides.iter().rev().find(|(name, _)| *name == meta.name) {
            meta = GraphMeta::new(meta.name, Some(k), &g)?;
        }
        let chi = resolve_chromatic(&g, &meta)?;
        for &algo in algos {
            let config = solver.config(algo, Some(chi));
            records.extend(run_trials(&g, &meta, &config, options)?);
        }
    }
    emit(&emit_report(&records, format)?)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(path: &Path, k: Option<usize>, limit: OracleLimit) -> Result<ExitCode> {
    let g = read_graph(path)?;
    let outcome = match k {
        Some(k) => exists_colouring(&g, k, limit).map(|ok| format!("exists: {ok}")),
        None => chromatic_number_exact(&g, limit).map(|chi| format!("chromatic_number: {chi}")),
    };
    match outcome {
        Ok(line) => {
            emit(&format!("{line}\n"))?;
            Ok(ExitCode::SUCCESS)
        }
        Err(e @ (OracleError::TooManyVertices { .. } | OracleError::BudgetExceeded { .. })) => {
            eprintln!("error: oracle refused: {e}");
            Ok(ExitCode::from(EXIT_REFUSED))
        }
        Err(e) => Err(e.into()),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen { family, param, out } => cmd_gen(&family, param, out.as_deref()),
        Command::Solve { graph, algo, chromatic, solver } => cmd_solve(&graph, algo, chromatic, &solver),
        Command::Bench {
            graphs,
            table1,
            algos,
            runs,
            seed_base,
            format,
            chromatic,
            no_timing,
            sequential,
            solver,
        } => cmd_bench(
            &graphs, table1, &algos, runs, seed_base, format, &chromatic, no_timing, sequential, &solver,
        ),
        Command::Oracle { graph, k, max_vertices, node_budget } => {
            cmd_oracle(&graph, k, OracleLimit { max_vertices, node_budget })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
