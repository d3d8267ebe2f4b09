use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mkq_core::bench::{self, BenchConfig, BenchDump, BenchOutcome, SolverKind, SolverSpec};
use mkq_core::hwmodel::{self, ClassicalTimings, DeviceModel, InitialLayout};
use mkq_core::instance::{self, GeneratorParams, IntRange, KnapsackInstance};
use mkq_core::qubo::QuboModel;
use mkq_core::{exact, metrics, Error};

#[derive(Parser)]
#[command(name = "mkq", version, about = "Multiple-knapsack QUBO benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write an instance file (a built-in scenario or a random instance).
    Generate(GenerateArgs),
    /// Run one solver once on one instance and print the run as JSON.
    Solve(SolveArgs),
    /// Run a benchmark grid from a config file.
    Bench(BenchArgs),
    /// Route and schedule an ansatz circuit and evaluate the runtime model.
    EstimateRuntime(EstimateArgs),
    /// Re-aggregate a saved runs.json into result tables.
    Report(ReportArgs),
}

#[derive(Args)]
struct InstanceArgs {
    /// Instance file.
    #[arg(long, conflicts_with = "scenario")]
    instance: Option<PathBuf>,
    /// Built-in scenario 1..=4.
    #[arg(long)]
    scenario: Option<usize>,
}

impl InstanceArgs {
    fn load(&self) -> Result<KnapsackInstance, Error> {
        match (&self.instance, self.scenario) {
            (Some(p), _) => instance::load_instance(p),
            (None, Some(id)) => instance::scenario(id),
            (None, None) => Err(Error::Parameter("pass --instance or --scenario".into())),
        }
    }
}

fn parse_range(s: &str) -> Result<IntRange, String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi = hi.trim().parse().map_err(|e| format!("{e}"))?;
    Ok(IntRange::new(lo, hi))
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    scenario: Option<usize>,
    #[arg(long, default_value_t = 4)]
    items: usize,
    #[arg(long, default_value_t = 2)]
    knapsacks: usize,
    #[arg(long, value_parser = parse_range, default_value = "1:5")]
    weights: IntRange,
    #[arg(long, value_parser = parse_range, default_value = "1:5")]
    values: IntRange,
    #[arg(long, value_parser = parse_range, default_value = "4:7")]
    capacities: IntRange,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    name: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, default_value = "qaoa")]
    solver: SolverKind,
    #[arg(long, default_value_t = 1)]
    layers: usize,
    #[arg(long, default_value_t = 10_000)]
    shots: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = metrics::DEFAULT_C_LIM)]
    c_lim: f64,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    /// Output directory; overrides the config and MKQ_OUT_DIR.
    #[arg(long, env = "MKQ_OUT_DIR")]
    out: Option<PathBuf>,
    #[arg(long)]
    shots: Option<u64>,
    #[arg(long)]
    repeats: Option<usize>,
    /// Keep only these solvers (comma-separated); kinds missing from the
    /// config are added with defaults.
    #[arg(long, value_delimiter = ',')]
    solver: Vec<SolverKind>,
    /// Layer sweep for every variational solver (comma-separated).
    #[arg(long, value_delimiter = ',')]
    layers: Vec<usize>,
}

#[derive(Args)]
struct EstimateArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, default_value = "qaoa")]
    solver: SolverKind,
    #[arg(long, default_value_t = 1)]
    layers: usize,
    /// Optimizer iterations.
    #[arg(long, default_value_t = 80.0)]
    n_iter: f64,
    #[arg(long, default_value_t = 10_000)]
    shots: u64,
    /// Device file; the bundled 65-qubit heavy-hex map when absent.
    #[arg(long)]
    device: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "path")]
    layout: LayoutArg,
    /// Measurement time per shot, seconds.
    #[arg(long)]
    t_meas: Option<f64>,
    /// Classical optimizer time per iteration, seconds.
    #[arg(long)]
    t_opt: Option<f64>,
    /// Communication time per iteration, seconds.
    #[arg(long)]
    t_comm: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the per-gate schedule here as CSV.
    #[arg(long)]
    schedule_csv: Option<PathBuf>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum LayoutArg {
    Path,
    Trivial,
}

#[derive(Args)]
struct ReportArgs {
    /// runs.json written by `mkq bench`.
    #[arg(long)]
    runs: PathBuf,
    /// Output directory; stdout CSV when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Config(Error),
    Partial(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Config(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Solve(a) => solve(a),
        Command::Bench(a) => run_bench(a),
        Command::EstimateRuntime(a) => estimate(a),
        Command::Report(a) => report(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Partial(n)) => {
            eprintln!("mkq: {n} cell(s) had failed runs");
            ExitCode::from(2)
        }
        Err(Failure::Config(e)) => {
            eprintln!("mkq: {e}");
            ExitCode::from(1)
        }
    }
}

fn generate(a: GenerateArgs) -> Result<(), Failure> {
    let inst = match a.scenario {
        Some(id) => instance::scenario(id)?,
        None => {
            let params = GeneratorParams {
                num_items: a.items,
                num_knapsacks: a.knapsacks,
                weight_range: a.weights,
                value_range: a.values,
                capacity_range: a.capacities,
            };
            instance::generate_instance(&params, a.seed)?
        }
    };
    let inst = match a.name {
        Some(n) => inst.with_name(n),
        None => inst,
    };
    match a.out {
        Some(p) => instance::save_instance(&inst, p)?,
        None => println!("{}", instance::to_json(&inst)),
    }
    Ok(())
}

fn solve(a: SolveArgs) -> Result<(), Failure> {
    let inst = a.instance.load()?;
    let model = QuboModel::compile(&inst, None)?;
    let (_, v_opt, _) = exact::optimal_packing(&inst)?;
    if v_opt == 0 {
        return Err(Error::Parameter("instance has optimal value 0".into()).into());
    }
    let mut spec = SolverSpec::new(a.solver);
    spec.shots = a.shots;
    let p = a.solver.ansatz().map(|_| a.layers);
    let out = bench::run_solver(&model, v_opt, &spec, p, a.c_lim, a.seed)?;
    let c = &out.metrics.closeness;
    let json = serde_json::json!({
        "instance": inst.name(),
        "qubits": model.num_vars(),
        "v_opt": v_opt,
        "solver": a.solver.as_str(),
        "p": p,
        "seed": a.seed,
        "best_bitstring": c.x_min.to_string(),
        "best_energy": c.energy,
        "valid": c.valid,
        "v_tot": c.v_tot,
        "c_opt": c.c_opt,
        "o90": out.metrics.o90,
        "n_iter": out.n_iter,
        "best_expectation": out.best_expectation,
    });
    println!("{}", serde_json::to_string_pretty(&json).expect("json"));
    Ok(())
}

fn apply_overrides(cfg: &mut BenchConfig, a: &BenchArgs) {
    if let Some(s) = a.seed {
        cfg.seed = s;
    }
    if let Some(w) = a.workers {
        cfg.workers = Some(w);
    }
    if let Some(r) = a.repeats {
        cfg.repeats = r;
    }
    if !a.solver.is_empty() {
        let mut kept: Vec<SolverSpec> = Vec::new();
        for &kind in &a.solver {
            let from_cfg: Vec<SolverSpec> = cfg.solvers.iter().filter(|s| s.kind == kind).cloned().collect();
            if from_cfg.is_empty() {
                kept.push(SolverSpec::new(kind));
            } else {
                kept.extend(from_cfg);
            }
        }
        cfg.solvers = kept;
    }
    for s in &mut cfg.solvers {
        if let Some(n) = a.shots {
            s.shots = n;
        }
        if !a.layers.is_empty() {
            s.layers.clone_from(&a.layers);
        }
    }
}

fn finish(outcome: &BenchOutcome, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(dir) => {
            bench::write_outputs(outcome, dir)?;
            eprintln!("mkq: wrote {} rows to {}", outcome.rows.len(), dir.join("results.csv").display());
        }
        None => print!("{}", bench::rows_to_csv(&outcome.rows)?),
    }
    match outcome.failed_cells() {
        0 => Ok(()),
        n => Err(Failure::Partial(n)),
    }
}

fn run_bench(a: BenchArgs) -> Result<(), Failure> {
    let mut cfg = BenchConfig::load(&a.config)?;
    apply_overrides(&mut cfg, &a);
    let base = a.config.parent().map(Path::to_path_buf).unwrap_or_default();
    let out = a
        .out
        .clone()
        .or_else(|| cfg.output_dir.as_ref().map(|d| if d.is_absolute() { d.clone() } else { base.join(d) }));
    let outcome = bench::run_bench(&cfg, &base)?;
    finish(&outcome, out.as_deref())
}

fn estimate(a: EstimateArgs) -> Result<(), Failure> {
    let inst = a.instance.load()?;
    let model = QuboModel::compile(&inst, None)?;
    let kind = a
        .solver
        .ansatz()
        .ok_or_else(|| Error::Parameter("estimate-runtime needs a variational solver".into()))?;
    let device = match &a.device {
        Some(p) => DeviceModel::load(p)?,
        None => DeviceModel::heavy_hex_65(),
    };
    let layout = match a.layout {
        LayoutArg::Path => InitialLayout::Path,
        LayoutArg::Trivial => InitialLayout::Trivial,
    };
    let n = model.num_vars();
    let c_star = kind.is_warm_started().then(|| vec![0.3; n]);
    let spec = mkq_core::variational::AnsatzSpec::new(kind, a.layers, n, c_star)?;
    let circuit = hwmodel::ansatz_circuit(model.qubo(), &spec, &vec![0.123; spec.num_params()])?;
    let (_, sched) = hwmodel::compile_for_device(&circuit, &device, layout, a.seed)?;
    let defaults = ClassicalTimings::default();
    let t_meas = a.t_meas.unwrap_or(defaults.t_meas);
    let t_opt = a.t_opt.unwrap_or(defaults.t_opt);
    let t_comm = a.t_comm.unwrap_or(defaults.t_comm);
    let total = hwmodel::total_runtime(a.n_iter, a.shots as f64, sched.t_circ_seconds(), t_meas, t_opt, t_comm)?;
    if let Some(p) = &a.schedule_csv {
        std::fs::write(p, sched.to_csv()).map_err(|e| Error::Io {
            path: p.clone(),
            source: e,
        })?;
    }
    let json = serde_json::json!({
        "instance": inst.name(),
        "qubits": n,
        "solver": a.solver.as_str(),
        "p": a.layers,
        "device": device.name(),
        "depth": sched.depth,
        "swaps": sched.swap_count,
        "native_gates": sched.gates.len(),
        "t_circ_us": sched.t_circ_ns / 1e3,
        "n_iter": a.n_iter,
        "shots": a.shots,
        "t_meas_s": t_meas,
        "t_opt_s": t_opt,
        "t_comm_s": t_comm,
        "total_runtime_s": total,
    });
    println!("{}", serde_json::to_string_pretty(&json).expect("json"));
    Ok(())
}

fn report(a: ReportArgs) -> Result<(), Failure> {
    let text = std::fs::read_to_string(&a.runs).map_err(|e| Error::Io {
        path: a.runs.clone(),
        source: e,
    })?;
    let dump: BenchDump = serde_json::from_str(&text).map_err(|e| Error::Parse {
        what: "runs.json".into(),
        message: e.to_string(),
    })?;
    let (rows, timings) = bench::aggregate_runs(&dump)?;
    let outcome = BenchOutcome { rows, timings, dump };
    finish(&outcome, a.out.as_deref())
}
