//! Benchmark grid: (instance x solver x layers) cells, each repeated with
//! derived seeds, aggregated into one [`ResultRow`] per cell.
//!
//! `results.csv` holds only seed-determined quantities; wall-clock
//! timings go to `timings.csv` and `runs.json`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::annealing::{self, AnnealConfig, IhsConfig};
use crate::error::{Error, Result};
use crate::exact;
use crate::hwmodel::{self, ClassicalTimings, DeviceModel, InitialLayout};
use crate::instance::{self, GeneratorParams, KnapsackInstance};
use crate::metrics::{self, MeanStd, RunMetrics, SampleDistribution};
use crate::qubo::QuboModel;
use crate::seed;
use crate::variational::{self, AnsatzKind, AnsatzSpec, OptimizerConfig};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum InstanceSource {
    /// Built-in scenario 1..=4.
    Scenario(usize),
    /// Instance file, relative paths resolved against the config directory.
    Path(PathBuf),
    Generate(GenerateSpec),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenerateSpec {
    #[serde(flatten)]
    pub params: GeneratorParams,
    pub seed: u64,
    #[serde(default)]
    pub name: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverKind {
    Qaoa,
    WsQaoa,
    WsInitQaoa,
    Vqe,
    Sa,
    Ihs,
}

impl SolverKind {
    pub fn ansatz(self) -> Option<AnsatzKind> {
        Some(match self {
            SolverKind::Qaoa => AnsatzKind::Qaoa,
            SolverKind::WsQaoa => AnsatzKind::WsQaoa,
            SolverKind::WsInitQaoa => AnsatzKind::WsInitQaoa,
            SolverKind::Vqe => AnsatzKind::Vqe,
            SolverKind::Sa | SolverKind::Ihs => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self.ansatz() {
            Some(a) => a.as_str(),
            None if self == SolverKind::Sa => "sa",
            None => "ihs",
        }
    }
}

impl std::str::FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_ascii_lowercase())).map_err(|_| Error::Parse {
            what: "solver".into(),
            message: format!("unknown solver '{s}'; expected qaoa, ws_qaoa, ws_init_qaoa, vqe, sa or ihs"),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSpec {
    pub kind: SolverKind,
    /// Label in the result table; defaults to the kind name.
    #[serde(default)]
    pub id: Option<String>,
    /// Circuit depths to sweep; ignored by `sa` and `ihs`.
    #[serde(default = "default_layers")]
    pub layers: Vec<usize>,
    #[serde(default)]
    pub optimizer: OptimizerConfig,
    #[serde(default = "default_shots")]
    pub shots: u64,
    /// Projected-gradient starts for the warm-start relaxation.
    #[serde(default = "default_relaxation_restarts")]
    pub relaxation_restarts: usize,
    #[serde(default)]
    pub anneal: AnnealConfig,
    #[serde(default)]
    pub ihs: IhsConfig,
}

fn default_layers() -> Vec<usize> {
    vec![1]
}

fn default_shots() -> u64 {
    10_000
}

/// More starts than the bare relaxation default; 16 often stops at a
/// suboptimal vertex on 12-14 variable scenarios.
pub const BENCH_RELAXATION_RESTARTS: usize = 256;

fn default_relaxation_restarts() -> usize {
    BENCH_RELAXATION_RESTARTS
}

impl SolverSpec {
    pub fn new(kind: SolverKind) -> Self {
        SolverSpec {
            kind,
            id: None,
            layers: default_layers(),
            optimizer: OptimizerConfig::default(),
            shots: default_shots(),
            relaxation_restarts: default_relaxation_restarts(),
            anneal: AnnealConfig::default(),
            ihs: IhsConfig::default(),
        }
    }

    pub fn label(&self) -> String {
        self.id.clone().unwrap_or_else(|| self.kind.as_str().to_string())
    }

    fn layer_cells(&self) -> Vec<Option<usize>> {
        if self.kind.ansatz().is_some() {
            self.layers.iter().map(|&p| Some(p)).collect()
        } else {
            vec![None]
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuntimeConfig {
    /// Device file; the bundled 65-qubit heavy-hex map when absent.
    #[serde(default)]
    pub device: Option<PathBuf>,
    #[serde(default)]
    pub layout: InitialLayout,
    /// Seeds per-edge CX jitter when present.
    #[serde(default)]
    pub cx_jitter_seed: Option<u64>,
    #[serde(default, flatten)]
    pub timings: ClassicalTimings,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    pub instances: Vec<InstanceSource>,
    pub solvers: Vec<SolverSpec>,
    #[serde(default = "default_repeats")]
    pub repeats: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    /// Worker threads; all cores when absent.
    #[serde(default)]
    pub workers: Option<usize>,
    /// Store every run's sample distribution in `runs.json`.
    #[serde(default)]
    pub dump_distributions: bool,
    #[serde(default = "default_c_lim")]
    pub c_lim: f64,
    #[serde(default)]
    pub runtime: RuntimeConfig,
}

fn default_repeats() -> usize {
    20
}

fn default_c_lim() -> f64 {
    metrics::DEFAULT_C_LIM
}

impl BenchConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            what: "bench config".into(),
            message: e.to_string(),
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let p = path.as_ref();
        let text = std::fs::read_to_string(p).map_err(|e| Error::io(p, e))?;
        BenchConfig::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.repeats == 0 {
            return Err(Error::param("repeats must be at least 1"));
        }
        if self.instances.is_empty() || self.solvers.is_empty() {
            return Err(Error::param("config needs at least one instance and one solver"));
        }
        if self.workers == Some(0) {
            return Err(Error::param("workers must be at least 1"));
        }
        if !(self.c_lim > 0.0 && self.c_lim <= 1.0) {
            return Err(Error::param("c_lim must lie in (0, 1]"));
        }
        let mut labels = BTreeSet::new();
        for s in &self.solvers {
            if !labels.insert(s.label()) {
                return Err(Error::param(format!("duplicate solver id '{}'", s.label())));
            }
            if s.kind.ansatz().is_some() {
                if s.layers.is_empty() || s.layers.contains(&0) {
                    return Err(Error::param(format!("solver '{}' needs layers >= 1", s.label())));
                }
                if s.kind.ansatz().is_some_and(AnsatzKind::is_warm_started) && s.relaxation_restarts == 0 {
                    return Err(Error::param(format!("solver '{}' needs relaxation_restarts >= 1", s.label())));
                }
                if s.shots == 0 {
                    return Err(Error::param(format!("solver '{}' needs shots >= 1", s.label())));
                }
            }
        }
        Ok(())
    }
}

/// Resolves an instance source; relative paths are taken from `base`.
pub fn resolve_instance(source: &InstanceSource, base: &Path) -> Result<KnapsackInstance> {
    match source {
        InstanceSource::Scenario(id) => instance::scenario(*id),
        InstanceSource::Path(p) => {
            let full = if p.is_absolute() { p.clone() } else { base.join(p) };
            instance::load_instance(full)
        }
        InstanceSource::Generate(g) => {
            let inst = instance::generate_instance(&g.params, g.seed)?;
            Ok(match &g.name {
                Some(name) => inst.with_name(name.clone()),
                None => inst,
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunOutput {
    pub metrics: RunMetrics,
    pub n_iter: Option<usize>,
    pub best_expectation: Option<f64>,
    pub distribution: SampleDistribution,
}

/// One seeded run of `solver` at depth `layers` on `model`.
pub fn run_solver(
    model: &QuboModel,
    v_opt: u64,
    solver: &SolverSpec,
    layers: Option<usize>,
    c_lim: f64,
    run_seed: u64,
) -> Result<RunOutput> {
    let (dist, n_iter, best_expectation) = match solver.kind.ansatz() {
        Some(kind) => {
            let p = layers.ok_or_else(|| Error::param("variational solver needs a layer count"))?;
            let spec = AnsatzSpec::for_model(model, kind, p, solver.relaxation_restarts, seed::derive_seed(run_seed, 3))?;
            let (dist, trace) = variational::run_variational(model, &spec, &solver.optimizer, solver.shots, run_seed)?;
            (dist, Some(trace.iterations), Some(trace.best_expectation))
        }
        None if solver.kind == SolverKind::Sa => {
            let cfg = AnnealConfig {
                seed: run_seed,
                ..solver.anneal.clone()
            };
            (annealing::simulated_annealing(model.qubo(), &cfg)?, None, None)
        }
        None => {
            let mut cfg = solver.ihs.clone();
            cfg.subproblem_size = cfg.subproblem_size.min(model.num_vars());
            let r = annealing::ihs(model.qubo(), &cfg, run_seed)?;
            (SampleDistribution::single(r.best), Some(r.iterations), None)
        }
    };
    Ok(RunOutput {
        metrics: metrics::evaluate_run(&dist, model, v_opt, c_lim, true)?,
        n_iter,
        best_expectation,
        distribution: dist,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub scenario: String,
    pub qubits: usize,
    pub v_opt: u64,
    pub solver: String,
    pub kind: SolverKind,
    pub p: Option<usize>,
    pub shots: Option<u64>,
    pub repeat: usize,
    pub seed: u64,
    pub metrics: Option<RunMetrics>,
    pub n_iter: Option<usize>,
    pub best_expectation: Option<f64>,
    pub error: Option<String>,
    pub wall_clock_s: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distribution: Option<SampleDistribution>,
}

/// Circuit estimate for a variational cell.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircuitEstimate {
    pub depth: usize,
    pub swap_count: usize,
    pub t_circ_ns: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub scenario: String,
    pub qubits: usize,
    pub v_opt: u64,
    pub solver: String,
    pub p: Option<usize>,
    pub n_run: usize,
    pub failed_runs: usize,
    pub excluded_runs: usize,
    pub c_opt_mean: Option<f64>,
    pub c_opt_std: Option<f64>,
    pub o90_mean: Option<f64>,
    pub o90_std: Option<f64>,
    pub n_iter_mean: Option<f64>,
    pub depth: Option<usize>,
    pub swaps: Option<usize>,
    pub t_circ_us: Option<f64>,
    pub runtime_s: Option<f64>,
    pub best_bitstring: Option<String>,
    pub error: Option<String>,
}

impl ResultRow {
    fn key(&self) -> (String, String, Option<usize>) {
        (self.scenario.clone(), self.solver.clone(), self.p)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimingRow {
    pub scenario: String,
    pub solver: String,
    pub p: Option<usize>,
    pub runs: usize,
    pub wall_clock_s: f64,
}

/// Everything `write_outputs` needs, also the `runs.json` schema.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchDump {
    pub seed: u64,
    pub c_lim: f64,
    pub timings: ClassicalTimings,
    pub estimates: Vec<CellEstimate>,
    pub runs: Vec<RunRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellEstimate {
    pub scenario: String,
    pub solver: String,
    pub p: Option<usize>,
    pub estimate: CircuitEstimate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchOutcome {
    pub rows: Vec<ResultRow>,
    pub timings: Vec<TimingRow>,
    pub dump: BenchDump,
}

impl BenchOutcome {
    pub fn failed_cells(&self) -> usize {
        self.rows.iter().filter(|r| r.failed_runs > 0).count()
    }
}

struct Cell<'a> {
    inst: usize,
    solver: &'a SolverSpec,
    p: Option<usize>,
}

/// Structural circuit estimate; gate angles do not affect the native
/// gate count beyond merged multiples of `2 pi`.
pub fn estimate_circuit(
    model: &QuboModel,
    kind: AnsatzKind,
    layers: usize,
    device: &DeviceModel,
    layout: InitialLayout,
    seed: u64,
) -> Result<CircuitEstimate> {
    let n = model.num_vars();
    let c_star = kind.is_warm_started().then(|| vec![0.3; n]);
    let spec = AnsatzSpec::new(kind, layers, n, c_star)?;
    let params = vec![0.123; spec.num_params()];
    let circuit = hwmodel::ansatz_circuit(model.qubo(), &spec, &params)?;
    let (_, sched) = hwmodel::compile_for_device(&circuit, device, layout, seed)?;
    Ok(CircuitEstimate {
        depth: sched.depth,
        swap_count: sched.swap_count,
        t_circ_ns: sched.t_circ_ns,
    })
}

/// Runs the grid. Relative instance and device paths resolve against `base`.
pub fn run_bench(config: &BenchConfig, base: &Path) -> Result<BenchOutcome> {
    config.validate()?;
    let instances: Vec<KnapsackInstance> = config
        .instances
        .iter()
        .map(|s| resolve_instance(s, base))
        .collect::<Result<_>>()?;
    let mut names = BTreeSet::new();
    for inst in &instances {
        if !names.insert(inst.name().to_string()) {
            return Err(Error::param(format!("duplicate instance name '{}'", inst.name())));
        }
    }
    let device = match &config.runtime.device {
        Some(p) => DeviceModel::load(if p.is_absolute() { p.clone() } else { base.join(p) })?,
        None => DeviceModel::heavy_hex_65(),
    };
    let device = match config.runtime.cx_jitter_seed {
        Some(s) => device.with_cx_jitter(s),
        None => device,
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.unwrap_or(0))
        .build()
        .map_err(|e| Error::param(format!("thread pool: {e}")))?;

    pool.install(|| {
        let prepared: Vec<Result<(QuboModel, u64)>> = instances
            .par_iter()
            .map(|inst| {
                let model = QuboModel::compile(inst, None)?;
                let (_, v_opt, _) = exact::optimal_packing(inst)?;
                Ok((model, v_opt))
            })
            .collect();
        let prepared: Vec<(QuboModel, u64)> = prepared.into_iter().collect::<Result<_>>()?;
        let mut cells = Vec::new();
        for inst in 0..instances.len() {
            for solver in &config.solvers {
                for p in solver.layer_cells() {
                    cells.push(Cell { inst, solver, p });
                }
            }
        }
        let tasks: Vec<(usize, usize)> = (0..cells.len())
            .flat_map(|c| (0..config.repeats).map(move |r| (c, r)))
            .collect();
        let records: Vec<RunRecord> = tasks
            .par_iter()
            .enumerate()
            .map(|(run_index, &(c, repeat))| {
                let cell = &cells[c];
                let (model, v_opt) = &prepared[cell.inst];
                let run_seed = seed::derive_seed(config.seed, run_index as u64);
                let start = Instant::now();
                let out = if *v_opt == 0 {
                    Err(Error::param("instance has optimal value 0; closeness is undefined"))
                } else {
                    run_solver(model, *v_opt, cell.solver, cell.p, config.c_lim, run_seed)
                };
                let wall = start.elapsed().as_secs_f64();
                let (metrics, n_iter, best_expectation, error, distribution) = match out {
                    Ok(o) => (
                        Some(o.metrics),
                        o.n_iter,
                        o.best_expectation,
                        None,
                        config.dump_distributions.then_some(o.distribution),
                    ),
                    Err(e) => (None, None, None, Some(e.to_string()), None),
                };
                RunRecord {
                    scenario: instances[cell.inst].name().to_string(),
                    qubits: model.num_vars(),
                    v_opt: *v_opt,
                    solver: cell.solver.label(),
                    kind: cell.solver.kind,
                    p: cell.p,
                    shots: cell.solver.kind.ansatz().map(|_| cell.solver.shots),
                    repeat,
                    seed: run_seed,
                    metrics,
                    n_iter,
                    best_expectation,
                    error,
                    wall_clock_s: wall,
                    distribution,
                }
            })
            .collect();
        let estimates: Vec<CellEstimate> = cells
            .par_iter()
            .filter_map(|cell| {
                let kind = cell.solver.kind.ansatz()?;
                let (model, _) = &prepared[cell.inst];
                let est = estimate_circuit(model, kind, cell.p?, &device, config.runtime.layout, config.seed).ok()?;
                Some(CellEstimate {
                    scenario: instances[cell.inst].name().to_string(),
                    solver: cell.solver.label(),
                    p: cell.p,
                    estimate: est,
                })
            })
            .collect();
        let dump = BenchDump {
            seed: config.seed,
            c_lim: config.c_lim,
            timings: config.runtime.timings,
            estimates,
            runs: records,
        };
        let (rows, timings) = aggregate_runs(&dump)?;
        Ok(BenchOutcome { rows, timings, dump })
    })
}

fn mean_of(xs: impl Iterator<Item = f64>) -> Option<f64> {
    let v: Vec<f64> = xs.collect();
    metrics::mean_std(&v).map(|m| m.mean)
}

/// Folds run records into sorted rows. Used by `run_bench` and to
/// re-aggregate a saved `runs.json`.
pub fn aggregate_runs(dump: &BenchDump) -> Result<(Vec<ResultRow>, Vec<TimingRow>)> {
    type Key = (String, String, Option<usize>);
    let mut groups: BTreeMap<Key, Vec<&RunRecord>> = BTreeMap::new();
    for r in &dump.runs {
        groups
            .entry((r.scenario.clone(), r.solver.clone(), r.p))
            .or_default()
            .push(r);
    }
    let estimates: BTreeMap<Key, CircuitEstimate> = dump
        .estimates
        .iter()
        .map(|e| ((e.scenario.clone(), e.solver.clone(), e.p), e.estimate))
        .collect();
    let mut rows = Vec::with_capacity(groups.len());
    let mut timings = Vec::with_capacity(groups.len());
    for (key, mut runs) in groups {
        runs.sort_by_key(|r| r.repeat);
        let first = runs[0];
        let ok: Vec<RunMetrics> = runs.iter().filter_map(|r| r.metrics.clone()).collect();
        let failed = runs.len() - ok.len();
        let report = if ok.is_empty() { None } else { Some(metrics::aggregate(&ok, dump.c_lim)?) };
        let n_iter_mean = mean_of(runs.iter().filter(|r| r.metrics.is_some()).filter_map(|r| r.n_iter.map(|n| n as f64)));
        let est = estimates.get(&key).copied();
        let runtime_s = match (est, n_iter_mean, first.shots) {
            (Some(e), Some(n), Some(shots)) => Some(hwmodel::total_runtime(
                n,
                shots as f64,
                e.t_circ_ns * 1e-9,
                dump.timings.t_meas,
                dump.timings.t_opt,
                dump.timings.t_comm,
            )?),
            _ => None,
        };
        let error = runs.iter().find_map(|r| r.error.clone());
        let split = |m: Option<MeanStd>| (m.map(|m| m.mean), m.map(|m| m.std));
        let (c_opt_mean, c_opt_std) = split(report.as_ref().and_then(|r| r.c_opt));
        let (o90_mean, o90_std) = split(report.as_ref().and_then(|r| r.o90));
        rows.push(ResultRow {
            scenario: key.0.clone(),
            qubits: first.qubits,
            v_opt: first.v_opt,
            solver: key.1.clone(),
            p: key.2,
            n_run: ok.len(),
            failed_runs: failed,
            excluded_runs: report.as_ref().map_or(0, |r| r.excluded_runs),
            c_opt_mean,
            c_opt_std,
            o90_mean,
            o90_std,
            n_iter_mean,
            depth: est.map(|e| e.depth),
            swaps: est.map(|e| e.swap_count),
            t_circ_us: est.map(|e| e.t_circ_ns / 1e3),
            runtime_s,
            best_bitstring: report.as_ref().map(|r| r.best_bitstring.to_string()),
            error,
        });
        timings.push(TimingRow {
            scenario: key.0,
            solver: key.1,
            p: key.2,
            runs: runs.len(),
            wall_clock_s: runs.iter().map(|r| r.wall_clock_s).sum(),
        });
    }
    rows.sort_by_key(ResultRow::key);
    Ok((rows, timings))
}

fn csv_error(e: csv::Error) -> Error {
    Error::Parse {
        what: "csv".into(),
        message: e.to_string(),
    }
}

pub fn rows_to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(csv_error)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::param(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn rows_from_csv(text: &str) -> Result<Vec<ResultRow>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(csv_error)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FigureKind {
    /// Overlap with the 0.90-optimal set vs qubits.
    Overlap,
    /// Closeness to optimum vs qubits.
    Closeness,
    /// Native circuit depth vs qubits.
    Depth,
    /// Circuit execution time (microseconds) vs qubits.
    CircuitTime,
    /// Total runtime estimate (seconds) vs qubits.
    Runtime,
    /// Mean optimizer iterations vs qubits.
    Iterations,
}

impl FigureKind {
    pub const ALL: [FigureKind; 6] = [
        FigureKind::Overlap,
        FigureKind::Closeness,
        FigureKind::Depth,
        FigureKind::CircuitTime,
        FigureKind::Runtime,
        FigureKind::Iterations,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FigureKind::Overlap => "overlap",
            FigureKind::Closeness => "closeness",
            FigureKind::Depth => "depth",
            FigureKind::CircuitTime => "circuit_time",
            FigureKind::Runtime => "runtime",
            FigureKind::Iterations => "iterations",
        }
    }

    fn project(self, r: &ResultRow) -> Option<(f64, f64)> {
        match self {
            FigureKind::Overlap => Some((r.o90_mean?, r.o90_std.unwrap_or(0.0))),
            FigureKind::Closeness => Some((r.c_opt_mean?, r.c_opt_std.unwrap_or(0.0))),
            FigureKind::Depth => Some((r.depth? as f64, 0.0)),
            FigureKind::CircuitTime => Some((r.t_circ_us?, 0.0)),
            FigureKind::Runtime => Some((r.runtime_s?, 0.0)),
            FigureKind::Iterations => Some((r.n_iter_mean?, 0.0)),
        }
    }
}

/// One series per (solver, p): `(file name, contents)`. Rows are `x y
/// y_err` with x the qubit count; cells without a value become `# note`
/// lines.
pub fn plot_series(rows: &[ResultRow], kind: FigureKind) -> Vec<(String, String)> {
    let mut series: BTreeMap<(String, Option<usize>), Vec<&ResultRow>> = BTreeMap::new();
    for r in rows {
        series.entry((r.solver.clone(), r.p)).or_default().push(r);
    }
    series
        .into_iter()
        .map(|((solver, p), mut cells)| {
            cells.sort_by(|a, b| (a.qubits, &a.scenario).cmp(&(b.qubits, &b.scenario)));
            let mut text = format!("# {} solver={solver}", kind.as_str());
            if let Some(p) = p {
                write!(text, " p={p}").expect("string write");
            }
            text.push_str("\n# x y y_err\n");
            for c in cells {
                match kind.project(c) {
                    Some((y, e)) => writeln!(text, "{} {} {}", c.qubits, y, e),
                    None => writeln!(text, "# note: {} ({} qubits) has no value", c.scenario, c.qubits),
                }
                .expect("string write");
            }
            let name = match p {
                Some(p) => format!("{}_{solver}_p{p}.dat", kind.as_str()),
                None => format!("{}_{solver}.dat", kind.as_str()),
            };
            (name, text)
        })
        .collect()
}

/// Writes the series files of `kind` into `dir`.
pub fn emit_plot_series(rows: &[ResultRow], kind: FigureKind, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    plot_series(rows, kind)
        .into_iter()
        .map(|(name, text)| {
            let path = dir.join(name);
            std::fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
            Ok(path)
        })
        .collect()
}

/// Writes `results.csv`, `timings.csv`, `runs.json` and `series/*.dat`.
pub fn write_outputs(outcome: &BenchOutcome, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let write = |name: &str, text: String| {
        let p = dir.join(name);
        std::fs::write(&p, text).map_err(|e| Error::io(&p, e))
    };
    write("results.csv", rows_to_csv(&outcome.rows)?)?;
    write("timings.csv", rows_to_csv(&outcome.timings)?)?;
    write(
        "runs.json",
        serde_json::to_string_pretty(&outcome.dump).expect("dump serializes"),
    )?;
    for kind in FigureKind::ALL {
        emit_plot_series(&outcome.rows, kind, &dir.join("series"))?;
    }
    Ok(())
}
