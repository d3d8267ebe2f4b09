//! QAOA, WS-QAOA, WS-Init-QAOA and VQE: state builders and the classical
//! outer loop.
//!
//! QAOA-family parameters are laid out `[gamma_1..gamma_p, beta_1..beta_p]`;
//! layer 1 is applied first, phase separator before mixer. VQE parameters
//! are `n * (p + 1)` rotation angles, layer-major.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::SampleDistribution;
use crate::optimize::{self, Method, MinimizeOptions};
use crate::qubo::{self, QuboModel};
use crate::seed;
use crate::simulator::{DiagonalHamiltonian, StateVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnsatzKind {
    Qaoa,
    WsQaoa,
    WsInitQaoa,
    Vqe,
}

impl AnsatzKind {
    pub fn is_warm_started(self) -> bool {
        matches!(self, AnsatzKind::WsQaoa | AnsatzKind::WsInitQaoa)
    }

    /// Optimizer used when none is configured.
    pub fn default_method(self) -> Method {
        match self {
            AnsatzKind::Vqe => Method::Cobyla,
            _ => Method::NelderMead,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AnsatzKind::Qaoa => "qaoa",
            AnsatzKind::WsQaoa => "ws_qaoa",
            AnsatzKind::WsInitQaoa => "ws_init_qaoa",
            AnsatzKind::Vqe => "vqe",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnsatzSpec {
    kind: AnsatzKind,
    layers: usize,
    num_qubits: usize,
    c_star: Option<Vec<f64>>,
}

impl AnsatzSpec {
    pub fn new(kind: AnsatzKind, layers: usize, num_qubits: usize, c_star: Option<Vec<f64>>) -> Result<Self> {
        if layers == 0 {
            return Err(Error::param("need at least one layer"));
        }
        if kind.is_warm_started() {
            let c = c_star
                .as_ref()
                .ok_or_else(|| Error::param(format!("{} requires a warm-start vector", kind.as_str())))?;
            if c.len() != num_qubits {
                return Err(Error::LengthMismatch {
                    expected: num_qubits,
                    got: c.len(),
                });
            }
            if c.iter().any(|&v| !(v > 0.0 && v < 1.0)) {
                return Err(Error::param("warm-start values must lie strictly inside (0, 1)"));
            }
        }
        Ok(AnsatzSpec {
            kind,
            layers,
            num_qubits,
            c_star: if kind.is_warm_started() { c_star } else { None },
        })
    }

    /// Spec for `kind` on `model`, solving the continuous relaxation for the
    /// warm-started kinds.
    pub fn for_model(model: &QuboModel, kind: AnsatzKind, layers: usize, restarts: usize, seed: u64) -> Result<Self> {
        let c_star = kind
            .is_warm_started()
            .then(|| qubo::solve_relaxation(model.qubo(), restarts, seed));
        AnsatzSpec::new(kind, layers, model.num_vars(), c_star)
    }

    pub fn kind(&self) -> AnsatzKind {
        self.kind
    }

    pub fn layers(&self) -> usize {
        self.layers
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn c_star(&self) -> Option<&[f64]> {
        self.c_star.as_deref()
    }

    pub fn num_params(&self) -> usize {
        match self.kind {
            AnsatzKind::Vqe => self.num_qubits * (self.layers + 1),
            _ => 2 * self.layers,
        }
    }
}

fn check_params(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::param(format!("expected {expected} parameters, got {got}")));
    }
    Ok(())
}

/// QAOA-family state `prod_l U_M(beta_l) U_C(gamma_l) |initial>`.
pub fn build_qaoa_state(
    h: &DiagonalHamiltonian,
    spec: &AnsatzSpec,
    gammas: &[f64],
    betas: &[f64],
) -> Result<StateVector> {
    check_params(spec.layers, gammas.len())?;
    check_params(spec.layers, betas.len())?;
    if h.num_qubits() != spec.num_qubits {
        return Err(Error::param("Hamiltonian and ansatz disagree on the qubit count"));
    }
    let warm = || spec.c_star.as_deref().ok_or_else(|| Error::param("missing warm-start vector"));
    let mut state = match spec.kind {
        AnsatzKind::Qaoa => StateVector::uniform_state(spec.num_qubits)?,
        AnsatzKind::WsQaoa | AnsatzKind::WsInitQaoa => StateVector::warm_start_state(warm()?)?,
        AnsatzKind::Vqe => return Err(Error::param("VQE state is built by build_vqe_state")),
    };
    for (&gamma, &beta) in gammas.iter().zip(betas) {
        state.apply_phase(h, gamma)?;
        match spec.kind {
            AnsatzKind::WsQaoa => state.apply_ws_mixer(warm()?, beta)?,
            _ => state.apply_x_mixer(beta),
        }
    }
    Ok(state)
}

/// Hardware-efficient ansatz: `p` blocks of (`R_Y` on every qubit, then the
/// CX chain `0->1, 1->2, ..., n-2 -> n-1`) followed by a final `R_Y` layer.
pub fn build_vqe_state(spec: &AnsatzSpec, thetas: &[f64]) -> Result<StateVector> {
    if spec.kind != AnsatzKind::Vqe {
        return Err(Error::param("build_vqe_state needs a VQE spec"));
    }
    check_params(spec.num_params(), thetas.len())?;
    let n = spec.num_qubits;
    let mut state = StateVector::zero_state(n)?;
    for (layer, angles) in thetas.chunks(n).enumerate() {
        for (q, &t) in angles.iter().enumerate() {
            state.apply_ry(q, t)?;
        }
        if layer < spec.layers {
            for q in 0..n.saturating_sub(1) {
                state.apply_cx(q, q + 1)?;
            }
        }
    }
    Ok(state)
}

pub fn build_state(h: &DiagonalHamiltonian, spec: &AnsatzSpec, params: &[f64]) -> Result<StateVector> {
    match spec.kind {
        AnsatzKind::Vqe => build_vqe_state(spec, params),
        _ => {
            check_params(spec.num_params(), params.len())?;
            let (g, b) = params.split_at(spec.layers);
            build_qaoa_state(h, spec, g, b)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum Objective {
    /// Exact statevector expectation.
    Exact,
    /// Mean energy over `shots` samples, reseeded per evaluation.
    Shots { shots: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OptimizerConfig {
    /// `None` picks Nelder-Mead for the QAOA family and COBYLA for VQE.
    pub method: Option<Method>,
    #[serde(flatten)]
    pub options: MinimizeOptions,
    pub objective: Objective,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            method: None,
            options: MinimizeOptions::default(),
            objective: Objective::Exact,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizationTrace {
    pub method: Method,
    pub iterations: usize,
    pub evaluations: usize,
    pub initial_params: Vec<f64>,
    pub best_params: Vec<f64>,
    pub best_expectation: f64,
    pub converged: bool,
    /// Every objective evaluation in order.
    pub history: Vec<(Vec<f64>, f64)>,
}

impl OptimizationTrace {
    /// Best-so-far objective after each evaluation.
    pub fn best_so_far(&self) -> Vec<f64> {
        let mut best = f64::INFINITY;
        self.history
            .iter()
            .map(|(_, v)| {
                best = best.min(*v);
                best
            })
            .collect()
    }
}

/// Uniform initial parameters: `[-pi, pi]` for the QAOA family, `[0, 2 pi]`
/// for VQE.
pub fn initial_parameters(spec: &AnsatzSpec, seed: u64) -> Vec<f64> {
    use std::f64::consts::PI;
    let mut rng = seed::rng(seed);
    let (lo, hi) = match spec.kind {
        AnsatzKind::Vqe => (0.0, 2.0 * PI),
        _ => (-PI, PI),
    };
    (0..spec.num_params()).map(|_| rng.gen_range(lo..=hi)).collect()
}

pub fn optimize(model: &QuboModel, spec: &AnsatzSpec, config: &OptimizerConfig, seed: u64) -> Result<OptimizationTrace> {
    let h = DiagonalHamiltonian::from_qubo(model.qubo())?;
    optimize_with(&h, spec, config, seed)
}

/// [`optimize`] against a prebuilt Hamiltonian.
pub fn optimize_with(
    h: &DiagonalHamiltonian,
    spec: &AnsatzSpec,
    config: &OptimizerConfig,
    seed: u64,
) -> Result<OptimizationTrace> {
    let x0 = initial_parameters(spec, seed::derive_seed(seed, 0));
    let method = config.method.unwrap_or(spec.kind.default_method());
    let shot_seed = seed::derive_seed(seed, 2);
    let mut history: Vec<(Vec<f64>, f64)> = Vec::new();
    let mut failure: Option<Error> = None;

    let objective = |params: &[f64]| -> f64 {
        let value = build_state(h, spec, params).and_then(|state| match config.objective {
            Objective::Exact => state.expectation(h),
            Objective::Shots { shots } => {
                let dist = state.sample(shots, seed::derive_seed(shot_seed, history.len() as u64))?;
                let total: f64 = dist
                    .counts()
                    .iter()
                    .map(|(b, &c)| c as f64 * h.energy(b.to_index()))
                    .sum();
                Ok(total / dist.total_shots() as f64)
            }
        });
        let v = match value {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::INFINITY
            }
        };
        history.push((params.to_vec(), v));
        v
    };
    let min = optimize::minimize(method, objective, &x0, &config.options);
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(OptimizationTrace {
        method,
        iterations: min.iterations,
        evaluations: min.evaluations,
        initial_params: x0,
        best_params: min.x,
        best_expectation: min.value,
        converged: min.converged,
        history,
    })
}

/// Optimizes, rebuilds the state at the best parameters and samples
/// `shots` measurements.
pub fn run_variational(
    model: &QuboModel,
    spec: &AnsatzSpec,
    config: &OptimizerConfig,
    shots: u64,
    seed: u64,
) -> Result<(SampleDistribution, OptimizationTrace)> {
    let h = DiagonalHamiltonian::from_qubo(model.qubo())?;
    let trace = optimize_with(&h, spec, config, seed)?;
    let state = build_state(&h, spec, &trace.best_params)?;
    let dist = state.sample(shots, seed::derive_seed(seed, 1))?;
    Ok((dist, trace))
}
