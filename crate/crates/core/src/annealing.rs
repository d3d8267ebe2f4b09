//! Simulated annealing and the iterative heuristic solver (IHS).

use rand::seq::index;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitstring::Bitstring;
use crate::error::{Error, Result};
use crate::exact;
use crate::metrics::SampleDistribution;
use crate::qubo::Qubo;
use crate::seed;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AnnealConfig {
    pub num_reads: usize,
    pub sweeps: usize,
    /// `(beta_min, beta_max)`; derived from the coefficients when absent.
    pub beta_range: Option<(f64, f64)>,
    pub seed: u64,
}

impl Default for AnnealConfig {
    fn default() -> Self {
        AnnealConfig {
            num_reads: 1000,
            sweeps: 1000,
            beta_range: None,
            seed: 0,
        }
    }
}

/// `beta_min = 0.1 / mean |coeff|`, `beta_max = 10 / min nonzero |coeff|`
/// over linear and quadratic coefficients.
pub fn default_beta_range(qubo: &Qubo) -> (f64, f64) {
    let coeffs: Vec<f64> = qubo
        .linear()
        .iter()
        .chain(qubo.quadratic().values())
        .map(|c| c.abs())
        .filter(|&c| c > 0.0)
        .collect();
    if coeffs.is_empty() {
        return (0.1, 10.0);
    }
    let mean = coeffs.iter().sum::<f64>() / coeffs.len() as f64;
    let min = coeffs.iter().copied().fold(f64::INFINITY, f64::min);
    let (lo, hi) = (0.1 / mean, 10.0 / min);
    if lo < hi {
        (lo, hi)
    } else {
        (hi, lo.max(hi * 100.0))
    }
}

fn beta_schedule(range: (f64, f64), sweeps: usize) -> Vec<f64> {
    let (lo, hi) = range;
    if sweeps == 1 {
        return vec![hi];
    }
    let ratio = (hi / lo).powf(1.0 / (sweeps - 1) as f64);
    let mut b = lo;
    (0..sweeps)
        .map(|_| {
            let cur = b;
            b *= ratio;
            cur
        })
        .collect()
}

impl AnnealConfig {
    fn resolve(&self, qubo: &Qubo) -> Result<Vec<f64>> {
        if self.num_reads == 0 || self.sweeps == 0 {
            return Err(Error::param("num_reads and sweeps must be positive"));
        }
        let range = match self.beta_range {
            Some((lo, hi)) if lo > 0.0 && lo < hi && hi.is_finite() => (lo, hi),
            Some(_) => return Err(Error::param("beta range must satisfy 0 < beta_min < beta_max")),
            None => default_beta_range(qubo),
        };
        Ok(beta_schedule(range, self.sweeps))
    }
}

/// `energy(bits with flip_index flipped) - energy(bits)`.
pub fn incremental_delta(qubo: &Qubo, bits: &[bool], flip_index: usize) -> Result<f64> {
    if bits.len() != qubo.num_vars() {
        return Err(Error::LengthMismatch {
            expected: qubo.num_vars(),
            got: bits.len(),
        });
    }
    if flip_index >= bits.len() {
        return Err(Error::IndexOutOfRange {
            index: flip_index,
            len: bits.len(),
        });
    }
    Ok(qubo.flip_delta_unchecked(bits, flip_index))
}

fn anneal_read(qubo: &Qubo, betas: &[f64], rng: &mut ChaCha8Rng) -> Vec<bool> {
    let n = qubo.num_vars();
    let mut bits: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
    // field[v] = energy change of setting v from 0 to 1 given the others
    let mut field: Vec<f64> = qubo.linear().to_vec();
    for (v, f) in field.iter_mut().enumerate() {
        *f += qubo.neighbors(v).iter().filter(|(u, _)| bits[*u]).map(|(_, c)| c).sum::<f64>();
    }
    for &beta in betas {
        for v in 0..n {
            let delta = if bits[v] { -field[v] } else { field[v] };
            if delta <= 0.0 || rng.gen::<f64>() < (-beta * delta).exp() {
                bits[v] = !bits[v];
                let sign = if bits[v] { 1.0 } else { -1.0 };
                for &(u, c) in qubo.neighbors(v) {
                    field[u] += sign * c;
                }
            }
        }
    }
    bits
}

/// Independent single-flip Metropolis anneals, one final bitstring per read.
pub fn simulated_annealing(qubo: &Qubo, config: &AnnealConfig) -> Result<SampleDistribution> {
    let betas = config.resolve(qubo)?;
    let reads: Vec<Bitstring> = (0..config.num_reads)
        .into_par_iter()
        .map(|r| {
            let mut rng = seed::rng(seed::derive_seed(config.seed, r as u64));
            Bitstring::new(anneal_read(qubo, &betas, &mut rng))
        })
        .collect();
    SampleDistribution::from_counts(reads.into_iter().map(|b| (b, 1)))
}

/// Lowest-energy read of an annealing run; ties go to the lexicographically
/// smallest bitstring.
pub fn best_read(qubo: &Qubo, dist: &SampleDistribution) -> (Bitstring, f64) {
    let mut best: Option<(&Bitstring, f64)> = None;
    for b in dist.counts().keys() {
        let e = qubo.energy_unchecked(b.bits());
        if best.is_none_or(|(_, be)| e < be) {
            best = Some((b, e));
        }
    }
    let (b, e) = best.expect("distribution is non-empty");
    (b.clone(), e)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InnerSolver {
    Sa,
    BruteForce,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct IhsConfig {
    pub subproblem_size: usize,
    pub max_iterations: usize,
    /// Consecutive non-improving iterations before stopping; the default
    /// equals `max_iterations`, so every iteration runs.
    pub stall_limit: usize,
    pub inner_solver: InnerSolver,
    pub inner_reads: usize,
    pub inner_sweeps: usize,
}

impl Default for IhsConfig {
    fn default() -> Self {
        IhsConfig {
            subproblem_size: 12,
            max_iterations: 50,
            stall_limit: 50,
            inner_solver: InnerSolver::Sa,
            inner_reads: 100,
            inner_sweeps: 100,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IhsResult {
    pub best: Bitstring,
    pub energy: f64,
    pub initial_energy: f64,
    pub iterations: usize,
    /// Incumbent energy after each iteration.
    pub energy_trace: Vec<f64>,
}

pub fn ihs(qubo: &Qubo, config: &IhsConfig, seed: u64) -> Result<IhsResult> {
    let n = qubo.num_vars();
    let k = config.subproblem_size;
    if k == 0 || k > n {
        return Err(Error::param(format!("subproblem size must lie in 1..={n}, got {k}")));
    }
    if config.inner_solver == InnerSolver::BruteForce && k > exact::BRUTE_FORCE_MAX_VARS {
        return Err(Error::Budget(format!(
            "brute-force inner solver supports at most {} variables",
            exact::BRUTE_FORCE_MAX_VARS
        )));
    }
    let mut rng = seed::rng(seed::derive_seed(seed, 0));
    let mut current: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
    let mut energy = qubo.energy_unchecked(&current);
    let initial_energy = energy;
    let mut trace = Vec::with_capacity(config.max_iterations);
    let mut stall = 0;
    let mut iterations = 0;
    while iterations < config.max_iterations && stall < config.stall_limit.max(1) {
        let mut free = index::sample(&mut rng, n, k).into_vec();
        free.sort_unstable();
        let sub = qubo.restrict(&free, &current);
        let solution = match config.inner_solver {
            InnerSolver::BruteForce => exact::brute_force(&sub)?.0,
            InnerSolver::Sa => {
                let cfg = AnnealConfig {
                    num_reads: config.inner_reads,
                    sweeps: config.inner_sweeps,
                    beta_range: None,
                    seed: seed::derive_seed(seed, iterations as u64 + 1),
                };
                best_read(&sub, &simulated_annealing(&sub, &cfg)?).0
            }
        };
        let mut candidate = current.clone();
        for (&v, &b) in free.iter().zip(solution.bits()) {
            candidate[v] = b;
        }
        let e = qubo.energy_unchecked(&candidate);
        if e < energy {
            current = candidate;
            energy = e;
            stall = 0;
        } else {
            stall += 1;
        }
        iterations += 1;
        trace.push(energy);
    }
    Ok(IhsResult {
        best: Bitstring::new(current),
        energy,
        initial_energy,
        iterations,
        energy_trace: trace,
    })
}
