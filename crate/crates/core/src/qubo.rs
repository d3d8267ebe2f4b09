//! Penalty-weighted QUBO encoding of the multi-knapsack problem.
//!
//! The Hamiltonian is `A * H_single + B * H_capacity + C * H_obj` where
//!
//! * `H_single = sum_j s_j (s_j - 1)` with `s_j = sum_i x[i][j]`,
//! * `H_capacity = sum_i (sum_j w_j x[i][j] + sum_b 2^b y[i][b] - c_i)^2`,
//! * `H_obj = -sum_{i,j} v[i][j] x[i][j]`.
//!
//! Squares are expanded and `x^2 = x` is folded into the linear terms at
//! compile time, so the stored form is `offset + sum_p h_p x_p + sum_{p<q} J_pq x_p x_q`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitstring::Bitstring;
use crate::error::{Error, Result};
use crate::instance::{KnapsackInstance, QubitLayout};
use crate::seed;

/// Generic quadratic form over binary variables.
#[derive(Clone, Debug, PartialEq)]
pub struct Qubo {
    linear: Vec<f64>,
    quadratic: BTreeMap<(usize, usize), f64>,
    offset: f64,
    neighbors: Vec<Vec<(usize, f64)>>,
}

impl Qubo {
    pub fn new(num_vars: usize) -> Self {
        Qubo {
            linear: vec![0.0; num_vars],
            quadratic: BTreeMap::new(),
            offset: 0.0,
            neighbors: vec![Vec::new(); num_vars],
        }
    }

    /// Builds a model from explicit terms. Quadratic keys may come in either
    /// order; duplicates are summed and zero entries dropped.
    pub fn from_terms(
        linear: Vec<f64>,
        quadratic: impl IntoIterator<Item = ((usize, usize), f64)>,
        offset: f64,
    ) -> Result<Self> {
        let n = linear.len();
        let mut q = Qubo::new(n);
        q.linear = linear;
        q.offset = offset;
        for ((a, b), c) in quadratic {
            if a >= n || b >= n {
                return Err(Error::IndexOutOfRange {
                    index: a.max(b),
                    len: n,
                });
            }
            if a == b {
                q.linear[a] += c;
            } else {
                q.add_quadratic_raw(a, b, c);
            }
        }
        q.finish();
        Ok(q)
    }

    fn add_quadratic_raw(&mut self, a: usize, b: usize, c: f64) {
        let key = if a < b { (a, b) } else { (b, a) };
        *self.quadratic.entry(key).or_insert(0.0) += c;
    }

    fn finish(&mut self) {
        self.quadratic.retain(|_, c| *c != 0.0);
        let mut neighbors = vec![Vec::new(); self.linear.len()];
        for (&(p, q), &c) in &self.quadratic {
            neighbors[p].push((q, c));
            neighbors[q].push((p, c));
        }
        self.neighbors = neighbors;
    }

    pub fn num_vars(&self) -> usize {
        self.linear.len()
    }

    pub fn linear(&self) -> &[f64] {
        &self.linear
    }

    pub fn quadratic(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.quadratic
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Coupled variables of `var` with their coefficients.
    pub fn neighbors(&self, var: usize) -> &[(usize, f64)] {
        &self.neighbors[var]
    }

    pub fn energy(&self, bits: &[bool]) -> Result<f64> {
        if bits.len() != self.num_vars() {
            return Err(Error::LengthMismatch {
                expected: self.num_vars(),
                got: bits.len(),
            });
        }
        Ok(self.energy_unchecked(bits))
    }

    pub fn energy_unchecked(&self, bits: &[bool]) -> f64 {
        let mut e = self.offset;
        for (h, &b) in self.linear.iter().zip(bits) {
            if b {
                e += h;
            }
        }
        for (&(p, q), &c) in &self.quadratic {
            if bits[p] && bits[q] {
                e += c;
            }
        }
        e
    }

    /// Energy of the basis state `index` (bit `l` of `index` is variable `l`).
    pub fn energy_of_index(&self, index: usize) -> f64 {
        let bit = |l: usize| (index >> l) & 1 == 1;
        let mut e = self.offset;
        for (l, h) in self.linear.iter().enumerate() {
            if bit(l) {
                e += h;
            }
        }
        for (&(p, q), &c) in &self.quadratic {
            if bit(p) && bit(q) {
                e += c;
            }
        }
        e
    }

    /// `energy(x with var flipped) - energy(x)` in `O(degree(var))`.
    #[inline]
    pub fn flip_delta_unchecked(&self, bits: &[bool], var: usize) -> f64 {
        let mut field = self.linear[var];
        for &(other, c) in &self.neighbors[var] {
            if bits[other] {
                field += c;
            }
        }
        if bits[var] {
            -field
        } else {
            field
        }
    }

    /// Continuous extension `offset + h.x + sum J_pq x_p x_q` on `[0,1]^L`.
    pub fn continuous_energy(&self, x: &[f64]) -> f64 {
        let mut e = self.offset;
        for (h, v) in self.linear.iter().zip(x) {
            e += h * v;
        }
        for (&(p, q), &c) in &self.quadratic {
            e += c * x[p] * x[q];
        }
        e
    }

    fn continuous_gradient(&self, x: &[f64], grad: &mut [f64]) {
        for (p, g) in grad.iter_mut().enumerate() {
            let mut acc = self.linear[p];
            for &(q, c) in &self.neighbors[p] {
                acc += c * x[q];
            }
            *g = acc;
        }
    }

    /// Gershgorin bound on the Hessian spectral radius.
    fn lipschitz_estimate(&self) -> f64 {
        self.neighbors
            .iter()
            .map(|row| row.iter().map(|(_, c)| c.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Restricts the model to `free` variables with every other variable
    /// clamped to its value in `assignment`. Clamped contributions are
    /// folded into the linear terms and the offset, so for every setting `z`
    /// of the free variables the sub-model energy equals the full energy of
    /// the spliced assignment.
    pub fn restrict(&self, free: &[usize], assignment: &[bool]) -> Qubo {
        let n = self.num_vars();
        let mut local = vec![usize::MAX; n];
        for (k, &v) in free.iter().enumerate() {
            local[v] = k;
        }
        let mut sub = Qubo::new(free.len());
        let mut offset = self.offset;
        for v in 0..n {
            if local[v] == usize::MAX {
                if assignment[v] {
                    offset += self.linear[v];
                }
            } else {
                sub.linear[local[v]] = self.linear[v];
            }
        }
        for (&(p, q), &c) in &self.quadratic {
            match (local[p] != usize::MAX, local[q] != usize::MAX) {
                (true, true) => sub.add_quadratic_raw(local[p], local[q], c),
                (true, false) => {
                    if assignment[q] {
                        sub.linear[local[p]] += c;
                    }
                }
                (false, true) => {
                    if assignment[p] {
                        sub.linear[local[q]] += c;
                    }
                }
                (false, false) => {
                    if assignment[p] && assignment[q] {
                        offset += c;
                    }
                }
            }
        }
        sub.offset = offset;
        sub.finish();
        sub
    }

    /// Line-oriented interchange format: `offset c`, `lin p c`, `quad p q c`.
    pub fn to_dump(&self) -> String {
        let mut out = String::new();
        writeln!(out, "vars {}", self.num_vars()).unwrap();
        writeln!(out, "offset {}", self.offset).unwrap();
        for (p, &h) in self.linear.iter().enumerate() {
            if h != 0.0 {
                writeln!(out, "lin {p} {h}").unwrap();
            }
        }
        for (&(p, q), &c) in &self.quadratic {
            writeln!(out, "quad {p} {q} {c}").unwrap();
        }
        out
    }

    pub fn from_dump(text: &str) -> Result<Qubo> {
        let err = |line: usize, msg: &str| Error::Parse {
            what: "QUBO dump".into(),
            message: format!("line {}: {msg}", line + 1),
        };
        let mut num_vars = None;
        let mut offset = 0.0;
        let mut lin = Vec::new();
        let mut quad = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let int = |s: &str| s.parse::<usize>().map_err(|_| err(ln, "bad index"));
            let real = |s: &str| s.parse::<f64>().map_err(|_| err(ln, "bad coefficient"));
            match fields.as_slice() {
                ["vars", n] => num_vars = Some(int(n)?),
                ["offset", c] => offset = real(c)?,
                ["lin", p, c] => lin.push((int(p)?, real(c)?)),
                ["quad", p, q, c] => quad.push(((int(p)?, int(q)?), real(c)?)),
                _ => return Err(err(ln, "unrecognized record")),
            }
        }
        let n = num_vars.ok_or_else(|| err(0, "missing `vars` record"))?;
        let mut linear = vec![0.0; n];
        for (p, c) in lin {
            if p >= n {
                return Err(Error::IndexOutOfRange { index: p, len: n });
            }
            linear[p] += c;
        }
        Qubo::from_terms(linear, quad, offset)
    }
}

/// Penalty and objective prefactors.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PenaltyWeights {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl PenaltyWeights {
    /// `C = 1` and `A = B = 2 * max v`.
    pub fn default_for(instance: &KnapsackInstance) -> Result<Self> {
        let max_v = instance.max_value();
        if max_v == 0 {
            return Err(Error::param(
                "all item values are zero, so the default prefactors A = B = 2*max(v) vanish; \
                 pass explicit penalty weights",
            ));
        }
        let a = 2.0 * max_v as f64;
        Ok(PenaltyWeights { a, b: a, c: 1.0 })
    }

    fn check(&self) -> Result<()> {
        if !(self.a > 0.0 && self.b > 0.0 && self.c > 0.0) {
            return Err(Error::param(format!(
                "penalty weights must be positive, got A={}, B={}, C={}",
                self.a, self.b, self.c
            )));
        }
        Ok(())
    }
}

/// Values of the three Hamiltonian parts on one assignment.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PenaltyBreakdown {
    pub single: f64,
    pub capacity: f64,
    pub objective: f64,
}

impl PenaltyBreakdown {
    pub fn combined(&self, w: &PenaltyWeights) -> f64 {
        w.a * self.single + w.b * self.capacity + w.c * self.objective
    }
}

/// Integer-exact decoding of an assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodedAssignment {
    /// `H_single` value.
    pub single: i128,
    /// `H_capacity` value.
    pub capacity: i128,
    /// Total packed value `sum v[i][j] x[i][j]`.
    pub value: u64,
}

impl DecodedAssignment {
    pub fn is_valid(&self) -> bool {
        self.single == 0 && self.capacity == 0
    }
}

/// A compiled knapsack QUBO together with the instance it encodes.
#[derive(Clone, Debug)]
pub struct QuboModel {
    qubo: Qubo,
    instance: KnapsackInstance,
    layout: QubitLayout,
    weights: PenaltyWeights,
}

/// Accumulates `scale * (sum_k a_k z_k - constant)^2` into `qubo`.
fn add_squared_form(qubo: &mut Qubo, terms: &[(usize, f64)], constant: f64, scale: f64) {
    for (k, &(zk, ak)) in terms.iter().enumerate() {
        qubo.linear[zk] += scale * (ak * ak - 2.0 * constant * ak);
        for &(zl, al) in &terms[k + 1..] {
            qubo.add_quadratic_raw(zk, zl, scale * 2.0 * ak * al);
        }
    }
    qubo.offset += scale * constant * constant;
}

impl QuboModel {
    pub fn compile(instance: &KnapsackInstance, weights: Option<PenaltyWeights>) -> Result<Self> {
        let weights = match weights {
            Some(w) => {
                w.check()?;
                w
            }
            None => PenaltyWeights::default_for(instance)?,
        };
        let layout = instance.layout();
        let n_items = instance.num_items();
        let n_sacks = instance.num_knapsacks();
        let mut qubo = Qubo::new(layout.total_qubits());

        // s (s - 1) = sum_i x_i + 2 sum_{i<i'} x_i x_i' - sum_i x_i
        for j in 0..n_items {
            for i in 0..n_sacks {
                for i2 in i + 1..n_sacks {
                    qubo.add_quadratic_raw(
                        layout.index_of_decision(i, j),
                        layout.index_of_decision(i2, j),
                        2.0 * weights.a,
                    );
                }
            }
        }

        for i in 0..n_sacks {
            let mut terms: Vec<(usize, f64)> = (0..n_items)
                .filter(|&j| instance.weights()[j] != 0)
                .map(|j| (layout.index_of_decision(i, j), instance.weights()[j] as f64))
                .collect();
            terms.extend(
                (0..layout.slack_counts()[i]).map(|b| (layout.index_of_slack(i, b), (1u64 << b) as f64)),
            );
            add_squared_form(&mut qubo, &terms, instance.capacities()[i] as f64, weights.b);
        }

        for i in 0..n_sacks {
            for j in 0..n_items {
                qubo.linear[layout.index_of_decision(i, j)] -= weights.c * instance.value(i, j) as f64;
            }
        }
        qubo.finish();

        Ok(QuboModel {
            qubo,
            instance: instance.clone(),
            layout,
            weights,
        })
    }

    pub fn qubo(&self) -> &Qubo {
        &self.qubo
    }

    pub fn instance(&self) -> &KnapsackInstance {
        &self.instance
    }

    pub fn layout(&self) -> &QubitLayout {
        &self.layout
    }

    pub fn weights(&self) -> &PenaltyWeights {
        &self.weights
    }

    pub fn num_vars(&self) -> usize {
        self.qubo.num_vars()
    }

    pub fn energy(&self, bits: &[bool]) -> Result<f64> {
        self.qubo.energy(bits)
    }

    fn check_len(&self, bits: &[bool]) -> Result<()> {
        if bits.len() != self.num_vars() {
            return Err(Error::LengthMismatch {
                expected: self.num_vars(),
                got: bits.len(),
            });
        }
        Ok(())
    }

    /// Decodes an assignment with integer arithmetic.
    pub fn decode(&self, bits: &[bool]) -> Result<DecodedAssignment> {
        self.check_len(bits)?;
        let inst = &self.instance;
        let layout = &self.layout;
        let mut single = 0i128;
        for j in 0..inst.num_items() {
            let s = (0..inst.num_knapsacks())
                .filter(|&i| bits[layout.index_of_decision(i, j)])
                .count() as i128;
            single += s * (s - 1);
        }
        let mut capacity = 0i128;
        let mut value = 0u64;
        for i in 0..inst.num_knapsacks() {
            let mut fill = 0i128;
            for j in 0..inst.num_items() {
                if bits[layout.index_of_decision(i, j)] {
                    fill += inst.weights()[j] as i128;
                    value += inst.value(i, j);
                }
            }
            for b in 0..layout.slack_counts()[i] {
                if bits[layout.index_of_slack(i, b)] {
                    fill += 1i128 << b;
                }
            }
            let r = fill - inst.capacities()[i] as i128;
            capacity += r * r;
        }
        Ok(DecodedAssignment {
            single,
            capacity,
            value,
        })
    }

    pub fn penalty_breakdown(&self, bits: &[bool]) -> Result<PenaltyBreakdown> {
        let d = self.decode(bits)?;
        Ok(PenaltyBreakdown {
            single: d.single as f64,
            capacity: d.capacity as f64,
            objective: -(d.value as f64),
        })
    }

    pub fn is_valid(&self, bits: &[bool]) -> Result<bool> {
        Ok(self.decode(bits)?.is_valid())
    }

    /// Encodes a packing (`assignment[j] = Some(i)` puts item `j` into
    /// knapsack `i`) with the slack bits set to the unused capacity. Returns
    /// `None` when a knapsack is overfull.
    pub fn encode_packing(&self, assignment: &[Option<usize>]) -> Option<Bitstring> {
        let inst = &self.instance;
        encode_packing(inst, &self.layout, assignment)
    }
}

pub(crate) fn encode_packing(
    inst: &KnapsackInstance,
    layout: &QubitLayout,
    assignment: &[Option<usize>],
) -> Option<Bitstring> {
    let mut bits = Bitstring::zeros(layout.total_qubits());
    let mut load = vec![0u64; inst.num_knapsacks()];
    for (j, slot) in assignment.iter().enumerate() {
        if let Some(i) = *slot {
            bits.bits_mut()[layout.index_of_decision(i, j)] = true;
            load[i] += inst.weights()[j];
        }
    }
    for i in 0..inst.num_knapsacks() {
        let slack = inst.capacities()[i].checked_sub(load[i])?;
        for b in 0..layout.slack_counts()[i] {
            if (slack >> b) & 1 == 1 {
                bits.bits_mut()[layout.index_of_slack(i, b)] = true;
            }
        }
    }
    Some(bits)
}

/// Clamp applied to relaxed solutions so that warm-start angles stay away
/// from the poles.
pub const RELAXATION_EPSILON: f64 = 0.01;
pub const RELAXATION_ITERATIONS: usize = 500;
pub const RELAXATION_RESTARTS: usize = 16;

/// Multi-start projected gradient descent on the continuous extension of
/// the QUBO over `[0,1]^L`.
///
/// Each start is uniform in the box, drawn from its own derived seed, and
/// takes a fixed number of steps of size `1 / (2 L)` where `L` is a
/// Gershgorin bound on the Hessian. The lowest-energy endpoint wins (ties go
/// to the lower restart index) and is clamped to `[eps, 1 - eps]`.
pub fn solve_relaxation(qubo: &Qubo, restarts: usize, seed: u64) -> Vec<f64> {
    relaxation_with_energy(qubo, restarts, seed).0
}

/// Like [`solve_relaxation`], also returning the unclamped best energy.
pub fn relaxation_with_energy(qubo: &Qubo, restarts: usize, seed: u64) -> (Vec<f64>, f64) {
    use rand::Rng;
    let n = qubo.num_vars();
    let restarts = restarts.max(1);
    let lip = qubo.lipschitz_estimate();
    let step = if lip > 0.0 { 1.0 / (2.0 * lip) } else { 1.0 };

    let runs: Vec<(Vec<f64>, f64)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = seed::rng(seed::derive_seed(seed, r as u64));
            let mut x: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
            let mut grad = vec![0.0; n];
            for _ in 0..RELAXATION_ITERATIONS {
                qubo.continuous_gradient(&x, &mut grad);
                for (xi, g) in x.iter_mut().zip(&grad) {
                    *xi = (*xi - step * g).clamp(0.0, 1.0);
                }
            }
            let e = qubo.continuous_energy(&x);
            (x, e)
        })
        .collect();

    let (mut best, best_e) = runs
        .into_iter()
        .reduce(|a, b| if b.1 < a.1 { b } else { a })
        .expect("at least one restart");
    for v in &mut best {
        *v = v.clamp(RELAXATION_EPSILON, 1.0 - RELAXATION_EPSILON);
    }
    (best, best_e)
}
