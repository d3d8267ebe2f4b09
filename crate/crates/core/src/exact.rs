//! Exact baselines: exhaustive QUBO enumeration and a depth-first
//! branch-and-bound over item assignments.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitstring::Bitstring;
use crate::error::{Error, Result};
use crate::instance::KnapsackInstance;
use crate::qubo::{encode_packing, Qubo, QuboModel};

pub const BRUTE_FORCE_MAX_VARS: usize = 26;
pub const BRANCH_AND_BOUND_MAX_DECISIONS: usize = 30;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactResult {
    pub best_bitstring: Bitstring,
    pub best_energy: f64,
    /// Packed value of the best solution (zero when the QUBO minimizer is
    /// not a valid packing).
    pub optimal_value: u64,
    pub valid: bool,
    /// Bitstrings evaluated (brute force) or search nodes expanded
    /// (branch-and-bound).
    pub enumerated_count: u64,
}

/// Lexicographic rank of a basis index: variable 0 becomes the most
/// significant bit.
#[inline]
fn lex_key(index: u64, n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        index.reverse_bits() >> (64 - n)
    }
}

/// Minimizes `qubo` over all `2^L` bitstrings. Ties go to the
/// lexicographically smallest bitstring.
pub fn brute_force(qubo: &Qubo) -> Result<(Bitstring, f64, u64)> {
    let n = qubo.num_vars();
    if n > BRUTE_FORCE_MAX_VARS {
        return Err(Error::Budget(format!(
            "brute force supports at most {BRUTE_FORCE_MAX_VARS} variables, model has {n}"
        )));
    }
    // Fix the top `hi` bits per chunk and Gray-walk the rest.
    let hi = if n > 10 { 6 } else { 0 };
    let lo = n - hi;
    let chunks: Vec<(u64, f64)> = (0u64..1 << hi)
        .into_par_iter()
        .map(|chunk| {
            let mut bits: Vec<bool> = (0..n).map(|l| l >= lo && (chunk >> (l - lo)) & 1 == 1).collect();
            let mut energy = qubo.energy_unchecked(&bits);
            let mut index = chunk << lo;
            let mut best = (index, energy);
            for step in 1u64..(1u64 << lo) {
                let var = step.trailing_zeros() as usize;
                energy += qubo.flip_delta_unchecked(&bits, var);
                bits[var] = !bits[var];
                index ^= 1 << var;
                if energy < best.1 || (energy == best.1 && lex_key(index, n) < lex_key(best.0, n)) {
                    best = (index, energy);
                }
            }
            best
        })
        .collect();
    let (index, _) = chunks
        .into_iter()
        .reduce(|a, b| {
            if b.1 < a.1 || (b.1 == a.1 && lex_key(b.0, n) < lex_key(a.0, n)) {
                b
            } else {
                a
            }
        })
        .expect("at least one chunk");
    let best = Bitstring::from_index(index as usize, n);
    let energy = qubo.energy_unchecked(best.bits());
    Ok((best, energy, 1u64 << n))
}

pub fn brute_force_qubo(model: &QuboModel) -> Result<ExactResult> {
    let (best, energy, count) = brute_force(model.qubo())?;
    let decoded = model.decode(best.bits())?;
    Ok(ExactResult {
        valid: decoded.is_valid(),
        optimal_value: if decoded.is_valid() { decoded.value } else { 0 },
        best_bitstring: best,
        best_energy: energy,
        enumerated_count: count,
    })
}

struct Search<'a> {
    inst: &'a KnapsackInstance,
    order: Vec<usize>,
    remaining: Vec<u64>,
    current: Vec<Option<usize>>,
    value: u64,
    best_value: u64,
    best: Vec<Option<usize>>,
    nodes: u64,
}

impl Search<'_> {
    /// Fractional bound: merge all residual capacity into one knapsack and
    /// fill it greedily by value density, splitting the last item.
    fn bound(&self, depth: usize) -> f64 {
        let total_cap: u64 = self.remaining.iter().sum();
        let max_cap = self.remaining.iter().copied().max().unwrap_or(0);
        let mut bound = self.value as f64;
        let mut cands: Vec<(u64, u64)> = Vec::new();
        for &j in &self.order[depth..] {
            let w = self.inst.weights()[j];
            if w > max_cap {
                continue;
            }
            // best value over knapsacks the item still fits into
            let v = (0..self.inst.num_knapsacks())
                .filter(|&i| self.remaining[i] >= w)
                .map(|i| self.inst.value(i, j))
                .max()
                .unwrap_or(0);
            if v == 0 {
                continue;
            }
            if w == 0 {
                bound += v as f64;
            } else {
                cands.push((v, w));
            }
        }
        cands.sort_by(|a, b| (b.0 * a.1).cmp(&(a.0 * b.1)));
        let mut cap = total_cap as f64;
        for (v, w) in cands {
            if cap <= 0.0 {
                break;
            }
            let w = w as f64;
            if w <= cap {
                bound += v as f64;
                cap -= w;
            } else {
                bound += v as f64 * cap / w;
                cap = 0.0;
            }
        }
        bound
    }

    fn dfs(&mut self, depth: usize) {
        self.nodes += 1;
        if depth == self.order.len() {
            if self.value > self.best_value {
                self.best_value = self.value;
                self.best.clone_from(&self.current);
            }
            return;
        }
        // values are integers: a strict improvement needs bound >= best + 1
        if self.bound(depth) < self.best_value as f64 + 1.0 - 1e-9 {
            return;
        }
        let j = self.order[depth];
        let w = self.inst.weights()[j];
        self.dfs(depth + 1);
        for i in 0..self.inst.num_knapsacks() {
            if self.remaining[i] >= w {
                self.remaining[i] -= w;
                self.current[j] = Some(i);
                self.value += self.inst.value(i, j);
                self.dfs(depth + 1);
                self.value -= self.inst.value(i, j);
                self.current[j] = None;
                self.remaining[i] += w;
            }
        }
    }
}

/// Optimal packing by depth-first branch-and-bound. Among optimal packings
/// the lexicographically smallest assignment vector is returned, where item
/// `j`'s entry is 0 when unpacked and `i + 1` when in knapsack `i`.
///
/// `best_energy` is the QUBO energy of the encoded packing under the
/// default prefactors (`C = 1`), which is `-optimal_value`.
pub fn branch_and_bound(instance: &KnapsackInstance) -> Result<ExactResult> {
    let (assignment, value, nodes) = optimal_packing(instance)?;
    let layout = instance.layout();
    let bits = encode_packing(instance, &layout, &assignment).expect("feasible packing");
    Ok(ExactResult {
        best_bitstring: bits,
        best_energy: -(value as f64),
        optimal_value: value,
        valid: true,
        enumerated_count: nodes,
    })
}

/// Returns `(assignment, value, nodes)` of the optimal packing.
pub fn optimal_packing(instance: &KnapsackInstance) -> Result<(Vec<Option<usize>>, u64, u64)> {
    let decisions = instance.num_items() * instance.num_knapsacks();
    if decisions > BRANCH_AND_BOUND_MAX_DECISIONS {
        return Err(Error::Budget(format!(
            "branch-and-bound supports at most {BRANCH_AND_BOUND_MAX_DECISIONS} decision variables, instance has {decisions}"
        )));
    }
    let n = instance.num_items();
    // Items in index order, "unpacked" branch first, then knapsacks 0, 1, ...
    // Depth-first order is then lexicographic in the assignment vector and
    // only strict improvements replace the incumbent, so the first optimum
    // reached is the smallest.
    let order: Vec<usize> = (0..n).collect();
    let mut search = Search {
        inst: instance,
        order,
        remaining: instance.capacities().to_vec(),
        current: vec![None; n],
        value: 0,
        best_value: 0,
        best: vec![None; n],
        nodes: 0,
    };
    search.dfs(0);
    Ok((search.best, search.best_value, search.nodes))
}
