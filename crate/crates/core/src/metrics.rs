//! Solution-quality measures computed from sampled distributions.
//!
//! * validity: every penalty term of the QUBO vanishes;
//! * closeness to optimum: `100 * v_tot(x_min) / v_opt` for the lowest-energy
//!   sample `x_min`, averaged over the runs where `x_min` is valid;
//! * 0.90-opt overlap: per run, the sum of amplitudes `sqrt(p(x))` over
//!   valid samples with `v_tot(x) / v_opt >= c_lim`, averaged over runs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bitstring::Bitstring;
use crate::error::{Error, Result};
use crate::qubo::QuboModel;

pub const DEFAULT_C_LIM: f64 = 0.90;

/// Bitstring -> shot count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleDistribution {
    counts: BTreeMap<Bitstring, u64>,
    total_shots: u64,
}

impl SampleDistribution {
    /// Merges duplicate keys and drops zero counts.
    pub fn from_counts(counts: impl IntoIterator<Item = (Bitstring, u64)>) -> Result<Self> {
        let mut map: BTreeMap<Bitstring, u64> = BTreeMap::new();
        let mut len = None;
        for (b, c) in counts {
            if *len.get_or_insert(b.len()) != b.len() {
                return Err(Error::param("bitstrings in a distribution must share one length"));
            }
            if c > 0 {
                *map.entry(b).or_insert(0) += c;
            }
        }
        let total_shots = map.values().sum();
        if total_shots == 0 {
            return Err(Error::param("distribution has no shots"));
        }
        Ok(SampleDistribution {
            counts: map,
            total_shots,
        })
    }

    pub fn single(bits: Bitstring) -> Self {
        SampleDistribution {
            counts: BTreeMap::from([(bits, 1)]),
            total_shots: 1,
        }
    }

    pub fn counts(&self) -> &BTreeMap<Bitstring, u64> {
        &self.counts
    }

    pub fn total_shots(&self) -> u64 {
        self.total_shots
    }

    pub fn probability(&self, bits: &Bitstring) -> f64 {
        self.counts.get(bits).map_or(0.0, |&c| c as f64 / self.total_shots as f64)
    }

    pub fn amplitude(&self, bits: &Bitstring) -> f64 {
        self.probability(bits).sqrt()
    }

    /// `(bitstring, probability)` pairs in lexicographic order.
    pub fn iter_probabilities(&self) -> impl Iterator<Item = (&Bitstring, f64)> + '_ {
        let total = self.total_shots as f64;
        self.counts.iter().map(move |(b, &c)| (b, c as f64 / total))
    }

    /// Lowest-energy sample; ties go to the lexicographically smallest.
    pub fn lowest_energy(&self, model: &QuboModel) -> Result<(Bitstring, f64)> {
        let mut best: Option<(&Bitstring, f64)> = None;
        for b in self.counts.keys() {
            let e = model.energy(b.bits())?;
            if best.is_none_or(|(_, be)| e < be) {
                best = Some((b, e));
            }
        }
        let (b, e) = best.expect("non-empty distribution");
        Ok((b.clone(), e))
    }
}

pub fn is_valid(model: &QuboModel, bits: &[bool]) -> Result<bool> {
    model.is_valid(bits)
}

fn check_v_opt(v_opt: u64) -> Result<()> {
    if v_opt == 0 {
        return Err(Error::param("v_opt = 0 makes the closeness ratio undefined"));
    }
    Ok(())
}

/// One run's closeness contribution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Closeness {
    pub x_min: Bitstring,
    pub energy: f64,
    pub valid: bool,
    pub v_tot: u64,
    /// `Some(100 * v_tot / v_opt)` when `x_min` is valid; invalid runs are
    /// excluded from the mean.
    pub c_opt: Option<f64>,
}

pub fn closeness(dist: &SampleDistribution, model: &QuboModel, v_opt: u64) -> Result<Closeness> {
    check_v_opt(v_opt)?;
    let (x_min, energy) = dist.lowest_energy(model)?;
    let decoded = model.decode(x_min.bits())?;
    let valid = decoded.is_valid();
    Ok(Closeness {
        x_min,
        energy,
        valid,
        v_tot: decoded.value,
        c_opt: valid.then(|| 100.0 * decoded.value as f64 / v_opt as f64),
    })
}

/// Overlap with the `c_lim`-opt solutions, from arbitrary
/// `(bitstring, probability)` pairs (shot frequencies or exact
/// statevector probabilities).
pub fn overlap_from_probabilities<'a>(
    probs: impl IntoIterator<Item = (&'a Bitstring, f64)>,
    model: &QuboModel,
    v_opt: u64,
    c_lim: f64,
) -> Result<f64> {
    check_v_opt(v_opt)?;
    let mut sum = 0.0;
    for (b, p) in probs {
        if p <= 0.0 {
            continue;
        }
        let d = model.decode(b.bits())?;
        if d.is_valid() && d.value as f64 / v_opt as f64 >= c_lim {
            sum += p.sqrt();
        }
    }
    Ok(sum)
}

pub fn overlap_90(dist: &SampleDistribution, model: &QuboModel, v_opt: u64, c_lim: f64) -> Result<f64> {
    overlap_from_probabilities(dist.iter_probabilities(), model, v_opt, c_lim)
}

/// Per-run record fed into [`aggregate`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunMetrics {
    pub closeness: Closeness,
    /// `None` when the solver does not produce a meaningful distribution.
    pub o90: Option<f64>,
}

pub fn evaluate_run(
    dist: &SampleDistribution,
    model: &QuboModel,
    v_opt: u64,
    c_lim: f64,
    with_overlap: bool,
) -> Result<RunMetrics> {
    Ok(RunMetrics {
        closeness: closeness(dist, model, v_opt)?,
        o90: if with_overlap {
            Some(overlap_90(dist, model, v_opt, c_lim)?)
        } else {
            None
        },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeanStd {
    pub mean: f64,
    pub std: f64,
}

/// Mean and population standard deviation.
pub fn mean_std(xs: &[f64]) -> Option<MeanStd> {
    if xs.is_empty() {
        return None;
    }
    if xs.iter().all(|&x| x == xs[0]) {
        return Some(MeanStd { mean: xs[0], std: 0.0 });
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    Some(MeanStd { mean, std: var.sqrt() })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QualityReport {
    pub n_run: usize,
    pub c_lim: f64,
    /// Lowest-energy sample over all runs.
    pub best_bitstring: Bitstring,
    pub best_valid: bool,
    pub best_v_tot: u64,
    pub c_opt_per_run: Vec<Option<f64>>,
    pub o90_per_run: Vec<Option<f64>>,
    /// Absent when no run produced a valid `x_min`.
    pub c_opt: Option<MeanStd>,
    pub o90: Option<MeanStd>,
    /// Runs whose `x_min` was invalid.
    pub excluded_runs: usize,
}

pub fn aggregate(runs: &[RunMetrics], c_lim: f64) -> Result<QualityReport> {
    let first = runs.first().ok_or_else(|| Error::param("aggregate needs at least one run"))?;
    let mut best = &first.closeness;
    for r in &runs[1..] {
        let c = &r.closeness;
        if c.energy < best.energy || (c.energy == best.energy && c.x_min < best.x_min) {
            best = c;
        }
    }
    let c_opt_per_run: Vec<Option<f64>> = runs.iter().map(|r| r.closeness.c_opt).collect();
    let o90_per_run: Vec<Option<f64>> = runs.iter().map(|r| r.o90).collect();
    let valid: Vec<f64> = c_opt_per_run.iter().flatten().copied().collect();
    let overlaps: Vec<f64> = o90_per_run.iter().flatten().copied().collect();
    Ok(QualityReport {
        n_run: runs.len(),
        c_lim,
        best_bitstring: best.x_min.clone(),
        best_valid: best.valid,
        best_v_tot: best.v_tot,
        excluded_runs: runs.len() - valid.len(),
        c_opt: mean_std(&valid),
        o90: mean_std(&overlaps),
        c_opt_per_run,
        o90_per_run,
    })
}
