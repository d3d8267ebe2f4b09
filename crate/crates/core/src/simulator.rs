//! Dense statevector simulation for the circuits used by the variational
//! solvers.
//!
//! Conventions:
//!
//! * qubit `l` is bit `l` of the basis-state index; rendered bitstrings put
//!   qubit 0 leftmost;
//! * `R_Y(t) = exp(-i t Y / 2)` and `R_Z(p) = exp(-i p Z / 2)`;
//! * the X mixer is `exp(-i beta X)` on every qubit (no factor 1/2);
//! * the phase separator is `exp(-i gamma H)` with `H` diagonal.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;

use crate::bitstring::Bitstring;
use crate::error::{Error, Result};
use crate::metrics::SampleDistribution;
use crate::qubo::Qubo;
use crate::seed;

pub const MAX_QUBITS: usize = 26;
/// Largest register for which diagonal energies are tabulated.
pub const TABLE_MAX_QUBITS: usize = 22;

pub type Matrix2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn check_qubits(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::param(format!("qubit count {n} outside 1..={MAX_QUBITS}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0...0>`.
    pub fn zero_state(n: usize) -> Result<Self> {
        Self::basis_state(n, 0)
    }

    pub fn basis_state(n: usize, index: usize) -> Result<Self> {
        check_qubits(n)?;
        if index >= 1 << n {
            return Err(Error::IndexOutOfRange { index, len: 1 << n });
        }
        let mut amps = vec![ZERO; 1 << n];
        amps[index] = ONE;
        Ok(StateVector { num_qubits: n, amps })
    }

    pub fn uniform_state(n: usize) -> Result<Self> {
        check_qubits(n)?;
        let a = Complex64::new((0.5f64).powf(n as f64 / 2.0), 0.0);
        Ok(StateVector {
            num_qubits: n,
            amps: vec![a; 1 << n],
        })
    }

    /// Product state `(x) (sqrt(1 - c_l)|0> + sqrt(c_l)|1>)`, i.e.
    /// `R_Y(2 asin sqrt(c_l))|0>` on every qubit.
    pub fn warm_start_state(c_star: &[f64]) -> Result<Self> {
        check_warm_start(c_star)?;
        let n = c_star.len();
        let mut amps = vec![ONE; 1 << n];
        for (l, &c) in c_star.iter().enumerate() {
            let (a0, a1) = ((1.0 - c).sqrt(), c.sqrt());
            for (k, amp) in amps.iter_mut().enumerate() {
                *amp *= if (k >> l) & 1 == 1 { a1 } else { a0 };
            }
        }
        Ok(StateVector { num_qubits: n, amps })
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::param(format!("amplitude count {len} is not 2^n with n >= 1")));
        }
        let n = len.trailing_zeros() as usize;
        check_qubits(n)?;
        Ok(StateVector { num_qubits: n, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Probability that `qubit` reads 1.
    pub fn marginal_one(&self, qubit: usize) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .filter(|(k, _)| (k >> qubit) & 1 == 1)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.num_qubits {
            return Err(Error::IndexOutOfRange {
                index: q,
                len: self.num_qubits,
            });
        }
        Ok(())
    }

    fn check_dim(&self, h: &DiagonalHamiltonian) -> Result<()> {
        if h.num_qubits() != self.num_qubits {
            return Err(Error::param(format!(
                "Hamiltonian acts on {} qubits, state has {}",
                h.num_qubits(),
                self.num_qubits
            )));
        }
        Ok(())
    }

    /// Applies an arbitrary 2x2 matrix to `qubit`.
    pub fn apply_single(&mut self, qubit: usize, m: &Matrix2) -> Result<()> {
        self.check_qubit(qubit)?;
        self.apply_single_unchecked(qubit, m);
        Ok(())
    }

    fn apply_single_unchecked(&mut self, qubit: usize, m: &Matrix2) {
        let stride = 1usize << qubit;
        for base in (0..self.amps.len()).step_by(stride << 1) {
            for k in base..base + stride {
                let a0 = self.amps[k];
                let a1 = self.amps[k + stride];
                self.amps[k] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[k + stride] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    pub fn apply_ry(&mut self, qubit: usize, theta: f64) -> Result<()> {
        self.apply_single(qubit, &ry_matrix(theta))
    }

    pub fn apply_rz(&mut self, qubit: usize, phi: f64) -> Result<()> {
        self.check_qubit(qubit)?;
        let (lo, hi) = (Complex64::cis(-phi / 2.0), Complex64::cis(phi / 2.0));
        for (k, a) in self.amps.iter_mut().enumerate() {
            *a *= if (k >> qubit) & 1 == 1 { hi } else { lo };
        }
        Ok(())
    }

    pub fn apply_cx(&mut self, control: usize, target: usize) -> Result<()> {
        self.check_qubit(control)?;
        self.check_qubit(target)?;
        if control == target {
            return Err(Error::param("CX control and target must differ"));
        }
        let (cm, tm) = (1usize << control, 1usize << target);
        for k in 0..self.amps.len() {
            if k & cm != 0 && k & tm == 0 {
                self.amps.swap(k, k | tm);
            }
        }
        Ok(())
    }

    /// `amp_k <- exp(-i gamma E_k) amp_k`.
    pub fn apply_phase(&mut self, h: &DiagonalHamiltonian, gamma: f64) -> Result<()> {
        self.check_dim(h)?;
        if gamma == 0.0 {
            return Ok(());
        }
        match &h.energies {
            Some(table) => {
                for (a, &e) in self.amps.iter_mut().zip(table) {
                    *a *= Complex64::cis(-gamma * e);
                }
            }
            None => {
                for (k, a) in self.amps.iter_mut().enumerate() {
                    *a *= Complex64::cis(-gamma * h.qubo.energy_of_index(k));
                }
            }
        }
        Ok(())
    }

    /// `exp(-i beta X)` on every qubit.
    pub fn apply_x_mixer(&mut self, beta: f64) {
        let m = x_mixer_matrix(beta);
        for q in 0..self.num_qubits {
            self.apply_single_unchecked(q, &m);
        }
    }

    /// Warm-start mixer `R_Y(t_l) R_Z(-2 beta) R_Y(-t_l)` on every qubit with
    /// `t_l = 2 asin sqrt(c_l)`.
    pub fn apply_ws_mixer(&mut self, c_star: &[f64], beta: f64) -> Result<()> {
        check_warm_start(c_star)?;
        if c_star.len() != self.num_qubits {
            return Err(Error::LengthMismatch {
                expected: self.num_qubits,
                got: c_star.len(),
            });
        }
        for (q, &c) in c_star.iter().enumerate() {
            self.apply_single_unchecked(q, &ws_mixer_matrix(c, beta));
        }
        Ok(())
    }

    /// Exact `<psi|H|psi>`.
    pub fn expectation(&self, h: &DiagonalHamiltonian) -> Result<f64> {
        self.check_dim(h)?;
        Ok(match &h.energies {
            Some(table) => self.amps.iter().zip(table).map(|(a, e)| a.norm_sqr() * e).sum(),
            None => self
                .amps
                .iter()
                .enumerate()
                .map(|(k, a)| a.norm_sqr() * h.qubo.energy_of_index(k))
                .sum(),
        })
    }

    /// Multinomial shot sampling from `|amp|^2`.
    pub fn sample(&self, shots: u64, seed: u64) -> Result<SampleDistribution> {
        if shots == 0 {
            return Err(Error::param("need at least one shot"));
        }
        let mut cdf = Vec::with_capacity(self.amps.len());
        let mut acc = 0.0;
        for a in &self.amps {
            acc += a.norm_sqr();
            cdf.push(acc);
        }
        let total = acc;
        let mut rng = seed::rng(seed);
        let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
        for _ in 0..shots {
            let u = rng.gen::<f64>() * total;
            let k = cdf.partition_point(|&c| c <= u).min(cdf.len() - 1);
            *counts.entry(k).or_insert(0) += 1;
        }
        let n = self.num_qubits;
        SampleDistribution::from_counts(
            counts
                .into_iter()
                .map(|(k, c)| (Bitstring::from_index(k, n), c)),
        )
    }
}

fn check_warm_start(c_star: &[f64]) -> Result<()> {
    check_qubits(c_star.len())?;
    if let Some((l, c)) = c_star.iter().enumerate().find(|(_, &c)| !(c > 0.0 && c < 1.0)) {
        return Err(Error::param(format!(
            "warm-start value c*[{l}] = {c} must lie strictly inside (0, 1)"
        )));
    }
    Ok(())
}

pub fn ry_matrix(theta: f64) -> Matrix2 {
    let (s, c) = (theta / 2.0).sin_cos();
    [
        [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
        [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
    ]
}

pub fn rz_matrix(phi: f64) -> Matrix2 {
    [
        [Complex64::cis(-phi / 2.0), ZERO],
        [ZERO, Complex64::cis(phi / 2.0)],
    ]
}

pub fn x_mixer_matrix(beta: f64) -> Matrix2 {
    let (s, c) = beta.sin_cos();
    [
        [Complex64::new(c, 0.0), Complex64::new(0.0, -s)],
        [Complex64::new(0.0, -s), Complex64::new(c, 0.0)],
    ]
}

pub fn mat_mul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let mut out = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn warm_start_angle(c: f64) -> f64 {
    2.0 * c.sqrt().asin()
}

pub fn ws_mixer_matrix(c: f64, beta: f64) -> Matrix2 {
    let theta = warm_start_angle(c);
    mat_mul(&mat_mul(&ry_matrix(theta), &rz_matrix(-2.0 * beta)), &ry_matrix(-theta))
}

/// Diagonal problem Hamiltonian built from a QUBO.
#[derive(Clone, Debug)]
pub struct DiagonalHamiltonian {
    num_qubits: usize,
    energies: Option<Vec<f64>>,
    qubo: Qubo,
}

impl DiagonalHamiltonian {
    /// Tabulates energies for registers up to [`TABLE_MAX_QUBITS`] qubits
    /// and evaluates them on the fly above.
    pub fn from_qubo(qubo: &Qubo) -> Result<Self> {
        let n = qubo.num_vars();
        check_qubits(n)?;
        let energies = (n <= TABLE_MAX_QUBITS).then(|| energy_table(qubo));
        Ok(DiagonalHamiltonian {
            num_qubits: n,
            energies,
            qubo: qubo.clone(),
        })
    }

    /// Always evaluates energies on the fly.
    pub fn lazy(qubo: &Qubo) -> Result<Self> {
        check_qubits(qubo.num_vars())?;
        Ok(DiagonalHamiltonian {
            num_qubits: qubo.num_vars(),
            energies: None,
            qubo: qubo.clone(),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn energy(&self, index: usize) -> f64 {
        match &self.energies {
            Some(t) => t[index],
            None => self.qubo.energy_of_index(index),
        }
    }

    pub fn qubo(&self) -> &Qubo {
        &self.qubo
    }
}

/// Energies of all basis states by a Gray-code walk.
fn energy_table(qubo: &Qubo) -> Vec<f64> {
    let n = qubo.num_vars();
    let mut table = vec![0.0; 1 << n];
    let mut bits = vec![false; n];
    let mut e = qubo.offset();
    let mut index = 0usize;
    table[0] = e;
    for step in 1usize..(1 << n) {
        let var = step.trailing_zeros() as usize;
        e += qubo.flip_delta_unchecked(&bits, var);
        bits[var] = !bits[var];
        index ^= 1 << var;
        table[index] = e;
    }
    table
}
