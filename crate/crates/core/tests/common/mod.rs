//! Independent test oracles: direct penalty evaluation from the instance,
//! exhaustive packing enumeration and dense Kronecker-product operators.
#![allow(dead_code)]

use mkq_core::instance::{generate_instance, GeneratorParams, IntRange, KnapsackInstance};
use num_complex::Complex64;

pub type Dense = Vec<Vec<Complex64>>;
pub type M2 = [[Complex64; 2]; 2];

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Small random instance with `N <= 4`, `M <= 2`.
pub fn small_instance(seed: u64) -> KnapsackInstance {
    let params = GeneratorParams {
        num_items: 1 + (seed % 4) as usize,
        num_knapsacks: 1 + ((seed / 4) % 2) as usize,
        weight_range: IntRange::new(1, 5),
        value_range: IntRange::new(1, 6),
        capacity_range: IntRange::new(1, 7),
    };
    generate_instance(&params, seed).unwrap()
}

/// `(H_single, H_capacity, H_obj)` evaluated straight from the instance,
/// with decision bit `i*N + j` and slack bits after all decisions.
pub fn direct_terms(inst: &KnapsackInstance, bits: &[bool]) -> (f64, f64, f64) {
    let (n, m) = (inst.num_items(), inst.num_knapsacks());
    let x = |i: usize, j: usize| bits[i * n + j] as i64;
    let mut single = 0i64;
    for j in 0..n {
        let s: i64 = (0..m).map(|i| x(i, j)).sum();
        single += s * (s - 1);
    }
    let mut capacity = 0i64;
    let mut slack_start = n * m;
    for i in 0..m {
        let cap = inst.capacities()[i] as i64;
        let bits_here = (64 - cap.leading_zeros()) as usize;
        let load: i64 = (0..n).map(|j| inst.weights()[j] as i64 * x(i, j)).sum();
        let slack: i64 = (0..bits_here).map(|b| (bits[slack_start + b] as i64) << b).sum();
        slack_start += bits_here;
        capacity += (load + slack - cap).pow(2);
    }
    let mut obj = 0i64;
    for i in 0..m {
        for j in 0..n {
            obj -= inst.value(i, j) as i64 * x(i, j);
        }
    }
    (single as f64, capacity as f64, obj as f64)
}

pub fn direct_energy(inst: &KnapsackInstance, a: f64, b: f64, cc: f64, bits: &[bool]) -> f64 {
    let (s, cap, o) = direct_terms(inst, bits);
    a * s + b * cap + cc * o
}

/// Best packing value by enumerating all `(M + 1)^N` item assignments.
pub fn enumerate_packings(inst: &KnapsackInstance) -> u64 {
    let (n, m) = (inst.num_items(), inst.num_knapsacks());
    let total = (m + 1).pow(n as u32);
    let mut best = 0;
    for code in 0..total {
        let mut rest = code;
        let mut load = vec![0u64; m];
        let mut value = 0;
        for j in 0..n {
            let choice = rest % (m + 1);
            rest /= m + 1;
            if choice > 0 {
                load[choice - 1] += inst.weights()[j];
                value += inst.value(choice - 1, j);
            }
        }
        if load.iter().zip(inst.capacities()).all(|(l, c)| l <= c) {
            best = best.max(value);
        }
    }
    best
}

pub fn identity(dim: usize) -> Dense {
    (0..dim)
        .map(|r| (0..dim).map(|k| if r == k { c(1.0, 0.0) } else { c(0.0, 0.0) }).collect())
        .collect()
}

pub fn kron(a: &Dense, b: &Dense) -> Dense {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![c(0.0, 0.0); ra * rb]; ra * rb];
    for i in 0..ra {
        for j in 0..ra {
            for k in 0..rb {
                for l in 0..rb {
                    out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

fn to_dense(m: &M2) -> Dense {
    vec![vec![m[0][0], m[0][1]], vec![m[1][0], m[1][1]]]
}

/// `ops[q]` acts on qubit `q`; qubit `n - 1` is the most significant
/// factor, so qubit `q` is bit `q` of the basis index.
pub fn kron_all(ops: &[M2]) -> Dense {
    let mut out = identity(1);
    for op in ops.iter().rev() {
        out = kron(&out, &to_dense(op));
    }
    out
}

pub fn eye2() -> M2 {
    [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]
}

pub fn single(n: usize, q: usize, m: M2) -> Dense {
    let mut ops = vec![eye2(); n];
    ops[q] = m;
    kron_all(&ops)
}

pub fn add(a: &Dense, b: &Dense) -> Dense {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn cx(n: usize, control: usize, target: usize) -> Dense {
    let p0 = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]];
    let p1 = [[c(0.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
    let x = [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]];
    let mut a = vec![eye2(); n];
    a[control] = p0;
    let mut b = vec![eye2(); n];
    b[control] = p1;
    b[target] = x;
    add(&kron_all(&a), &kron_all(&b))
}

pub fn diag(values: &[Complex64]) -> Dense {
    let mut d = identity(values.len());
    for (k, v) in values.iter().enumerate() {
        d[k][k] = *v;
    }
    d
}

pub fn matvec(m: &Dense, v: &[Complex64]) -> Vec<Complex64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// `exp(-i t Y / 2)` written out.
pub fn ry(t: f64) -> M2 {
    let (s, co) = (t / 2.0).sin_cos();
    [[c(co, 0.0), c(-s, 0.0)], [c(s, 0.0), c(co, 0.0)]]
}

/// `exp(-i t Z / 2)` written out.
pub fn rz(t: f64) -> M2 {
    [[c(0.0, -t / 2.0).exp(), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, t / 2.0).exp()]]
}

/// `exp(-i b X)` written out.
pub fn xmix(b: f64) -> M2 {
    let (s, co) = b.sin_cos();
    [[c(co, 0.0), c(0.0, -s)], [c(0.0, -s), c(co, 0.0)]]
}

pub fn mul2(a: &M2, b: &M2) -> M2 {
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn ws_angle(cs: f64) -> f64 {
    2.0 * cs.sqrt().asin()
}

/// `R_Y(theta) R_Z(-2 beta) R_Y(-theta)`.
pub fn ws_mix(cs: f64, beta: f64) -> M2 {
    let t = ws_angle(cs);
    mul2(&mul2(&ry(t), &rz(-2.0 * beta)), &ry(-t))
}

pub fn zero_state(n: usize) -> Vec<Complex64> {
    let mut v = vec![c(0.0, 0.0); 1 << n];
    v[0] = c(1.0, 0.0);
    v
}

/// Diagonal `exp(-i gamma E(k))`.
pub fn phase(energies: &[f64], gamma: f64) -> Dense {
    diag(&energies.iter().map(|e| c(0.0, -gamma * e).exp()).collect::<Vec<_>>())
}

/// Dense QAOA-family state. `c_star = None` means the uniform start with
/// the X mixer; `ws_mixer` selects the warm-start mixer.
pub fn qaoa_state(energies: &[f64], n: usize, c_star: Option<&[f64]>, ws_mixer: bool, gammas: &[f64], betas: &[f64]) -> Vec<Complex64> {
    let init: Vec<M2> = match c_star {
        Some(cs) => cs.iter().map(|&v| ry(ws_angle(v))).collect(),
        None => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            vec![[[c(s, 0.0), c(s, 0.0)], [c(s, 0.0), c(-s, 0.0)]]; n]
        }
    };
    let mut state = matvec(&kron_all(&init), &zero_state(n));
    for (&g, &b) in gammas.iter().zip(betas) {
        state = matvec(&phase(energies, g), &state);
        let mix: Vec<M2> = (0..n)
            .map(|q| match (ws_mixer, c_star) {
                (true, Some(cs)) => ws_mix(cs[q], b),
                _ => xmix(b),
            })
            .collect();
        state = matvec(&kron_all(&mix), &state);
    }
    state
}

pub fn vqe_state(n: usize, layers: usize, thetas: &[f64]) -> Vec<Complex64> {
    let mut state = zero_state(n);
    for (layer, angles) in thetas.chunks(n).enumerate() {
        let rot: Vec<M2> = angles.iter().map(|&t| ry(t)).collect();
        state = matvec(&kron_all(&rot), &state);
        if layer < layers {
            for q in 0..n.saturating_sub(1) {
                state = matvec(&cx(n, q, q + 1), &state);
            }
        }
    }
    state
}
