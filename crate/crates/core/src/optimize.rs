//! Derivative-free minimizers for the variational outer loop.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    NelderMead,
    Cobyla,
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "nelder_mead" | "nm" => Ok(Method::NelderMead),
            "cobyla" => Ok(Method::Cobyla),
            other => Err(format!("unknown optimizer {other:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MinimizeOptions {
    pub max_iter: usize,
    /// Nelder-Mead: bound on both the spread of simplex values and the
    /// largest vertex distance from the best vertex. COBYLA: final trust
    /// radius.
    pub tol: f64,
    /// Initial simplex edge / initial trust radius.
    pub initial_step: f64,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        MinimizeOptions {
            max_iter: 10_000,
            tol: 1e-6,
            initial_step: 0.5,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

/// Wraps the objective to count evaluations and remember the best point.
struct Tracked<F> {
    f: F,
    evals: usize,
    best_x: Vec<f64>,
    best_v: f64,
}

impl<F: FnMut(&[f64]) -> f64> Tracked<F> {
    fn new(f: F, n: usize) -> Self {
        Tracked {
            f,
            evals: 0,
            best_x: vec![0.0; n],
            best_v: f64::INFINITY,
        }
    }

    fn eval(&mut self, x: &[f64]) -> f64 {
        let mut v = (self.f)(x);
        if v.is_nan() {
            v = f64::INFINITY;
        }
        self.evals += 1;
        if v < self.best_v {
            self.best_v = v;
            self.best_x.copy_from_slice(x);
        }
        v
    }

    fn finish(self, iterations: usize, converged: bool) -> Minimum {
        Minimum {
            x: self.best_x,
            value: self.best_v,
            iterations,
            evaluations: self.evals,
            converged,
        }
    }
}

pub fn minimize<F: FnMut(&[f64]) -> f64>(method: Method, f: F, x0: &[f64], opts: &MinimizeOptions) -> Minimum {
    match method {
        Method::NelderMead => nelder_mead(f, x0, opts),
        Method::Cobyla => cobyla(f, x0, opts),
    }
}

/// Nelder-Mead with standard coefficients (reflection 1, expansion 2,
/// contraction 1/2, shrink 1/2) and an axis-aligned initial simplex.
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(f: F, x0: &[f64], opts: &MinimizeOptions) -> Minimum {
    let n = x0.len();
    let mut obj = Tracked::new(f, n);
    if n == 0 {
        obj.eval(x0);
        return obj.finish(0, true);
    }
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += opts.initial_step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| obj.eval(v)).collect();

    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iter {
        let mut idx: Vec<usize> = (0..=n).collect();
        idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = idx.iter().map(|&i| simplex[i].clone()).collect();
        values = idx.iter().map(|&i| values[i]).collect();

        let f_spread = values[n] - values[0];
        let x_spread = simplex[1..]
            .iter()
            .flat_map(|v| v.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if f_spread <= opts.tol && x_spread <= opts.tol {
            converged = true;
            break;
        }
        iterations += 1;

        let centroid: Vec<f64> = (0..n)
            .map(|k| simplex[..n].iter().map(|v| v[k]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let xr = along(1.0);
        let fr = obj.eval(&xr);
        if fr < values[0] {
            let xe = along(2.0);
            let fe = obj.eval(&xe);
            if fe < fr {
                simplex[n] = xe;
                values[n] = fe;
            } else {
                simplex[n] = xr;
                values[n] = fr;
            }
            continue;
        }
        if fr < values[n - 1] {
            simplex[n] = xr;
            values[n] = fr;
            continue;
        }
        let (xc, fc) = if fr < values[n] {
            let xc = along(0.5);
            let fc = obj.eval(&xc);
            (xc, fc)
        } else {
            let xc = along(-0.5);
            let fc = obj.eval(&xc);
            (xc, fc)
        };
        if fc < values[n].min(fr) {
            simplex[n] = xc;
            values[n] = fc;
            continue;
        }
        let best = simplex[0].clone();
        for k in 1..=n {
            for (v, b) in simplex[k].iter_mut().zip(&best) {
                *v = b + 0.5 * (*v - b);
            }
            values[k] = obj.eval(&simplex[k]);
        }
    }
    obj.finish(iterations, converged)
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
fn solve_linear(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-14 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            if factor != 0.0 {
                for k in col..n {
                    a[row][k] -= factor * a[col][k];
                }
                b[row] -= factor * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

/// Unconstrained COBYLA-style method: a linear model interpolated on
/// `n + 1` points, steepest-descent steps of length `rho` on that model,
/// and a trust radius halved whenever a step fails. The interpolation set
/// is rebuilt axis-aligned around the best point after every reduction or
/// when it degenerates.
pub fn cobyla<F: FnMut(&[f64]) -> f64>(f: F, x0: &[f64], opts: &MinimizeOptions) -> Minimum {
    let n = x0.len();
    let mut obj = Tracked::new(f, n);
    let mut base = x0.to_vec();
    let mut f_base = obj.eval(&base);
    if n == 0 {
        return obj.finish(0, true);
    }
    let mut rho = opts.initial_step;
    let rho_end = opts.tol.min(rho);
    let mut iterations = 0;

    let build = |obj: &mut Tracked<F>, base: &[f64], rho: f64| -> Vec<(Vec<f64>, f64)> {
        (0..n)
            .map(|i| {
                let mut p = base.to_vec();
                p[i] += rho;
                let v = obj.eval(&p);
                (p, v)
            })
            .collect()
    };
    let mut points = build(&mut obj, &base, rho);

    loop {
        if iterations >= opts.max_iter {
            return obj.finish(iterations, false);
        }
        // gradient of the linear interpolant: D g = f_i - f_base
        let rows: Vec<Vec<f64>> = points
            .iter()
            .map(|(p, _)| p.iter().zip(&base).map(|(a, b)| a - b).collect())
            .collect();
        let rhs: Vec<f64> = points.iter().map(|(_, v)| v - f_base).collect();
        let grad = match solve_linear(rows, rhs) {
            Some(g) if g.iter().all(|v| v.is_finite()) => g,
            _ => {
                iterations += 1;
                points = build(&mut obj, &base, rho);
                continue;
            }
        };
        let gnorm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        let mut reduce = gnorm == 0.0;
        if !reduce {
            iterations += 1;
            let trial: Vec<f64> = base.iter().zip(&grad).map(|(b, g)| b - rho * g / gnorm).collect();
            let f_trial = obj.eval(&trial);
            // drop the interpolation point farthest from the trial point
            let far = (0..n)
                .max_by(|&i, &j| dist2(&points[i].0, &trial).total_cmp(&dist2(&points[j].0, &trial)))
                .expect("n > 0");
            if f_trial < f_base {
                let old = std::mem::replace(&mut base, trial);
                points[far] = (old, f_base);
                f_base = f_trial;
                if points.iter().any(|(p, _)| dist2(p, &base).sqrt() > 2.5 * rho) {
                    points = build(&mut obj, &base, rho);
                }
            } else if dist2(&points[far].0, &base).sqrt() > 1.5 * rho {
                points[far] = (trial, f_trial);
            } else {
                reduce = true;
            }
        }
        if reduce {
            if rho <= rho_end {
                return obj.finish(iterations, true);
            }
            rho = (rho * 0.5).max(rho_end);
            points = build(&mut obj, &base, rho);
        }
    }
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}
