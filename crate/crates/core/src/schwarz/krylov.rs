//! Left-preconditioned GMRES and the stationary preconditioned iteration.

use crate::error::{Error, Result};

/// Settings shared by the iterative solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GmresOptions {
    /// Stop when the relative preconditioned residual drops below this.
    pub tol: f64,
    pub max_iter: usize,
    /// Krylov dimension per cycle; `None` never restarts.
    pub restart: Option<usize>,
}

impl Default for GmresOptions {
    fn default() -> Self {
        Self {
            tol: 1e-6,
            max_iter: 500,
            restart: None,
        }
    }
}

/// Result of an iterative solve.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveOutcome {
    pub solution: Vec<f64>,
    /// Relative preconditioned residual `|M^{-1}(b - A x_n)| / |M^{-1}(b - A x_0)|`;
    /// entry 0 is 1 unless the initial residual vanishes.
    pub history: Vec<f64>,
    /// Relative true residual `|b - A x_n| / |b - A x_0|`, same indexing.
    pub residual_history: Vec<f64>,
    pub converged: bool,
    /// A whole restart cycle made no progress.
    pub stagnated: bool,
}

impl SolveOutcome {
    pub fn iterations(&self) -> usize {
        self.history.len().saturating_sub(1)
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn check_options(opts: &GmresOptions) -> Result<()> {
    if !(opts.tol > 0.0) {
        return Err(Error::domain("tol", format!("must be positive, got {}", opts.tol)));
    }
    if opts.restart == Some(0) {
        return Err(Error::domain("restart", "cycle length must be at least 1"));
    }
    Ok(())
}

/// GMRES on `M^{-1} A x = M^{-1} b` with modified Gram-Schmidt and Givens rotations.
///
/// `apply_a` computes `A x`, `apply_m` computes `M^{-1} r`.
pub fn gmres<A, M>(apply_a: A, apply_m: M, b: &[f64], x0: &[f64], opts: GmresOptions) -> Result<SolveOutcome>
where
    A: Fn(&[f64]) -> Vec<f64>,
    M: Fn(&[f64]) -> Vec<f64>,
{
    check_options(&opts)?;
    let n = b.len();
    if x0.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: x0.len() });
    }
    let true_residual = |x: &[f64]| -> Vec<f64> {
        let ax = apply_a(x);
        b.iter().zip(ax).map(|(bi, ai)| bi - ai).collect()
    };
    let mut x = x0.to_vec();
    let r_true = true_residual(&x);
    let true0 = norm(&r_true);
    let mut r = apply_m(&r_true);
    let beta0 = norm(&r);
    if beta0 == 0.0 {
        return Ok(SolveOutcome {
            solution: x,
            history: vec![0.0],
            residual_history: vec![if true0 == 0.0 { 0.0 } else { 1.0 }],
            converged: true,
            stagnated: false,
        });
    }
    let true_scale = if true0 == 0.0 { 1.0 } else { true0 };
    let mut history = vec![1.0];
    let mut residual_history = vec![true0 / true_scale];
    let cycle = opts.restart.unwrap_or(opts.max_iter).max(1);
    let mut total = 0usize;
    loop {
        let beta = norm(&r);
        let cycle_start = beta / beta0;
        let mut basis: Vec<Vec<f64>> = vec![r.iter().map(|v| v / beta).collect()];
        // rotated Hessenberg columns, i.e. the columns of the triangular factor
        let mut hess: Vec<Vec<f64>> = Vec::new();
        let mut rotations: Vec<(f64, f64)> = Vec::new();
        let mut g = vec![beta];
        let mut converged = false;
        let mut breakdown = false;
        let mut x_cycle = x.clone();
        for j in 0..cycle {
            if total >= opts.max_iter {
                break;
            }
            let mut w = apply_m(&apply_a(&basis[j]));
            let mut h = vec![0.0; j + 2];
            for (i, v) in basis.iter().enumerate() {
                h[i] = dot(&w, v);
                for (wk, vk) in w.iter_mut().zip(v) {
                    *wk -= h[i] * vk;
                }
            }
            h[j + 1] = norm(&w);
            for (i, &(c, s)) in rotations.iter().enumerate() {
                let (a, bb) = (h[i], h[i + 1]);
                h[i] = c * a + s * bb;
                h[i + 1] = -s * a + c * bb;
            }
            let denom = h[j].hypot(h[j + 1]);
            let (c, s) = if denom == 0.0 { (1.0, 0.0) } else { (h[j] / denom, h[j + 1] / denom) };
            let sub = h[j + 1];
            h[j] = c * h[j] + s * h[j + 1];
            h[j + 1] = 0.0;
            rotations.push((c, s));
            let gj = g[j];
            g[j] = c * gj;
            g.push(-s * gj);
            hess.push(h);
            total += 1;
            x_cycle = x.clone();
            for (yi, v) in back_substitute(&hess, &g).iter().zip(&basis) {
                for (xk, vk) in x_cycle.iter_mut().zip(v) {
                    *xk += yi * vk;
                }
            }
            let rel = g[j + 1].abs() / beta0;
            history.push(rel);
            residual_history.push(norm(&true_residual(&x_cycle)) / true_scale);
            if rel < opts.tol {
                converged = true;
                break;
            }
            if sub <= f64::EPSILON * beta0 * 1e-3 {
                breakdown = true;
                break;
            }
            basis.push(w.iter().map(|v| v / sub).collect());
        }
        let made_steps = !hess.is_empty();
        x = x_cycle;
        let cycle_end = history.last().copied().unwrap_or(1.0);
        if converged || total >= opts.max_iter || breakdown {
            return Ok(SolveOutcome {
                solution: x,
                history,
                residual_history,
                converged: converged || (breakdown && cycle_end < opts.tol),
                stagnated: breakdown && cycle_end >= opts.tol,
            });
        }
        if made_steps && cycle_end >= cycle_start * (1.0 - 1e-12) {
            return Ok(SolveOutcome {
                solution: x,
                history,
                residual_history,
                converged: false,
                stagnated: true,
            });
        }
        r = apply_m(&true_residual(&x));
    }
}

/// Solves the upper-triangular least-squares factor `R y = g[..m]`.
fn back_substitute(columns: &[Vec<f64>], g: &[f64]) -> Vec<f64> {
    let m = columns.len();
    let mut y = vec![0.0; m];
    for i in (0..m).rev() {
        let mut s = g[i];
        for k in i + 1..m {
            s -= columns[k][i] * y[k];
        }
        y[i] = s / columns[i][i];
    }
    y
}

/// Stationary iteration `x <- x + M^{-1}(b - A x)` recording the same
/// relative preconditioned residual as [`gmres`].
pub fn stationary<A, M>(apply_a: A, apply_m: M, b: &[f64], x0: &[f64], opts: GmresOptions) -> Result<SolveOutcome>
where
    A: Fn(&[f64]) -> Vec<f64>,
    M: Fn(&[f64]) -> Vec<f64>,
{
    check_options(&opts)?;
    let n = b.len();
    if x0.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: x0.len() });
    }
    let mut x = x0.to_vec();
    let mut history = Vec::with_capacity(opts.max_iter + 1);
    let mut residual_history = Vec::with_capacity(opts.max_iter + 1);
    let (mut beta0, mut true0) = (0.0, 0.0);
    for it in 0..=opts.max_iter {
        let ax = apply_a(&x);
        let r: Vec<f64> = b.iter().zip(ax).map(|(bi, ai)| bi - ai).collect();
        let z = apply_m(&r);
        let (nz, nr) = (norm(&z), norm(&r));
        if it == 0 {
            beta0 = nz;
            true0 = if nr == 0.0 { 1.0 } else { nr };
            if beta0 == 0.0 {
                return Ok(SolveOutcome {
                    solution: x,
                    history: vec![0.0],
                    residual_history: vec![nr / true0],
                    converged: true,
                    stagnated: false,
                });
            }
        }
        let rel = nz / beta0;
        history.push(rel);
        residual_history.push(nr / true0);
        if rel < opts.tol {
            return Ok(SolveOutcome {
                solution: x,
                history,
                residual_history,
                converged: true,
                stagnated: false,
            });
        }
        if !rel.is_finite() || it == opts.max_iter {
            break;
        }
        for (xi, zi) in x.iter_mut().zip(z) {
            *xi += zi;
        }
    }
    Ok(SolveOutcome {
        solution: x,
        history,
        residual_history,
        converged: false,
        stagnated: false,
    })
}
