//! Eigenvalues of the RAS-preconditioned operator.

use super::solver::SchwarzSolver;
use crate::error::{Error, Result};
use num_complex::Complex;
use rayon::prelude::*;

/// Largest system the dense eigensolve accepts.
pub const SPECTRUM_BUDGET: usize = 20_000;

/// All eigenvalues of `M^{-1} A`, sorted by real then imaginary part.
///
/// Clamped unknowns form an identity block that decouples from the free
/// unknowns, so the dense Hessenberg-QR eigensolve runs on the free block only and
/// one eigenvalue `1` is appended per clamped unknown.
pub fn spectrum(solver: &SchwarzSolver) -> Result<Vec<Complex<f64>>> {
    let n = solver.dim();
    if n > SPECTRUM_BUDGET {
        return Err(Error::BudgetExceeded {
            unknowns: n,
            budget: SPECTRUM_BUDGET,
        });
    }
    let free = solver.system.free_unknowns();
    let columns: Vec<Vec<f64>> = free
        .par_iter()
        .map(|&j| {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            let y = solver.preconditioned_apply(&e);
            free.iter().map(|&i| y[i]).collect()
        })
        .collect();
    let m = free.len();
    let dense = faer::Mat::from_fn(m, m, |i, j| columns[j][i]);
    let mut eigenvalues: Vec<Complex<f64>> = dense
        .eigenvalues()
        .map_err(|e| Error::domain("spectrum", format!("dense eigensolve failed: {e:?}")))?
        .into_iter()
        .map(|z| Complex::new(z.re, z.im))
        .collect();
    eigenvalues.extend(std::iter::repeat_n(Complex::new(1.0, 0.0), n - m));
    eigenvalues.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(eigenvalues)
}
