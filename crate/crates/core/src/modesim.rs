//! Brute-force realization of the interface recurrence in coefficient space.
//!
//! Nothing here uses the closed-form eigenvalues: the transfer matrices are
//! assembled from the solution bases and inverted numerically, which makes
//! this module an independent oracle for [`crate::analysis`].

use crate::analysis::{basis_matrices, ModeSymbol};
use crate::error::{Error, Result};
use crate::mat2::Mat2;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Determinant magnitude below which a basis matrix counts as singular.
pub const DET_GUARD: f64 = 1e-250;

fn invert(m: &Mat2, what: &'static str) -> Result<Mat2> {
    m.inverse(DET_GUARD).ok_or_else(|| Error::SingularBasis {
        what,
        det: m.det().norm(),
        condition: m.condition(),
    })
}

/// The two single-step transfer maps of the parallel Schwarz recurrence:
/// `alpha^n = to_left * beta^{n-1}` and `beta^n = to_right * alpha^{n-1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMaps {
    /// `M_delta^{-1} N_delta`
    pub to_left: Mat2,
    /// `N_0^{-1} M_0`
    pub to_right: Mat2,
}

impl TransferMaps {
    pub fn new(sym: &ModeSymbol, delta: f64) -> Result<Self> {
        if !(delta >= 0.0) {
            return Err(Error::domain("delta", format!("overlap must be nonnegative, got {delta}")));
        }
        let at_delta = basis_matrices(sym, delta)?;
        let at_zero = basis_matrices(sym, 0.0)?;
        let to_left = invert(&at_delta.m_x, "M_delta")? * at_delta.n_x;
        let to_right = invert(&at_zero.n_x, "N_0")? * at_zero.m_x;
        Ok(Self { to_left, to_right })
    }

    /// Double-step matrix acting on the left-subdomain coefficients.
    pub fn left_double_step(&self) -> Mat2 {
        self.to_left * self.to_right
    }

    /// Double-step matrix acting on the right-subdomain coefficients.
    pub fn right_double_step(&self) -> Mat2 {
        self.to_right * self.to_left
    }
}

/// `M_delta^{-1} N_delta N_0^{-1} M_0` by numeric products and inverses.
pub fn numeric_iteration_matrix(sym: &ModeSymbol, delta: f64) -> Result<Mat2> {
    Ok(TransferMaps::new(sym, delta)?.left_double_step())
}

/// `N_0^{-1} M_0 M_delta^{-1} N_delta`, spectrally equivalent to the left matrix.
pub fn numeric_iteration_matrix_right(sym: &ModeSymbol, delta: f64) -> Result<Mat2> {
    Ok(TransferMaps::new(sym, delta)?.right_double_step())
}

/// Subdomain coefficients at one iteration of the recurrence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientState {
    pub alpha: [Complex64; 2],
    pub beta: [Complex64; 2],
    pub iteration: usize,
}

impl CoefficientState {
    pub fn new(alpha: [Complex64; 2], beta: [Complex64; 2]) -> Self {
        Self {
            alpha,
            beta,
            iteration: 0,
        }
    }

    /// One parallel Schwarz step: both subdomains use the previous iterate.
    pub fn step(&mut self, maps: &TransferMaps) {
        let alpha = maps.to_left.apply(self.beta);
        let beta = maps.to_right.apply(self.alpha);
        self.alpha = alpha;
        self.beta = beta;
        self.iteration += 1;
    }

    pub fn norm(&self) -> f64 {
        self.alpha
            .iter()
            .chain(self.beta.iter())
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    fn rescale(&mut self, s: f64) {
        self.alpha.iter_mut().chain(self.beta.iter_mut()).for_each(|z| *z *= s);
    }
}

/// Estimates the per-double-step growth of the recurrence by normalized power iteration.
///
/// Starts from a seeded random coefficient state, runs `n_iter` double steps
/// and returns the geometric mean of the norm growth over the second half.
pub fn power_growth(sym: &ModeSymbol, delta: f64, n_iter: usize, seed: u64) -> Result<f64> {
    if n_iter < 50 {
        return Err(Error::domain("n_iter", format!("need at least 50 iterations, got {n_iter}")));
    }
    let maps = TransferMaps::new(sym, delta)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    let mut state = CoefficientState::new([draw(), draw()], [draw(), draw()]);
    let start = state.norm();
    state.rescale(1.0 / start);

    let mut log_growth = 0.0;
    let mut counted = 0usize;
    for i in 0..n_iter {
        state.step(&maps);
        state.step(&maps);
        let norm = state.norm();
        if !(norm > 0.0 && norm.is_finite()) {
            return Ok(if norm == 0.0 { 0.0 } else { f64::INFINITY });
        }
        state.rescale(1.0 / norm);
        if i >= n_iter / 2 {
            log_growth += norm.ln();
            counted += 1;
        }
    }
    Ok((log_growth / counted as f64).exp())
}
