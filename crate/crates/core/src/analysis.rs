//! Fourier-mode convergence analysis of the classical two-subdomain Schwarz
//! iteration for the time-harmonic Navier equations on the plane.
//!
//! After a Fourier transform along the interface, every wavenumber `k`
//! decouples into a 2x2 interface recurrence. Its double-step iteration
//! matrix `R` and the two eigenvalues `r_plus`, `r_minus` are available in
//! closed form; the convergence factor of the mode is the larger modulus.
//!
//! Conventions:
//! * characteristic roots use the principal square root, so `Re >= 0` and a
//!   negative radicand gives a root on the positive imaginary axis;
//! * wavenumbers `k = omega/cp` and `k = omega/cs`, where one root vanishes,
//!   are evaluated through the same formulas and tagged [`Zone::Boundary`].

use crate::error::{Error, Result};
use crate::mat2::Mat2;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Guard on `|k^2 - lambda1*lambda2|`, the denominator of `X1` and `X2`.
const DENOMINATOR_GUARD: f64 = 1e-300;

/// Homogeneous isotropic elastic material.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ElasticMedium {
    rho: f64,
    lame_lambda: f64,
    lame_mu: f64,
}

impl ElasticMedium {
    /// Builds a medium from density and the two Lamé coefficients, all strictly positive.
    pub fn new(rho: f64, lame_lambda: f64, lame_mu: f64) -> Result<Self> {
        wave_speeds(rho, lame_lambda, lame_mu)?;
        Ok(Self {
            rho,
            lame_lambda,
            lame_mu,
        })
    }

    /// Builds a medium from density and the P/S wave speeds.
    ///
    /// The resulting first Lamé coefficient `rho (cp^2 - 2 cs^2)` must be
    /// positive, which requires `cp > sqrt(2) cs`.
    pub fn from_wave_speeds(rho: f64, cp: f64, cs: f64) -> Result<Self> {
        positive("rho", rho)?;
        positive("cp", cp)?;
        positive("cs", cs)?;
        if cp <= cs {
            return Err(Error::domain("cp", format!("cp = {cp} must exceed cs = {cs}")));
        }
        let lame_mu = rho * cs * cs;
        let lame_lambda = rho * cp * cp - 2.0 * lame_mu;
        if lame_lambda <= 0.0 {
            return Err(Error::domain(
                "cp",
                format!("cp = {cp}, cs = {cs} give a nonpositive first Lamé coefficient"),
            ));
        }
        Self::new(rho, lame_lambda, lame_mu)
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn lame_lambda(&self) -> f64 {
        self.lame_lambda
    }

    pub fn lame_mu(&self) -> f64 {
        self.lame_mu
    }

    /// P-wave speed `sqrt((lambda + 2 mu) / rho)`.
    pub fn cp(&self) -> f64 {
        ((self.lame_lambda + 2.0 * self.lame_mu) / self.rho).sqrt()
    }

    /// S-wave speed `sqrt(mu / rho)`.
    pub fn cs(&self) -> f64 {
        (self.lame_mu / self.rho).sqrt()
    }
}

fn positive(param: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(param, format!("must be positive and finite, got {value}")))
    }
}

/// P and S wave speeds `(cp, cs)` of a medium with density `rho` and Lamé coefficients.
pub fn wave_speeds(rho: f64, lame_lambda: f64, lame_mu: f64) -> Result<(f64, f64)> {
    positive("rho", rho)?;
    positive("lame_lambda", lame_lambda)?;
    positive("lame_mu", lame_mu)?;
    let cp = ((lame_lambda + 2.0 * lame_mu) / rho).sqrt();
    let cs = (lame_mu / rho).sqrt();
    Ok((cp, cs))
}

/// Convergence regime of a Fourier mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Zone {
    /// `k < omega/cp`: both roots propagative, the iteration stagnates.
    Stagnant,
    /// `omega/cp < k < omega/cs`: the iteration amplifies the mode.
    Divergent,
    /// `k > omega/cs`: both roots evanescent, the mode contracts.
    Contractive,
    /// `k` equals one of the cut-off wavenumbers.
    Boundary,
}

impl Zone {
    pub fn as_str(&self) -> &'static str {
        match self {
            Zone::Stagnant => "stagnant",
            Zone::Divergent => "divergent",
            Zone::Contractive => "contractive",
            Zone::Boundary => "boundary",
        }
    }
}

impl fmt::Display for Zone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn same_wavenumber(a: f64, b: f64) -> bool {
    (a - b).abs() <= 4.0 * f64::EPSILON * a.abs().max(b.abs())
}

/// Classifies wavenumber `k` against the cut-offs `omega/cp` and `omega/cs`.
pub fn classify_zone(k: f64, omega: f64, cp: f64, cs: f64) -> Zone {
    let k = k.abs();
    let (k_p, k_s) = (omega / cp, omega / cs);
    if same_wavenumber(k, k_p) || same_wavenumber(k, k_s) {
        Zone::Boundary
    } else if k < k_p {
        Zone::Stagnant
    } else if k < k_s {
        Zone::Divergent
    } else {
        Zone::Contractive
    }
}

/// Principal square root of a real number.
fn principal_sqrt(x: f64) -> Complex64 {
    if x >= 0.0 {
        Complex64::new(x.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-x).sqrt())
    }
}

/// Per-mode symbol: wavenumber, frequency, characteristic roots and the
/// auxiliary quantities `X1`, `X2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSymbol {
    pub k: f64,
    pub omega: f64,
    /// Shear root `sqrt(k^2 - omega^2/cs^2)`.
    pub lambda1: Complex64,
    /// Pressure root `sqrt(k^2 - omega^2/cp^2)`.
    pub lambda2: Complex64,
    pub x1: Complex64,
    pub x2: Complex64,
    pub zone: Zone,
}

impl ModeSymbol {
    /// `k^2 - lambda1 lambda2`.
    fn denominator(&self) -> Complex64 {
        self.k * self.k - self.lambda1 * self.lambda2
    }
}

/// Roots of the characteristic equation of the Fourier-transformed Navier system.
pub fn characteristic_roots(medium: &ElasticMedium, omega: f64, k: f64) -> Result<ModeSymbol> {
    positive("omega", omega)?;
    if !k.is_finite() {
        return Err(Error::domain("k", format!("must be finite, got {k}")));
    }
    let (cp, cs) = (medium.cp(), medium.cs());
    let k2 = k * k;
    let lambda1 = principal_sqrt(k2 - (omega / cs).powi(2));
    let lambda2 = principal_sqrt(k2 - (omega / cp).powi(2));
    let denominator = k2 - lambda1 * lambda2;
    if denominator.norm() < DENOMINATOR_GUARD {
        return Err(Error::domain("k", "k^2 = lambda1 * lambda2, auxiliary X1 is undefined"));
    }
    let x1 = (k2 + lambda1 * lambda2) / denominator;
    let x2 = -I * 2.0 * k * lambda2 / denominator;
    Ok(ModeSymbol {
        k,
        omega,
        lambda1,
        lambda2,
        x1,
        x2,
        zone: classify_zone(k, omega, cp, cs),
    })
}

/// Subdomain solution bases evaluated at an abscissa.
///
/// `m_x` has columns `v+ e^{lambda1 x}` and `w+ e^{lambda2 x}` (left subdomain,
/// growing in x); `n_x` has columns `v- e^{-lambda1 x}` and `w- e^{-lambda2 x}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisMatrices {
    pub m_x: Mat2,
    pub n_x: Mat2,
}

/// Evaluates the two solution bases at `x`. Rejects `k = 0`, where the
/// eigenvector normalization divides by zero; use [`eigenvalues_closed_form`] there.
pub fn basis_matrices(sym: &ModeSymbol, x: f64) -> Result<BasisMatrices> {
    if sym.k == 0.0 {
        return Err(Error::domain(
            "k",
            "basis vectors are normalized by k; use the closed-form eigenvalues at k = 0",
        ));
    }
    let (l1, l2, k) = (sym.lambda1, sym.lambda2, sym.k);
    let e1 = (l1 * x).exp();
    let e2 = (l2 * x).exp();
    let e1n = (-l1 * x).exp();
    let e2n = (-l2 * x).exp();
    let m_x = Mat2::new(e1, -I * l2 / k * e2, I * l1 / k * e1, e2);
    let n_x = Mat2::new(e1n, I * l2 / k * e2n, -I * l1 / k * e1n, e2n);
    Ok(BasisMatrices { m_x, n_x })
}

/// Double-step interface iteration matrix of one Fourier mode with its spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationMatrix2 {
    pub r: Mat2,
    pub r_plus: Complex64,
    pub r_minus: Complex64,
    pub rho_cla: f64,
    pub zone: Zone,
}

fn nonnegative_delta(delta: f64) -> Result<()> {
    if delta >= 0.0 && delta.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("delta", format!("overlap must be nonnegative, got {delta}")))
    }
}

/// Closed-form iteration matrix of the subdomain-1 coefficients.
///
/// The products `X2^2 lambda1/lambda2` and `X1 X2 lambda1/lambda2` are
/// simplified algebraically so that `lambda2 = 0` and `k = 0` need no special case.
pub fn iteration_matrix(
    medium: &ElasticMedium,
    omega: f64,
    k: f64,
    delta: f64,
) -> Result<IterationMatrix2> {
    nonnegative_delta(delta)?;
    let sym = characteristic_roots(medium, omega, k)?;
    let r = closed_form_matrix(&sym, delta);
    let (r_plus, r_minus) = closed_form_pair(&sym, delta);
    Ok(IterationMatrix2 {
        r,
        r_plus,
        r_minus,
        rho_cla: r_plus.norm().max(r_minus.norm()),
        zone: sym.zone,
    })
}

fn closed_form_matrix(sym: &ModeSymbol, delta: f64) -> Mat2 {
    let (l1, l2, k) = (sym.lambda1, sym.lambda2, sym.k);
    let d = sym.denominator();
    let x1 = sym.x1;
    let x2 = sym.x2;
    // X2^2 * l1/l2 and X1 X2 * l1/l2 with the l2 factor cancelled.
    let x2sq_ratio = -4.0 * k * k * l1 * l2 / (d * d);
    let x1x2_ratio = x1 * (-I * 2.0 * k * l1) / d;
    let e_sum = (-delta * (l1 + l2)).exp();
    let e_11 = (-2.0 * l1 * delta).exp();
    let e_22 = (-2.0 * l2 * delta).exp();
    // X1^2 = 1 - X2^2 l1/l2 keeps the diagonal free of cancellation when X1 is large
    Mat2::new(
        e_11 + x2sq_ratio * (e_sum - e_11),
        x1 * x2 * (e_11 - e_sum),
        x1x2_ratio * (e_sum - e_22),
        e_22 + x2sq_ratio * (e_sum - e_22),
    )
}

fn closed_form_pair(sym: &ModeSymbol, delta: f64) -> (Complex64, Complex64) {
    let (l1, l2) = (sym.lambda1, sym.lambda2);
    let e_sum = (-delta * (l1 + l2)).exp();
    let x = sym.x1 * ((-l1 * delta).exp() - (-l2 * delta).exp());
    let x2 = x * x;
    let root = 0.5 * (x2 * (x2 + 4.0 * e_sum)).sqrt();
    let centre = 0.5 * x2 + e_sum;
    (centre + root, centre - root)
}

/// Eigenvalues `(r_plus, r_minus)` of the iteration matrix from the closed form.
pub fn eigenvalues_closed_form(
    medium: &ElasticMedium,
    omega: f64,
    k: f64,
    delta: f64,
) -> Result<(Complex64, Complex64)> {
    nonnegative_delta(delta)?;
    let sym = characteristic_roots(medium, omega, k)?;
    Ok(closed_form_pair(&sym, delta))
}

/// Convergence factor `max(|r_plus|, |r_minus|)` of one mode.
pub fn convergence_factor(medium: &ElasticMedium, omega: f64, k: f64, delta: f64) -> Result<f64> {
    let (a, b) = eigenvalues_closed_form(medium, omega, k, delta)?;
    Ok(a.norm().max(b.norm()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub k: f64,
    pub abs_r_plus: f64,
    pub abs_r_minus: f64,
    pub rho: f64,
    pub zone: Zone,
}

/// Evaluates both eigenvalue moduli along a wavenumber grid.
pub fn sweep(
    medium: &ElasticMedium,
    omega: f64,
    delta: f64,
    k_grid: &[f64],
) -> Result<Vec<SweepRow>> {
    nonnegative_delta(delta)?;
    positive("omega", omega)?;
    if k_grid.is_empty() {
        return Err(Error::domain("k_grid", "must not be empty"));
    }
    if k_grid.iter().any(|&k| !(k >= 0.0)) {
        return Err(Error::domain("k_grid", "wavenumbers must be nonnegative"));
    }
    if k_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain("k_grid", "wavenumbers must be strictly increasing"));
    }
    k_grid
        .par_iter()
        .map(|&k| {
            let sym = characteristic_roots(medium, omega, k)?;
            let (rp, rm) = closed_form_pair(&sym, delta);
            Ok(SweepRow {
                k,
                abs_r_plus: rp.norm(),
                abs_r_minus: rm.norm(),
                rho: rp.norm().max(rm.norm()),
                zone: sym.zone,
            })
        })
        .collect()
}

/// Uniform grid of `count` points on `[min, max]`.
pub fn linspace(min: f64, max: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![min],
        _ => {
            let step = (max - min) / (count - 1) as f64;
            (0..count)
                .map(|i| if i + 1 == count { max } else { min + step * i as f64 })
                .collect()
        }
    }
}

const MAX_RHO_GRID: usize = 4000;
const GOLDEN_REL_TOL: f64 = 1e-10;

/// Maximum of the convergence factor over the divergent band `(omega/cp, omega/cs)`.
///
/// A dense grid locates the peak, golden-section search refines it inside the
/// bracketing grid cells. Returns `(k_star, rho_star)`.
pub fn max_rho(medium: &ElasticMedium, omega: f64, delta: f64) -> Result<(f64, f64)> {
    nonnegative_delta(delta)?;
    if delta == 0.0 {
        return Err(Error::domain(
            "delta",
            "without overlap every mode has factor 1, the maximum is not meaningful",
        ));
    }
    positive("omega", omega)?;
    let (lo, hi) = (omega / medium.cp(), omega / medium.cs());
    let rho = |k: f64| -> f64 {
        characteristic_roots(medium, omega, k)
            .map(|sym| {
                let (a, b) = closed_form_pair(&sym, delta);
                a.norm().max(b.norm())
            })
            .unwrap_or(f64::NEG_INFINITY)
    };
    let grid = linspace(lo, hi, MAX_RHO_GRID + 2);
    let interior = &grid[1..grid.len() - 1];
    let values: Vec<f64> = interior.par_iter().map(|&k| rho(k)).collect();
    let best = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .expect("grid is nonempty");
    // interior[best] == grid[best + 1]
    let (a, b) = (grid[best], grid[best + 2]);
    let (k_star, rho_star) = golden_section_max(rho, a, b, GOLDEN_REL_TOL);
    if rho_star >= values[best] {
        Ok((k_star, rho_star))
    } else {
        Ok((interior[best], values[best]))
    }
}

fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, rel_tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > rel_tol * (a.abs() + b.abs()) * 0.5 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let k = 0.5 * (a + b);
    (k, f(k))
}

/// Coefficient of `delta` in the small-overlap expansion of the maximal convergence factor.
pub fn asymptotic_slope(cp: f64, cs: f64, omega: f64) -> Result<f64> {
    positive("cs", cs)?;
    positive("cp", cp)?;
    positive("omega", omega)?;
    if cp <= cs {
        return Err(Error::domain("cp", format!("cp = {cp} must exceed cs = {cs}")));
    }
    let (cp2, cs2) = (cp * cp, cs * cs);
    let q = (cp2 * cp2 + 8.0 * cs2 * cs2).sqrt();
    let radicand = cp2 * q - cp2 * cp2 - 2.0 * cs2 * cs2;
    if !(radicand > 0.0) {
        return Err(Error::domain(
            "cs",
            format!("slope radicand is {radicand:e}, expected positive"),
        ));
    }
    let numerator = 2f64.sqrt() * cs * omega * (3.0 * cp2 - q) * radicand.sqrt();
    let denominator = cp * (cp2 + cs2).powf(1.5) * (q - cp2);
    Ok(numerator / denominator)
}

/// First-order small-overlap convergence factor of a mode in the divergent band.
///
/// The shear root is purely imaginary there; its squared modulus
/// `omega^2/cs^2 - k^2` enters the formula.
pub fn first_order_rho(medium: &ElasticMedium, omega: f64, k: f64, delta: f64) -> Result<f64> {
    nonnegative_delta(delta)?;
    positive("omega", omega)?;
    let (cp, cs) = (medium.cp(), medium.cs());
    let (lo, hi) = (omega / cp, omega / cs);
    if !(k > lo && k < hi) || classify_zone(k, omega, cp, cs) != Zone::Divergent {
        return Err(Error::domain(
            "k",
            format!("k = {k} is outside the divergent band ({lo}, {hi})"),
        ));
    }
    let shear_sq = (omega / cs).powi(2) - k * k;
    let lambda2 = (k * k - (omega / cp).powi(2)).sqrt();
    let coefficient = 2.0 * omega * omega * lambda2 * shear_sq
        / (cp * cp * (k.powi(4) + shear_sq * lambda2 * lambda2));
    Ok(1.0 + coefficient * delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn paper_medium() -> ElasticMedium {
        ElasticMedium::from_wave_speeds(1.0, 1.0, 0.5).unwrap()
    }

    #[test]
    fn wave_speeds_examples() {
        let (cp, cs) = wave_speeds(1.0, 0.5, 0.25).unwrap();
        assert_relative_eq!(cp, 1.0, max_relative = 1e-15);
        assert_relative_eq!(cs, 0.5, max_relative = 1e-15);
        let (cp, cs) = wave_speeds(4.0, 2.0, 1.0).unwrap();
        assert_relative_eq!(cp, 1.0, max_relative = 1e-15);
        assert_relative_eq!(cs, 0.5, max_relative = 1e-15);
    }

    #[test]
    fn wave_speeds_rejects_zero_lambda() {
        match wave_speeds(1.0, 0.0, 1.0) {
            Err(Error::Domain { param, .. }) => assert_eq!(param, "lame_lambda"),
            other => panic!("expected domain error, got {other:?}"),
        }
        assert!(matches!(
            wave_speeds(-1.0, 1.0, 1.0),
            Err(Error::Domain { param: "rho", .. })
        ));
    }

    #[test]
    fn from_wave_speeds_round_trip() {
        let m = paper_medium();
        assert_relative_eq!(m.lame_lambda(), 0.5, max_relative = 1e-15);
        assert_relative_eq!(m.lame_mu(), 0.25, max_relative = 1e-15);
        assert!(ElasticMedium::from_wave_speeds(1.0, 0.5, 1.0).is_err());
    }

    #[test]
    fn roots_at_k3() {
        let sym = characteristic_roots(&paper_medium(), 1.0, 3.0).unwrap();
        assert_relative_eq!(sym.lambda1.re, 5f64.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(sym.lambda2.re, 8f64.sqrt(), max_relative = 1e-14);
        assert_eq!(sym.lambda1.im, 0.0);
        assert_eq!(sym.zone, Zone::Contractive);
    }

    #[test]
    fn roots_at_k0_are_imaginary() {
        let sym = characteristic_roots(&paper_medium(), 1.0, 0.0).unwrap();
        assert_eq!(sym.lambda1, Complex64::new(0.0, 2.0));
        assert_eq!(sym.lambda2, Complex64::new(0.0, 1.0));
    }

    #[test]
    fn pressure_cutoff_is_boundary() {
        let sym = characteristic_roots(&paper_medium(), 1.0, 1.0).unwrap();
        assert_eq!(sym.lambda2, Complex64::new(0.0, 0.0));
        assert_eq!(sym.zone, Zone::Boundary);
        let r = iteration_matrix(&paper_medium(), 1.0, 1.0, 0.1).unwrap();
        assert!(r.r.max_abs().is_finite());
    }

    #[test]
    fn basis_at_origin() {
        let sym = characteristic_roots(&paper_medium(), 1.0, 3.0).unwrap();
        let b = basis_matrices(&sym, 0.0).unwrap();
        let s5 = 5f64.sqrt();
        let s8 = 8f64.sqrt();
        let expected = Mat2::new(
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, -s8 / 3.0),
            Complex64::new(0.0, s5 / 3.0),
            Complex64::new(1.0, 0.0),
        );
        assert!(b.m_x.sub(&expected).max_abs() < 1e-15);
        // n_0 flips the sign of the off-diagonal entries
        let flipped = Mat2::new(expected[(0, 0)], -expected[(0, 1)], -expected[(1, 0)], expected[(1, 1)]);
        assert!(b.n_x.sub(&flipped).max_abs() < 1e-15);
    }

    #[test]
    fn basis_rejects_k0() {
        let sym = characteristic_roots(&paper_medium(), 1.0, 0.0).unwrap();
        assert!(matches!(basis_matrices(&sym, 0.0), Err(Error::Domain { param: "k", .. })));
    }

    #[test]
    fn basis_determinant() {
        let sym = characteristic_roots(&paper_medium(), 5.0, 7.0).unwrap();
        let x = 0.3;
        let b = basis_matrices(&sym, x).unwrap();
        let k2 = sym.k * sym.k;
        let expected = ((sym.lambda1 + sym.lambda2) * x).exp() * (1.0 - sym.lambda1 * sym.lambda2 / k2);
        assert!((b.m_x.det() - expected).norm() < 1e-12 * expected.norm());
    }

    #[test]
    fn zero_overlap_is_identity() {
        for &(omega, k) in &[(1.0, 0.0), (1.0, 0.5), (1.0, 1.5), (5.0, 7.0), (5.0, 30.0)] {
            let r = iteration_matrix(&paper_medium(), omega, k, 0.0).unwrap();
            assert!(r.r.sub(&Mat2::IDENTITY).max_abs() < 1e-12, "k={k}");
            assert!((r.r_plus - 1.0).norm() < 1e-12);
            assert!((r.r_minus - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn k0_limit_is_unimodular() {
        let r = iteration_matrix(&paper_medium(), 1.0, 0.0, 0.1).unwrap();
        assert!((r.r_plus.norm() - 1.0).abs() < 1e-12);
        assert!((r.r_minus.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn paper_modes() {
        let m = paper_medium();
        assert!(convergence_factor(&m, 5.0, 2.0 * std::f64::consts::PI, 0.1).unwrap() > 1.0);
        assert!(convergence_factor(&m, 1.0, std::f64::consts::PI, 0.1).unwrap() < 1.0);
    }

    #[test]
    fn zone_examples() {
        assert_eq!(classify_zone(0.5, 1.0, 1.0, 0.5), Zone::Stagnant);
        assert_eq!(classify_zone(1.5, 1.0, 1.0, 0.5), Zone::Divergent);
        assert_eq!(classify_zone(7.0, 5.0, 1.0, 0.5), Zone::Divergent);
        assert_eq!(classify_zone(2.5, 1.0, 1.0, 0.5), Zone::Contractive);
        assert_eq!(classify_zone(2.0, 1.0, 1.0, 0.5), Zone::Boundary);
    }

    #[test]
    fn negative_delta_rejected() {
        assert!(matches!(
            iteration_matrix(&paper_medium(), 1.0, 1.0, -0.1),
            Err(Error::Domain { param: "delta", .. })
        ));
    }

    #[test]
    fn sweep_validates_grid() {
        let m = paper_medium();
        assert!(sweep(&m, 1.0, 0.1, &[]).is_err());
        assert!(sweep(&m, 1.0, 0.1, &[1.0, 0.5]).is_err());
        assert!(sweep(&m, 1.0, 0.1, &[-1.0, 0.5]).is_err());
        let rows = sweep(&m, 1.0, 0.0, &linspace(0.0, 6.0, 121)).unwrap();
        assert_eq!(rows.len(), 121);
        for row in rows {
            assert!((row.abs_r_plus - 1.0).abs() < 1e-12);
            assert!((row.abs_r_minus - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn slope_examples() {
        let s1 = asymptotic_slope(1.0, 0.5, 1.0).unwrap();
        assert_relative_eq!(s1, 1.2622234835628, max_relative = 1e-12);
        assert_relative_eq!(asymptotic_slope(1.0, 0.5, 5.0).unwrap(), 5.0 * s1, max_relative = 1e-14);
        assert_relative_eq!(asymptotic_slope(1.0, 0.5, 2.0).unwrap(), 2.0 * s1, max_relative = 1e-14);
        assert!(asymptotic_slope(0.5, 1.0, 1.0).is_err());
    }

    #[test]
    fn max_rho_brackets() {
        let m = paper_medium();
        let (k1, r1) = max_rho(&m, 1.0, 0.1).unwrap();
        assert!(k1 > 1.0 && k1 < 2.0 && r1 > 1.0);
        let (k5, r5) = max_rho(&m, 5.0, 0.1).unwrap();
        assert!(k5 > 5.0 && k5 < 10.0 && r5 > 1.0);
        assert!(max_rho(&m, 1.0, 0.0).is_err());
    }

    #[test]
    fn first_order_zero_overlap() {
        let m = paper_medium();
        assert_eq!(first_order_rho(&m, 1.0, 1.5, 0.0).unwrap(), 1.0);
        assert!(first_order_rho(&m, 1.0, 0.5, 0.1).is_err());
        assert!(first_order_rho(&m, 1.0, 2.0, 0.1).is_err());
    }

    #[test]
    fn linspace_endpoints() {
        let g = linspace(0.0, 6.0, 121);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[120], 6.0);
        assert_relative_eq!(g[1], 0.05, max_relative = 1e-14);
    }
}
