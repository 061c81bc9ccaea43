//! Cross-checks of the closed-form analysis against the coefficient-space
//! oracle and against finite differences.

use crate::analysis::{
    asymptotic_slope, characteristic_roots, eigenvalues_closed_form, first_order_rho, iteration_matrix, linspace,
    max_rho, ElasticMedium,
};
use crate::error::Result;
use crate::modesim::{numeric_iteration_matrix, numeric_iteration_matrix_right, power_growth};
use num_complex::Complex64;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    /// Worst observed value of the checked quantity.
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, max_deviation: f64, tolerance: f64, detail: String) -> Check {
    Check {
        name,
        max_deviation,
        tolerance,
        passed: max_deviation <= tolerance,
        detail,
    }
}

/// Distance between two unordered eigenvalue pairs, relative to `max(1, |r|)`.
pub fn pair_deviation(a: (Complex64, Complex64), b: (Complex64, Complex64)) -> f64 {
    let scale = 1.0f64.max(a.0.norm()).max(a.1.norm());
    let straight = (a.0 - b.0).norm().max((a.1 - b.1).norm());
    let crossed = (a.0 - b.1).norm().max((a.1 - b.0).norm());
    straight.min(crossed) / scale
}

/// Wavenumbers in `[0.05, 4 omega/cs]` away from the two cut-offs.
pub fn oracle_grid(medium: &ElasticMedium, omega: f64, count: usize) -> Vec<f64> {
    let cuts = [omega / medium.cp(), omega / medium.cs()];
    linspace(0.05, 4.0 * omega / medium.cs(), count)
        .into_iter()
        .filter(|k| cuts.iter().all(|c| (k - c).abs() > 1e-6))
        .collect()
}

/// Runs the whole suite for one medium, frequency and overlap.
pub fn run_checks(medium: &ElasticMedium, omega: f64, delta: f64) -> Result<Vec<Check>> {
    let (cp, cs) = (medium.cp(), medium.cs());
    let grid = oracle_grid(medium, omega, 500);
    let mut checks = Vec::new();

    let mut worst = 0.0f64;
    for k in linspace(0.0, 4.0 * omega / cs, 200) {
        let (rp, rm) = eigenvalues_closed_form(medium, omega, k, 0.0)?;
        worst = worst.max((rp.norm() - 1.0).abs()).max((rm.norm() - 1.0).abs());
    }
    checks.push(check("zero_overlap_stagnation", worst, 1e-12, "max ||r+-| - 1| at delta = 0".into()));

    let (mut oracle, mut tr_det, mut equiv) = (0.0f64, 0.0f64, 0.0f64);
    for &k in &grid {
        let sym = characteristic_roots(medium, omega, k)?;
        let closed = eigenvalues_closed_form(medium, omega, k, delta)?;
        let left = numeric_iteration_matrix(&sym, delta)?;
        let right = numeric_iteration_matrix_right(&sym, delta)?;
        oracle = oracle.max(pair_deviation(closed, left.eigenvalues()));
        equiv = equiv.max(pair_deviation(left.eigenvalues(), right.eigenvalues()));
        let it = iteration_matrix(medium, omega, k, delta)?;
        let scale = 1.0f64.max(it.r.max_abs()).max(it.r_plus.norm()).max(it.r_minus.norm());
        let tr = (it.r_plus + it.r_minus - it.r.trace()).norm() / scale;
        let det = (it.r_plus * it.r_minus - it.r.det()).norm() / (scale * scale);
        tr_det = tr_det.max(tr).max(det);
    }
    checks.push(check("closed_form_vs_oracle", oracle, 1e-10, format!("{} wavenumbers", grid.len())));
    checks.push(check("trace_determinant", tr_det, 1e-12, "relative".into()));
    checks.push(check("spectral_equivalence", equiv, 1e-10, "left vs right double step".into()));

    if delta > 0.0 {
        let mut stagnant = 0.0f64;
        for k in linspace(0.0, omega / cp, 52).into_iter().skip(1).take(50) {
            stagnant = stagnant.max((eigenvalues_rho(medium, omega, k, delta)? - 1.0).abs());
        }
        checks.push(check("zone_stagnant", stagnant, 1e-9, "max |rho - 1| on (0, omega/cp)".into()));
        let mut divergent = f64::INFINITY;
        for k in linspace(omega / cp, omega / cs, 52).into_iter().skip(1).take(50) {
            divergent = divergent.min(eigenvalues_rho(medium, omega, k, delta)? - 1.0);
        }
        // a deviation above zero means some mode failed to exceed 1 + 1e-6
        checks.push(check(
            "zone_divergent",
            1e-6 - divergent,
            0.0,
            format!("min rho - 1 on (omega/cp, omega/cs) = {divergent:e}"),
        ));
        let mut contractive = f64::NEG_INFINITY;
        for k in linspace(omega / cs + 0.1, 4.0 * omega / cs, 100) {
            contractive = contractive.max(eigenvalues_rho(medium, omega, k, delta)?);
        }
        checks.push(check(
            "zone_contractive",
            contractive - (1.0 - 1e-6),
            0.0,
            format!("max rho on (omega/cs + 0.1, 4 omega/cs) = {contractive}"),
        ));
        let mut envelope = f64::NEG_INFINITY;
        for k in linspace(3.0 * omega / cs, 8.0 * omega / cs, 100) {
            let sym = characteristic_roots(medium, omega, k)?;
            let bound = 1.5 * (-sym.lambda2.re * delta).exp();
            envelope = envelope.max(eigenvalues_rho(medium, omega, k, delta)? / bound);
        }
        checks.push(check(
            "evanescent_envelope",
            envelope,
            1.0,
            "max rho / (1.5 exp(-lambda2 delta)) for k >= 3 omega/cs".into(),
        ));
        let k_div = 0.5 * (omega / cp + omega / cs);
        let k_con = 3.0 * omega / cs;
        let mut power = 0.0f64;
        for (k, seed) in [(k_div, 1u64), (k_con, 2u64)] {
            let sym = characteristic_roots(medium, omega, k)?;
            let growth = power_growth(&sym, delta, 200, seed)?;
            let rho = eigenvalues_rho(medium, omega, k, delta)?;
            power = power.max((growth - rho).abs() / rho);
        }
        checks.push(check("power_growth", power, 1e-2, "relative, one divergent and one contractive mode".into()));
    } else {
        let mut flat = 0.0f64;
        for k in linspace(0.0, 4.0 * omega / cs, 200) {
            flat = flat.max((eigenvalues_rho(medium, omega, k, 0.0)? - 1.0).abs());
        }
        checks.push(check("zone_all_stagnant", flat, 1e-12, "delta = 0 stagnates every mode".into()));
    }

    let slope = asymptotic_slope(cp, cs, omega)?;
    let mut errors = Vec::new();
    for d in [1e-2, 1e-3, 1e-4] {
        let (_, rho_star) = max_rho(medium, omega, d)?;
        errors.push(((rho_star - 1.0) / d - slope).abs() / slope);
    }
    let monotone = errors.windows(2).all(|w| w[1] < w[0]);
    checks.push(Check {
        name: "asymptotic_slope",
        max_deviation: errors[2],
        tolerance: 5e-2,
        passed: monotone && errors[2] < 5e-2,
        detail: format!("slope {slope}, relative errors {errors:?}"),
    });

    let h = 1e-4;
    let mut fo = 0.0f64;
    for k in linspace(omega / cp, omega / cs, 22).into_iter().skip(1).take(20) {
        let fd = (eigenvalues_rho(medium, omega, k, h)? - 1.0) / h;
        let coef = (first_order_rho(medium, omega, k, h)? - 1.0) / h;
        fo = fo.max((fd - coef).abs() / coef.abs());
    }
    checks.push(check("first_order_rho", fo, 1e-2, "finite difference at delta = 1e-4".into()));
    Ok(checks)
}

fn eigenvalues_rho(medium: &ElasticMedium, omega: f64, k: f64, delta: f64) -> Result<f64> {
    let (rp, rm) = eigenvalues_closed_form(medium, omega, k, delta)?;
    Ok(rp.norm().max(rm.norm()))
}
