use approx::assert_relative_eq;
use navier_schwarz::analysis::{
    characteristic_roots, eigenvalues_closed_form, iteration_matrix, wave_speeds, ElasticMedium,
};
use navier_schwarz::cli::verify::pair_deviation;
use navier_schwarz::mat2::Mat2;
use navier_schwarz::modesim::{numeric_iteration_matrix, numeric_iteration_matrix_right, power_growth};
use proptest::prelude::*;

/// Media with `cp / cs` between about 1.5 and 4.
fn medium() -> impl Strategy<Value = ElasticMedium> {
    (0.5f64..3.0, 0.1f64..2.0, 0.5f64..8.0)
        .prop_map(|(rho, mu, ratio)| ElasticMedium::new(rho, ratio * mu, mu).unwrap())
}

/// Wavenumber as a fraction of `4 omega / cs`, kept away from both cut-offs.
fn away_from_cutoffs(med: &ElasticMedium, omega: f64, fraction: f64) -> Option<f64> {
    let k = 0.05 + fraction * (4.0 * omega / med.cs() - 0.05);
    let cuts = [omega / med.cp(), omega / med.cs()];
    cuts.iter().all(|c| (k - c).abs() > 1e-3 * c).then_some(k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn wave_speeds_round_trip(rho in 0.1f64..10.0, lame in 0.01f64..10.0, mu in 0.01f64..10.0) {
        let (cp, cs) = wave_speeds(rho, lame, mu).unwrap();
        prop_assert!(cp > cs);
        let back = ElasticMedium::from_wave_speeds(rho, cp, cs).unwrap();
        prop_assert!((back.lame_lambda() - lame).abs() <= 1e-12 * lame.max(mu) * 10.0);
        prop_assert!((back.lame_mu() - mu).abs() <= 1e-12 * mu * 10.0);
    }

    #[test]
    fn roots_square_to_the_radicands_and_decay(med in medium(), omega in 0.1f64..10.0, k in 0.0f64..50.0) {
        let sym = characteristic_roots(&med, omega, k).unwrap();
        let shear = k * k - (omega / med.cs()).powi(2);
        let pressure = k * k - (omega / med.cp()).powi(2);
        let scale = k * k + (omega / med.cs()).powi(2);
        prop_assert!((sym.lambda1 * sym.lambda1 - shear).norm() <= 1e-13 * scale);
        prop_assert!((sym.lambda2 * sym.lambda2 - pressure).norm() <= 1e-13 * scale);
        prop_assert!(sym.lambda1.re >= 0.0 && sym.lambda2.re >= 0.0);
        if shear < 0.0 {
            prop_assert!(sym.lambda1.re == 0.0 && sym.lambda1.im > 0.0);
        }
        if pressure < 0.0 {
            prop_assert!(sym.lambda2.re == 0.0 && sym.lambda2.im > 0.0);
        }
    }

    #[test]
    fn zero_overlap_never_contracts(med in medium(), omega in 0.1f64..10.0, k in 0.0f64..50.0) {
        let (rp, rm) = eigenvalues_closed_form(&med, omega, k, 0.0).unwrap();
        prop_assert!((rp.norm() - 1.0).abs() < 1e-12);
        prop_assert!((rm.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn trace_and_determinant_match_the_eigenvalues(
        med in medium(), omega in 0.1f64..10.0, fraction in 0.0f64..1.0, delta in 0.0f64..0.5,
    ) {
        let Some(k) = away_from_cutoffs(&med, omega, fraction) else { return Ok(()); };
        let it = iteration_matrix(&med, omega, k, delta).unwrap();
        let scale = 1.0f64.max(it.r.max_abs()).max(it.r_plus.norm()).max(it.r_minus.norm());
        prop_assert!((it.r_plus + it.r_minus - it.r.trace()).norm() <= 1e-12 * scale);
        prop_assert!((it.r_plus * it.r_minus - it.r.det()).norm() <= 1e-12 * scale * scale);
        prop_assert_eq!(it.rho_cla, it.r_plus.norm().max(it.r_minus.norm()));
    }

    #[test]
    fn closed_form_matches_the_coefficient_recurrence(
        med in medium(), omega in 0.1f64..10.0, fraction in 0.0f64..1.0, delta in 0.0f64..0.3,
    ) {
        let Some(k) = away_from_cutoffs(&med, omega, fraction) else { return Ok(()); };
        let sym = characteristic_roots(&med, omega, k).unwrap();
        let closed = eigenvalues_closed_form(&med, omega, k, delta).unwrap();
        let left = numeric_iteration_matrix(&sym, delta).unwrap();
        let right = numeric_iteration_matrix_right(&sym, delta).unwrap();
        prop_assert!(pair_deviation(closed, left.eigenvalues()) < 1e-10);
        prop_assert!(pair_deviation(left.eigenvalues(), right.eigenvalues()) < 1e-10);
    }

    #[test]
    fn numeric_matrix_inverts_cleanly(
        med in medium(), omega in 0.1f64..10.0, fraction in 0.0f64..1.0, delta in 0.0f64..0.3,
    ) {
        let Some(k) = away_from_cutoffs(&med, omega, fraction) else { return Ok(()); };
        let sym = characteristic_roots(&med, omega, k).unwrap();
        let r = numeric_iteration_matrix(&sym, delta).unwrap();
        let inv = r.inverse(1e-250).unwrap();
        let product = r * inv;
        prop_assert!(product.sub(&Mat2::IDENTITY).max_abs() < 1e-12 * r.condition().max(1.0));
    }

    #[test]
    fn power_growth_ignores_the_seed(
        med in medium(), omega in 0.5f64..5.0, fraction in 0.0f64..1.0, seed_a in any::<u64>(), seed_b in any::<u64>(),
    ) {
        let Some(k) = away_from_cutoffs(&med, omega, fraction) else { return Ok(()); };
        let delta = 0.1;
        let (rp, rm) = eigenvalues_closed_form(&med, omega, k, delta).unwrap();
        prop_assume!((rp.norm() - rm.norm()).abs() >= 1e-3 * rp.norm().max(rm.norm()));
        let sym = characteristic_roots(&med, omega, k).unwrap();
        let a = power_growth(&sym, delta, 400, seed_a).unwrap();
        let b = power_growth(&sym, delta, 400, seed_b).unwrap();
        prop_assert!((a - b).abs() <= 1e-2 * a.max(b));
    }
}

#[test]
fn reference_roots_at_k3() {
    let med = ElasticMedium::from_wave_speeds(1.0, 1.0, 0.5).unwrap();
    let sym = characteristic_roots(&med, 1.0, 3.0).unwrap();
    assert_relative_eq!(sym.lambda1.re, 5f64.sqrt(), max_relative = 1e-15);
    assert_relative_eq!(sym.lambda2.re, 8f64.sqrt(), max_relative = 1e-15);
}

#[test]
fn closed_form_iteration_matrix_equals_the_numeric_product() {
    let med = ElasticMedium::from_wave_speeds(1.0, 1.0, 0.5).unwrap();
    let sym = characteristic_roots(&med, 1.0, 3.0).unwrap();
    let numeric = numeric_iteration_matrix(&sym, 0.1).unwrap();
    let closed = iteration_matrix(&med, 1.0, 3.0, 0.1).unwrap().r;
    assert!(numeric.sub(&closed).max_abs() < 1e-10);
}

#[test]
fn zero_overlap_matrix_is_the_identity_even_for_large_wavenumbers() {
    let med = ElasticMedium::from_wave_speeds(1.0, 1.0, 0.5).unwrap();
    for k in [0.5, 1.5, 3.0, 8.0, 40.0] {
        let it = iteration_matrix(&med, 1.0, k, 0.0).unwrap();
        assert!(it.r.sub(&Mat2::IDENTITY).max_abs() < 1e-13, "k {k}");
    }
}
