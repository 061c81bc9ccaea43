//! Cross-checks the closed-form eigenvalues of the per-mode iteration matrix
//! against the matrix assembled numerically from the subdomain solution bases,
//! and against power iteration on the coefficient recurrence.
//!
//! ```bash
//! cargo run --release --example closed_form_vs_oracle
//! ```

use navier_schwarz::analysis::{characteristic_roots, eigenvalues_closed_form};
use navier_schwarz::modesim::{numeric_iteration_matrix, power_growth};
use navier_schwarz::{ElasticMedium, Result};

pub fn run() -> Result<()> {
    let medium = ElasticMedium::from_wave_speeds(1.0, 1.0, 0.5)?;
    let (omega, delta) = (1.0, 0.1);
    println!("{:>6} {:>10} {:>24} {:>24} {:>12}", "k", "zone", "closed form |r+|,|r-|", "numeric |r+|,|r-|", "power");
    for k in [0.5, 1.2, 1.5, 1.8, 2.5, 3.0, 6.0] {
        let sym = characteristic_roots(&medium, omega, k)?;
        let (rp, rm) = eigenvalues_closed_form(&medium, omega, k, delta)?;
        let (np, nm) = numeric_iteration_matrix(&sym, delta)?.eigenvalues();
        let growth = power_growth(&sym, delta, 200, 7)?;
        println!(
            "{k:>6.2} {:>10} {:>11.8},{:>11.8} {:>11.8},{:>11.8} {growth:>12.8}",
            sym.zone.as_str(),
            rp.norm(),
            rm.norm(),
            np.norm(),
            nm.norm(),
        );
    }
    println!("\nwithout overlap every mode has |r+| = |r-| = 1:");
    for k in [0.5, 1.5, 3.0] {
        let (rp, rm) = eigenvalues_closed_form(&medium, omega, k, 0.0)?;
        println!("  k = {k}: |r+| = {:.15}, |r-| = {:.15}", rp.norm(), rm.norm());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
