//! Convergence factor of the two-subdomain Schwarz iteration over Fourier
//! wavenumbers, showing the stagnant, divergent and contractive bands.
//!
//! ```bash
//! cargo run --release --example convergence_sweep
//! ```

use navier_schwarz::analysis::{linspace, sweep, Zone};
use navier_schwarz::{ElasticMedium, Result};

pub fn run() -> Result<()> {
    let medium = ElasticMedium::from_wave_speeds(1.0, 1.0, 0.5)?;
    let delta = 0.1;
    for omega in [1.0, 5.0] {
        let rows = sweep(&medium, omega, delta, &linspace(0.0, 4.0 * omega / medium.cs(), 161))?;
        println!("omega = {omega}, overlap = {delta}");
        println!("{:>9} {:>11} {:>11} {:>10}  zone", "k", "|r+|", "|r-|", "rho");
        for row in rows.iter().step_by(8) {
            println!(
                "{:>9.4} {:>11.6} {:>11.6} {:>10.6}  {}",
                row.k, row.abs_r_plus, row.abs_r_minus, row.rho, row.zone
            );
        }
        let peak = rows
            .iter()
            .filter(|r| r.zone == Zone::Divergent)
            .max_by(|a, b| a.rho.total_cmp(&b.rho))
            .expect("the band between the two cut-offs is sampled");
        println!("largest factor {:.6} at k = {:.4}\n", peak.rho, peak.k);
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
