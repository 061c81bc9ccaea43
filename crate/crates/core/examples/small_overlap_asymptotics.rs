//! Growth of the worst convergence factor as the overlap shrinks: the excess
//! over one scales linearly with the overlap, with a slope known in closed form.
//!
//! ```bash
//! cargo run --release --example small_overlap_asymptotics
//! ```

use navier_schwarz::analysis::{asymptotic_slope, first_order_rho, convergence_factor, max_rho};
use navier_schwarz::{ElasticMedium, Result};

pub fn run() -> Result<()> {
    let medium = ElasticMedium::from_wave_speeds(1.0, 1.0, 0.5)?;
    let omega = 1.0;
    let slope = asymptotic_slope(medium.cp(), medium.cs(), omega)?;
    println!("closed-form slope of max rho against overlap: {slope:.12}");
    println!("{:>8} {:>10} {:>16} {:>14}", "overlap", "k*", "(rho* - 1)/delta", "relative gap");
    for delta in [1e-1, 1e-2, 1e-3, 1e-4] {
        let (k_star, rho_star) = max_rho(&medium, omega, delta)?;
        let measured = (rho_star - 1.0) / delta;
        println!("{delta:>8.0e} {k_star:>10.6} {measured:>16.10} {:>14.3e}", (measured - slope).abs() / slope);
    }

    let delta = 1e-3;
    println!("\nper-wavenumber first-order model at overlap {delta}:");
    for k in [1.1, 1.3, 1.5, 1.7, 1.9] {
        let exact = convergence_factor(&medium, omega, k, delta)?;
        let model = first_order_rho(&medium, omega, k, delta)?;
        println!("  k = {k}: rho = {exact:.10}, first order = {model:.10}");
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
