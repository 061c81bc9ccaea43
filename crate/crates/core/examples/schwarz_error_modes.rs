//! Parallel Schwarz on the two-strip decomposition of `(-1,1) x (0,1)`: error
//! history and the dominant sine mode of the error along the middle line.
//!
//! ```bash
//! cargo run --release --example schwarz_error_modes
//! ```

use navier_schwarz::analysis::convergence_factor;
use navier_schwarz::fem::{assemble, build_mesh};
use navier_schwarz::schwarz::{decompose, SchwarzSolver};
use navier_schwarz::{ElasticMedium, Result};
use std::f64::consts::PI;

pub fn run() -> Result<()> {
    let medium = ElasticMedium::from_wave_speeds(1.0, 1.0, 0.5)?;
    let mesh = build_mesh((-1.0, 1.0), (0.0, 1.0), 80, 40)?;
    let decomposition = decompose(&mesh, 4)?;
    let overlap = decomposition.overlap_width(&mesh);
    for omega in [1.0, 5.0] {
        let system = assemble(&mesh, &medium, omega)?;
        let solver = SchwarzSolver::new(&system, &mesh, &decomposition)?;
        let (_, history) = solver.iterate(&solver.seeded_initial_guess(2024, 0.789), 25)?;
        println!("omega = {omega}");
        for it in (0..=25).step_by(5) {
            println!(
                "  iteration {it:>2}: max error {:.4e}, L2 error {:.4e}, dominant mode {:?}",
                history.err_max[it], history.err_l2[it], history.dominant_mode[it]
            );
        }
        let (j, rho) = (1..mesh.ny)
            .map(|j| (j, convergence_factor(&medium, omega, j as f64 * PI, overlap).unwrap_or(0.0)))
            .fold((0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
        println!(
            "  observed rate per iteration {:.4}; half-plane theory: largest factor {rho:.4} per double sweep at j = {j}\n",
            history.rate(15, 25)
        );
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
