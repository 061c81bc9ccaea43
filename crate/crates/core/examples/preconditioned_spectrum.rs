//! Eigenvalues of the RAS-preconditioned operator on a coarse mesh. At low
//! frequency they stay inside the unit disk around one; at higher frequency
//! they spread out and approach the origin.
//!
//! ```bash
//! cargo run --release --example preconditioned_spectrum
//! ```

use navier_schwarz::fem::{assemble, build_mesh};
use navier_schwarz::schwarz::{decompose, spectrum, SchwarzSolver};
use navier_schwarz::{ElasticMedium, Result};

pub fn run() -> Result<()> {
    let medium = ElasticMedium::from_wave_speeds(1.0, 1.0, 0.5)?;
    let mesh = build_mesh((-1.0, 1.0), (0.0, 1.0), 40, 20)?;
    let decomposition = decompose(&mesh, 4)?;
    for omega in [1.0, 5.0] {
        let system = assemble(&mesh, &medium, omega)?;
        let solver = SchwarzSolver::new(&system, &mesh, &decomposition)?;
        let eigenvalues = spectrum(&solver)?;
        let radius = eigenvalues.iter().map(|z| (z - 1.0).norm()).fold(0.0, f64::max);
        let smallest = eigenvalues.iter().min_by(|a, b| a.norm().total_cmp(&b.norm())).expect("nonempty");
        let outside = eigenvalues.iter().filter(|z| (*z - 1.0).norm() > 1.0).count();
        println!(
            "omega = {omega}: {} eigenvalues, max |z - 1| = {radius:.6}, {outside} outside the unit disk around 1, smallest {:.4} {:+.4}i",
            eigenvalues.len(),
            smallest.re,
            smallest.im
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
