//! RAS as a stationary iteration against RAS as a GMRES preconditioner, for a
//! localized source. GMRES converges at both frequencies; the stationary
//! iteration diverges once the frequency is high enough.
//!
//! ```bash
//! cargo run --release --example gmres_vs_ras
//! ```

use navier_schwarz::fem::{assemble_with_load, build_mesh};
use navier_schwarz::schwarz::{decompose, GmresOptions, SchwarzSolver};
use navier_schwarz::{ElasticMedium, Result};

pub fn run() -> Result<()> {
    let medium = ElasticMedium::from_wave_speeds(1.0, 1.0, 0.5)?;
    let mesh = build_mesh((-1.0, 1.0), (0.0, 1.0), 80, 40)?;
    let decomposition = decompose(&mesh, 4)?;
    let source = |x: f64, y: f64| [(-((x + 0.5).powi(2) + (y - 0.5).powi(2)) / 0.01).exp(), 0.0];
    for omega in [1.0, 5.0] {
        let system = assemble_with_load(&mesh, &medium, omega, source)?;
        let solver = SchwarzSolver::new(&system, &mesh, &decomposition)?;
        let opts = GmresOptions::default();
        let krylov = solver.gmres(&system.rhs, opts)?;
        let zero = vec![0.0; solver.dim()];
        let stationary = solver.stationary_ras(&system.rhs, &zero, GmresOptions { max_iter: 50, ..opts })?;
        println!("omega = {omega}");
        println!(
            "  GMRES + RAS: {} iterations, converged {}, final preconditioned residual {:.3e}",
            krylov.iterations(),
            krylov.converged,
            krylov.history.last().copied().unwrap_or(0.0)
        );
        let residuals = &stationary.residual_history;
        println!(
            "  stationary RAS: residual after 10 / 25 / 50 steps: {:.3e} / {:.3e} / {:.3e}",
            residuals[10.min(residuals.len() - 1)],
            residuals[25.min(residuals.len() - 1)],
            residuals[residuals.len() - 1]
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
