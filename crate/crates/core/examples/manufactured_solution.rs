//! Verifies the P1 finite-element discretization on a clamped unit square with
//! a smooth exact solution: the L2 error drops by four per mesh halving.
//!
//! ```bash
//! cargo run --release --example manufactured_solution
//! ```

use navier_schwarz::fem::assembly::{assemble_with_load, direct_solve, l2_error, manufactured};
use navier_schwarz::fem::build_mesh;
use navier_schwarz::{ElasticMedium, Result};

pub fn run() -> Result<()> {
    let medium = ElasticMedium::from_wave_speeds(1.0, 1.0, 0.5)?;
    for omega in [0.0, 1.0, 3.0] {
        println!("omega = {omega}");
        let mut previous: Option<f64> = None;
        for n in [8, 16, 32, 64] {
            let mesh = build_mesh((0.0, 1.0), (0.0, 1.0), n, n)?;
            let system = assemble_with_load(&mesh, &medium, omega, manufactured::source(&medium, omega))?;
            let u = direct_solve(&system)?;
            let error = l2_error(&mesh, &u, manufactured::exact);
            match previous {
                Some(p) => println!("  n = {n:>3}: L2 error {error:.4e}, order {:.3}", (p / error).log2()),
                None => println!("  n = {n:>3}: L2 error {error:.4e}"),
            }
            previous = Some(error);
        }
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
