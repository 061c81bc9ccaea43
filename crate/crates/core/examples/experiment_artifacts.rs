//! Drives the experiment commands from a key=value configuration and writes
//! their CSV and binary artifacts, each headed by the configuration that
//! produced it.
//!
//! ```bash
//! cargo run --release --example experiment_artifacts -- /tmp/navier-out
//! ```

use navier_schwarz::cli::{run as run_command, Command, ExperimentConfig};
use navier_schwarz::Result;
use std::path::PathBuf;

pub fn run_into(out: PathBuf) -> Result<()> {
    let mut config = ExperimentConfig::from_text(
        "# coarse variant of the reference experiment\n\
         omega = 5\n\
         nx = 40\n\
         ny = 20\n\
         n_iter = 15\n",
    )?;
    config.out = out;
    config.validate()?;
    for command in [Command::Sweep, Command::Schwarz, Command::Spectrum, Command::Gmres] {
        let report = run_command(command, &config)?;
        print!("{}", report.summary);
        for file in report.files {
            println!("  wrote {}", file.display());
        }
    }
    Ok(())
}

pub fn run() -> Result<()> {
    let out = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("navier-schwarz-example"));
    run_into(out)
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
