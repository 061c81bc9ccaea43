//! Command-line front end: each subcommand runs one experiment and writes its
//! artifacts atomically into the output directory.
//!
//! Exit codes: 0 success, 2 configuration error, 3 solver error,
//! 4 eigensolve budget exceeded, 5 verification failure.

pub mod config;
pub mod verify;

use crate::analysis::{self, linspace, sweep};
use crate::error::{Error, Result};
use crate::fem::export::{write_atomic, write_binary, write_csv};
use crate::fem::{assemble, assemble_with_load, build_mesh, AssembledSystem, StructuredMesh};
use crate::modesim::{numeric_iteration_matrix, power_growth};
use crate::schwarz::{self, decompose, Decomposition, GmresOptions, SchwarzSolver, SolveOutcome};
use clap::{Parser, Subcommand};
pub use config::{ExperimentConfig, InitialGuess, MaterialSpec};
use serde::Serialize;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;
pub const EXIT_VERIFY: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "navier-schwarz", version, about = "Schwarz convergence experiments for time-harmonic elastic waves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// key=value config file (or any artifact with a `#@` header)
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub omega: Option<f64>,
    #[arg(long = "overlap-cells", global = true)]
    pub overlap_cells: Option<usize>,
    #[arg(long, global = true)]
    pub nx: Option<usize>,
    #[arg(long, global = true)]
    pub ny: Option<usize>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Override any config key, e.g. `--set delta=0.05`
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub set: Vec<String>,
}

#[derive(Debug, Clone, Copy, Subcommand, PartialEq, Eq)]
pub enum Command {
    /// Convergence factor over a wavenumber grid
    Sweep,
    /// Closed form against oracles; JSON report
    Verify,
    /// Coefficient-space recurrence against the closed form
    Modesim,
    /// Parallel Schwarz error iteration on the finite-element system
    Schwarz,
    /// Eigenvalues of the RAS-preconditioned operator
    Spectrum,
    /// Stationary RAS and RAS-preconditioned GMRES histories
    Gmres,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Sweep => "sweep",
            Command::Verify => "verify",
            Command::Modesim => "modesim",
            Command::Schwarz => "schwarz",
            Command::Spectrum => "spectrum",
            Command::Gmres => "gmres",
        }
    }
}

impl Cli {
    /// File config followed by flag overrides, validated.
    pub fn resolve_config(&self) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::from_file(path)?,
            None => ExperimentConfig::default(),
        };
        let mut pairs: Vec<(String, String)> = Vec::new();
        let mut push = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                pairs.push((k.to_string(), v));
            }
        };
        push("out", self.out.as_ref().map(|p| p.display().to_string()));
        push("seed", self.seed.map(|v| v.to_string()));
        push("omega", self.omega.map(|v| v.to_string()));
        push("overlap_cells", self.overlap_cells.map(|v| v.to_string()));
        push("nx", self.nx.map(|v| v.to_string()));
        push("ny", self.ny.map(|v| v.to_string()));
        push("tol", self.tol.map(|v| v.to_string()));
        for item in &self.set {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("--set expects KEY=VALUE, got {item:?}")))?;
            pairs.push((k.trim().to_string(), v.trim().to_string()));
        }
        cfg.apply_pairs(&pairs)?;
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Config(_) => EXIT_CONFIG,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_SOLVER,
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let cfg = match cli.resolve_config() {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CONFIG;
        }
    };
    match run(cli.command, &cfg) {
        Ok(report) => {
            print!("{}", report.summary);
            report.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// What a command produced.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub files: Vec<PathBuf>,
    pub summary: String,
    pub exit_code: i32,
}

/// Runs one command with a validated config.
pub fn run(command: Command, cfg: &ExperimentConfig) -> Result<RunReport> {
    std::fs::create_dir_all(&cfg.out)?;
    match command {
        Command::Sweep => cmd_sweep(cfg),
        Command::Verify => cmd_verify(cfg),
        Command::Modesim => cmd_modesim(cfg),
        Command::Schwarz => cmd_schwarz(cfg),
        Command::Spectrum => cmd_spectrum(cfg),
        Command::Gmres => cmd_gmres(cfg),
    }
}

fn e17(v: f64) -> String {
    format!("{v:.16e}")
}

fn emit(cfg: &ExperimentConfig, name: &str, command: Command, body: &str, files: &mut Vec<PathBuf>) -> Result<()> {
    let path = cfg.out.join(name);
    write_atomic(&path, format!("{}{}", cfg.header(command.name()), body).as_bytes())?;
    files.push(path);
    Ok(())
}

fn k_grid(cfg: &ExperimentConfig) -> Vec<f64> {
    linspace(cfg.k_min, cfg.k_max, cfg.k_count)
}

pub fn cmd_sweep(cfg: &ExperimentConfig) -> Result<RunReport> {
    let medium = cfg.medium()?;
    let rows = sweep(&medium, cfg.omega, cfg.delta, &k_grid(cfg))?;
    let mut body = String::from("k,abs_r_plus,abs_r_minus,rho,zone\n");
    for r in &rows {
        writeln!(body, "{},{},{},{},{}", e17(r.k), e17(r.abs_r_plus), e17(r.abs_r_minus), e17(r.rho), r.zone).unwrap();
    }
    let mut files = Vec::new();
    emit(cfg, "sweep.csv", Command::Sweep, &body, &mut files)?;
    let peak = rows.iter().map(|r| r.rho).fold(f64::NEG_INFINITY, f64::max);
    Ok(RunReport {
        files,
        summary: format!("sweep: {} wavenumbers, max rho {peak:.6}\n", rows.len()),
        exit_code: EXIT_OK,
    })
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    config: Vec<(&'static str, String)>,
    passed: bool,
    checks: &'a [verify::Check],
}

pub fn cmd_verify(cfg: &ExperimentConfig) -> Result<RunReport> {
    let medium = cfg.medium()?;
    let checks = verify::run_checks(&medium, cfg.omega, cfg.delta)?;
    let passed = checks.iter().all(|c| c.passed);
    let report = VerifyReport {
        config: cfg.to_pairs(),
        passed,
        checks: &checks,
    };
    let json = serde_json::to_string_pretty(&report).map_err(|e| Error::Config(e.to_string()))?;
    let path = cfg.out.join("verify.json");
    write_atomic(&path, format!("{json}\n").as_bytes())?;
    let mut summary = String::new();
    for c in &checks {
        writeln!(
            summary,
            "{} {:<26} deviation {:.3e} (tolerance {:.1e})",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.max_deviation,
            c.tolerance
        )
        .unwrap();
    }
    Ok(RunReport {
        files: vec![path],
        summary,
        exit_code: if passed { EXIT_OK } else { EXIT_VERIFY },
    })
}

pub fn cmd_modesim(cfg: &ExperimentConfig) -> Result<RunReport> {
    let medium = cfg.medium()?;
    let mut body = String::from("k,rho_closed_form,rho_numeric,power_growth,eigen_deviation\n");
    let mut worst = 0.0f64;
    let mut skipped = 0;
    for k in k_grid(cfg) {
        if k == 0.0 {
            // basis vectors are normalized by k
            skipped += 1;
            continue;
        }
        let closed = analysis::eigenvalues_closed_form(&medium, cfg.omega, k, cfg.delta)?;
        let sym = analysis::characteristic_roots(&medium, cfg.omega, k)?;
        let numeric = numeric_iteration_matrix(&sym, cfg.delta)?;
        let dev = verify::pair_deviation(closed, numeric.eigenvalues());
        worst = worst.max(dev);
        let growth = power_growth(&sym, cfg.delta, cfg.modesim_iter, cfg.seed)?;
        writeln!(
            body,
            "{},{},{},{},{}",
            e17(k),
            e17(closed.0.norm().max(closed.1.norm())),
            e17(numeric.spectral_radius()),
            e17(growth),
            e17(dev)
        )
        .unwrap();
    }
    let mut files = Vec::new();
    emit(cfg, "modesim.csv", Command::Modesim, &body, &mut files)?;
    Ok(RunReport {
        files,
        summary: format!("modesim: max eigenvalue deviation {worst:.3e} ({skipped} wavenumber(s) at k = 0 skipped)\n"),
        exit_code: EXIT_OK,
    })
}

/// Mesh, decomposition and system for a config.
pub struct Setup {
    pub mesh: StructuredMesh,
    pub decomposition: Decomposition,
    pub system: AssembledSystem,
}

/// Builds the discrete problem; `with_source` adds the Gaussian load.
pub fn setup(cfg: &ExperimentConfig, with_source: bool) -> Result<Setup> {
    let medium = cfg.medium()?;
    let mesh = build_mesh((cfg.x_min, cfg.x_max), (cfg.y_min, cfg.y_max), cfg.nx, cfg.ny)?;
    let decomposition = if cfg.one_subdomain {
        Decomposition::single(&mesh)
    } else {
        decompose(&mesh, cfg.overlap_cells)?
    };
    let system = if with_source {
        let (sx, sy, w) = (cfg.source_x, cfg.source_y, cfg.source_width);
        assemble_with_load(&mesh, &medium, cfg.omega, move |x, y| {
            [(-((x - sx).powi(2) + (y - sy).powi(2)) / w).exp(), 0.0]
        })?
    } else {
        assemble(&mesh, &medium, cfg.omega)?
    };
    Ok(Setup {
        mesh,
        decomposition,
        system,
    })
}

pub fn cmd_schwarz(cfg: &ExperimentConfig) -> Result<RunReport> {
    let s = setup(cfg, false)?;
    let solver = SchwarzSolver::new(&s.system, &s.mesh, &s.decomposition)?;
    let initial = match cfg.initial {
        InitialGuess::Random => solver.seeded_initial_guess(cfg.seed, cfg.initial_max),
        InitialGuess::Zero => vec![0.0; solver.dim()],
    };
    let (final_iterate, history) = solver.iterate(&initial, cfg.n_iter)?;
    let mut body = String::from("iter,err_max,err_l2,dominant_mode_j\n");
    for i in 0..history.len() {
        writeln!(
            body,
            "{i},{},{},{}",
            e17(history.err_max[i]),
            e17(history.err_l2[i]),
            history.dominant_mode[i].unwrap_or(0)
        )
        .unwrap();
    }
    let mut files = Vec::new();
    emit(cfg, "schwarz_history.csv", Command::Schwarz, &body, &mut files)?;
    let mut field = Vec::new();
    write_csv(&mut field, &s.mesh, &final_iterate)?;
    emit(cfg, "final_error.csv", Command::Schwarz, &String::from_utf8_lossy(&field), &mut files)?;
    let mut dump = Vec::new();
    write_binary(&mut dump, &s.mesh, &final_iterate)?;
    let bin = cfg.out.join("final_error.bin");
    write_atomic(&bin, &dump)?;
    files.push(bin);
    let last = history.len() - 1;
    Ok(RunReport {
        files,
        summary: format!(
            "schwarz: error {:.3e} -> {:.3e} after {} iterations, dominant interface mode {}\n",
            history.err_max[0],
            history.err_max[last],
            last,
            history.dominant_mode[last].map_or("none".to_string(), |j| j.to_string())
        ),
        exit_code: EXIT_OK,
    })
}

pub fn cmd_spectrum(cfg: &ExperimentConfig) -> Result<RunReport> {
    let unknowns = 2 * (cfg.nx + 1) * (cfg.ny + 1);
    if unknowns > schwarz::SPECTRUM_BUDGET {
        // refuse before assembling anything
        return Err(Error::BudgetExceeded {
            unknowns,
            budget: schwarz::SPECTRUM_BUDGET,
        });
    }
    let s = setup(cfg, false)?;
    let solver = SchwarzSolver::new(&s.system, &s.mesh, &s.decomposition)?;
    let eigenvalues = schwarz::spectrum(&solver)?;
    let mut body = String::from("re,im\n");
    for z in &eigenvalues {
        writeln!(body, "{},{}", e17(z.re), e17(z.im)).unwrap();
    }
    let mut files = Vec::new();
    emit(cfg, "spectrum.csv", Command::Spectrum, &body, &mut files)?;
    let min_abs = eigenvalues.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    let max_dist = eigenvalues.iter().map(|z| (z - 1.0).norm()).fold(0.0, f64::max);
    Ok(RunReport {
        files,
        summary: format!(
            "spectrum: {} eigenvalues, min |z| {min_abs:.4e}, max |z - 1| {max_dist:.6}\n",
            eigenvalues.len()
        ),
        exit_code: EXIT_OK,
    })
}

fn history_csv(outcome: &SolveOutcome) -> String {
    let mut body = String::from("iter,relres,true_relres\n");
    for (i, (p, t)) in outcome.history.iter().zip(&outcome.residual_history).enumerate() {
        writeln!(body, "{i},{},{}", e17(*p), e17(*t)).unwrap();
    }
    body
}

pub fn cmd_gmres(cfg: &ExperimentConfig) -> Result<RunReport> {
    let s = setup(cfg, true)?;
    let opts = GmresOptions {
        tol: cfg.tol,
        max_iter: cfg.max_iter,
        restart: (cfg.restart > 0).then_some(cfg.restart),
    };
    let stationary_opts = GmresOptions {
        max_iter: cfg.stationary_iter,
        ..opts
    };
    let rhs = &s.system.rhs;
    let zero = vec![0.0; rhs.len()];
    let (krylov, stationary) = if cfg.identity_operator {
        let id = |x: &[f64]| x.to_vec();
        (
            schwarz::gmres(id, id, rhs, &zero, opts)?,
            schwarz::stationary(id, id, rhs, &zero, stationary_opts)?,
        )
    } else {
        let solver = SchwarzSolver::new(&s.system, &s.mesh, &s.decomposition)?;
        (solver.gmres(rhs, opts)?, solver.stationary_ras(rhs, &zero, stationary_opts)?)
    };
    let mut files = Vec::new();
    emit(cfg, "gmres_history.csv", Command::Gmres, &history_csv(&krylov), &mut files)?;
    emit(cfg, "ras_history.csv", Command::Gmres, &history_csv(&stationary), &mut files)?;
    let summary = format!(
        "gmres: {} iterations, converged {}, stagnated {}\nras: {} iterations, final true residual {:.3e}\n",
        krylov.iterations(),
        krylov.converged,
        krylov.stagnated,
        stationary.iterations(),
        stationary.residual_history.last().copied().unwrap_or(0.0)
    );
    Ok(RunReport {
        files,
        summary,
        exit_code: EXIT_OK,
    })
}

/// Reads the data rows of a CSV artifact, skipping header comments and the column line.
pub fn read_csv_rows(path: &Path) -> Result<Vec<Vec<String>>> {
    let text = std::fs::read_to_string(path)?;
    Ok(text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect())
}
