//! Every example must keep compiling and running.

#[path = "../examples/convergence_sweep.rs"]
mod convergence_sweep;
#[path = "../examples/closed_form_vs_oracle.rs"]
mod closed_form_vs_oracle;
#[path = "../examples/small_overlap_asymptotics.rs"]
mod small_overlap_asymptotics;
#[path = "../examples/manufactured_solution.rs"]
mod manufactured_solution;
#[path = "../examples/schwarz_error_modes.rs"]
mod schwarz_error_modes;
#[path = "../examples/preconditioned_spectrum.rs"]
mod preconditioned_spectrum;
#[path = "../examples/gmres_vs_ras.rs"]
mod gmres_vs_ras;
#[path = "../examples/experiment_artifacts.rs"]
mod experiment_artifacts;

#[test]
fn analysis_examples_run() {
    convergence_sweep::run().unwrap();
    closed_form_vs_oracle::run().unwrap();
    small_overlap_asymptotics::run().unwrap();
}

#[test]
fn discretization_examples_run() {
    manufactured_solution::run().unwrap();
    schwarz_error_modes::run().unwrap();
    gmres_vs_ras::run().unwrap();
}

#[test]
fn spectrum_example_runs() {
    preconditioned_spectrum::run().unwrap();
}

#[test]
fn artifact_example_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    experiment_artifacts::run_into(dir.path().to_path_buf()).unwrap();
    for name in ["sweep.csv", "schwarz_history.csv", "final_error.bin", "spectrum.csv", "gmres_history.csv"] {
        assert!(dir.path().join(name).exists(), "{name}");
    }
}
