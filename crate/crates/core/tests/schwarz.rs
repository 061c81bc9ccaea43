use navier_schwarz::fem::{assemble, assemble_with_load, build_mesh, AssembledSystem, StructuredMesh};
use navier_schwarz::schwarz::{decompose, spectrum, Decomposition, GmresOptions, SchwarzSolver};
use navier_schwarz::{ElasticMedium, Error};
use num_complex::Complex64;

fn medium() -> ElasticMedium {
    ElasticMedium::from_wave_speeds(1.0, 1.0, 0.5).unwrap()
}

struct Problem {
    mesh: StructuredMesh,
    decomposition: Decomposition,
    system: AssembledSystem,
}

fn problem(nx: usize, ny: usize, omega: f64, with_source: bool) -> Problem {
    let mesh = build_mesh((-1.0, 1.0), (0.0, 1.0), nx, ny).unwrap();
    let decomposition = decompose(&mesh, 4).unwrap();
    let system = if with_source {
        assemble_with_load(&mesh, &medium(), omega, |x, y| {
            [(-((x + 0.5).powi(2) + (y - 0.5).powi(2)) / 0.01).exp(), 0.0]
        })
        .unwrap()
    } else {
        assemble(&mesh, &medium(), omega).unwrap()
    };
    Problem {
        mesh,
        decomposition,
        system,
    }
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).fold(0.0, f64::max)
}

#[test]
fn reference_decomposition_geometry() {
    let mesh = build_mesh((-1.0, 1.0), (0.0, 1.0), 80, 40).unwrap();
    let d = decompose(&mesh, 4).unwrap();
    assert!((d.overlap_width(&mesh) - 0.1).abs() < 1e-14);
    let interfaces = d.interface_positions(&mesh);
    assert_eq!(interfaces.len(), 2);
    assert!(interfaces.iter().any(|x| (x - 0.05).abs() < 1e-14));
    assert!(interfaces.iter().any(|x| (x + 0.05).abs() < 1e-14));
    let minimal = decompose(&mesh, 2).unwrap();
    assert!((minimal.overlap_width(&mesh) - 2.0 * mesh.hx()).abs() < 1e-14);
}

#[test]
fn strips_cover_the_mesh_and_ownership_partitions_it() {
    let mesh = build_mesh((-1.0, 1.0), (0.0, 1.0), 20, 6).unwrap();
    let d = decompose(&mesh, 6).unwrap();
    let owner = d.node_owner(&mesh);
    let mut covered = vec![0usize; mesh.node_count()];
    for s in 0..d.strips.len() {
        for n in d.strip_nodes(&mesh, s) {
            covered[n] += 1;
        }
    }
    for n in 0..mesh.node_count() {
        assert!(covered[n] >= 1);
        let (i, _) = mesh.grid_position(n);
        let owners: Vec<usize> = (0..d.strips.len()).filter(|&s| d.strips[s].owns_column(i)).collect();
        assert_eq!(owners, vec![owner[n]]);
        assert!(d.strips[owner[n]].contains_column(i));
    }
}

#[test]
fn invalid_overlaps_are_domain_errors() {
    let mesh = build_mesh((-1.0, 1.0), (0.0, 1.0), 20, 6).unwrap();
    for bad in [0, 1, 3, 20, 22] {
        assert!(matches!(decompose(&mesh, bad), Err(Error::Domain { .. })), "overlap {bad}");
    }
    let odd = build_mesh((-1.0, 1.0), (0.0, 1.0), 21, 6).unwrap();
    assert!(decompose(&odd, 4).is_err());
}

#[test]
fn stationary_ras_reproduces_parallel_schwarz() {
    for (omega, with_source) in [(1.0, false), (5.0, false), (5.0, true)] {
        let p = problem(40, 20, omega, with_source);
        let solver = SchwarzSolver::new(&p.system, &p.mesh, &p.decomposition).unwrap();
        let mut x = solver.seeded_initial_guess(11, 0.789);
        let mut state = solver.initial_state(&x);
        for it in 1..=20 {
            let ax = p.system.matrix.matvec(&x);
            let r: Vec<f64> = p.system.rhs.iter().zip(ax).map(|(b, a)| b - a).collect();
            for (xi, zi) in x.iter_mut().zip(solver.ras_apply(&r)) {
                *xi += zi;
            }
            state = solver.step(&state);
            let glued = solver.glue(&state);
            let diff: Vec<f64> = glued.iter().zip(&x).map(|(a, b)| a - b).collect();
            assert!(
                max_abs(&diff) <= 1e-10 * max_abs(&x).max(1.0),
                "omega {omega}, iteration {it}: {}",
                max_abs(&diff)
            );
        }
    }
}

#[test]
fn iteration_rate_matches_the_error_propagation_spectrum() {
    for omega in [1.0, 5.0] {
        let p = problem(40, 20, omega, false);
        let solver = SchwarzSolver::new(&p.system, &p.mesh, &p.decomposition).unwrap();
        let eigenvalues = spectrum(&solver).unwrap();
        assert_eq!(eigenvalues.len(), solver.dim());
        let radius = eigenvalues.iter().map(|z| (z - 1.0).norm()).fold(0.0, f64::max);
        let (_, history) = solver.iterate(&solver.seeded_initial_guess(2024, 0.789), 25).unwrap();
        assert_eq!(history.len(), 26);
        let rate = history.rate(15, 25);
        assert!((rate - radius).abs() <= 0.02 * radius, "omega {omega}: rate {rate}, radius {radius}");
    }
}

#[test]
fn spectrum_is_invariant_under_renumbering() {
    let p = problem(12, 6, 5.0, false);
    let solver = SchwarzSolver::new(&p.system, &p.mesh, &p.decomposition).unwrap();
    let reference = spectrum(&solver).unwrap();
    let n = solver.dim();
    // conjugate M^{-1} A by a fixed stride permutation and solve densely
    let perm: Vec<usize> = (0..n).map(|i| (37 * i + 5) % n).collect();
    assert_ne!(n % 37, 0, "stride must be coprime to the dimension");
    let columns: Vec<Vec<f64>> = perm
        .iter()
        .map(|&j| {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            solver.preconditioned_apply(&e)
        })
        .collect();
    let dense = faer::Mat::from_fn(n, n, |i, j| columns[j][perm[i]]);
    let mut permuted: Vec<Complex64> = dense
        .eigenvalues()
        .unwrap()
        .into_iter()
        .map(|z| Complex64::new(z.re, z.im))
        .collect();
    permuted.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    assert_eq!(permuted.len(), reference.len());
    // match each eigenvalue to its nearest partner to stay robust to tie ordering
    for z in &reference {
        let nearest = permuted.iter().map(|w| (w - z).norm()).fold(f64::INFINITY, f64::min);
        assert!(nearest < 1e-8, "eigenvalue {z} has no partner within 1e-8 ({nearest})");
    }
}

#[test]
fn single_subdomain_is_an_exact_solver() {
    let mesh = build_mesh((-1.0, 1.0), (0.0, 1.0), 16, 8).unwrap();
    let system = assemble_with_load(&mesh, &medium(), 5.0, |x, y| [x + y, 1.0]).unwrap();
    let d = Decomposition::single(&mesh);
    let solver = SchwarzSolver::new(&system, &mesh, &d).unwrap();
    for z in spectrum(&solver).unwrap() {
        assert!((z - 1.0).norm() < 1e-10, "eigenvalue {z}");
    }
    let (_, history) = solver.iterate(&solver.seeded_initial_guess(3, 1.0), 1).unwrap();
    assert!(history.err_max[1] < 1e-12 * history.err_max[0].max(1.0));
    let outcome = solver.gmres(&system.rhs, GmresOptions::default()).unwrap();
    assert!(outcome.converged);
    assert_eq!(outcome.iterations(), 1);
}

#[test]
fn zero_start_without_load_stays_zero() {
    let p = problem(20, 10, 5.0, false);
    let solver = SchwarzSolver::new(&p.system, &p.mesh, &p.decomposition).unwrap();
    let (last, history) = solver.iterate(&vec![0.0; solver.dim()], 10).unwrap();
    assert!(last.iter().all(|&v| v == 0.0));
    assert!(history.err_max.iter().chain(&history.err_l2).all(|&e| e == 0.0));
    assert!(history.dominant_mode.iter().all(Option::is_none));
}

#[test]
fn gmres_residuals_never_increase() {
    for omega in [1.0, 5.0] {
        let p = problem(80, 40, omega, true);
        let solver = SchwarzSolver::new(&p.system, &p.mesh, &p.decomposition).unwrap();
        for restart in [None, Some(20)] {
            let opts = GmresOptions {
                tol: 1e-6,
                max_iter: 500,
                restart,
            };
            let outcome = solver.gmres(&p.system.rhs, opts).unwrap();
            // short restarts may stagnate on the indefinite system; monotonicity still holds
            assert!(outcome.converged || restart.is_some(), "omega {omega}");
            for w in outcome.history.windows(2) {
                assert!(w[1] <= w[0] * (1.0 + 1e-12), "omega {omega}: {} after {}", w[1], w[0]);
            }
            let ax = p.system.matrix.matvec(&outcome.solution);
            let r: Vec<f64> = p.system.rhs.iter().zip(ax).map(|(b, a)| b - a).collect();
            let true_rel = r.iter().map(|v| v * v).sum::<f64>().sqrt()
                / p.system.rhs.iter().map(|v| v * v).sum::<f64>().sqrt();
            assert!((true_rel - outcome.residual_history.last().unwrap()).abs() < 1e-12);
        }
    }
}

#[test]
fn parallel_schwarz_is_deterministic() {
    let p = problem(40, 20, 5.0, false);
    let solver = SchwarzSolver::new(&p.system, &p.mesh, &p.decomposition).unwrap();
    let start = solver.seeded_initial_guess(2024, 0.789);
    let (a, ha) = solver.iterate(&start, 8).unwrap();
    let (b, hb) = solver.iterate(&start, 8).unwrap();
    assert_eq!(a, b);
    assert_eq!(ha, hb);
    assert_eq!(start, solver.seeded_initial_guess(2024, 0.789));
    let modulus = (0..p.mesh.node_count()).map(|n| start[2 * n].hypot(start[2 * n + 1])).fold(0.0, f64::max);
    assert!((modulus - 0.789).abs() < 1e-15);
}

#[test]
fn oversized_spectrum_is_refused() {
    let mesh = build_mesh((-1.0, 1.0), (0.0, 1.0), 120, 90).unwrap();
    let system = assemble(&mesh, &medium(), 1.0).unwrap();
    let d = decompose(&mesh, 4).unwrap();
    let solver = SchwarzSolver::new(&system, &mesh, &d).unwrap();
    assert!(matches!(spectrum(&solver), Err(Error::BudgetExceeded { unknowns: 22022, .. })));
}
