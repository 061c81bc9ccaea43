//! Subdomain factorizations shared by the Schwarz iteration, the RAS
//! preconditioner and everything built on top of them.

use super::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::fem::modes::vector_mode_amplitudes;
use crate::fem::{dominant_mode, AssembledSystem, DirectSolver, StructuredMesh};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Factorized Dirichlet problem on one strip.
#[derive(Debug, Clone)]
pub(crate) struct LocalProblem {
    /// Free global unknowns strictly inside the strip.
    pub interior: Vec<usize>,
    /// Free global unknowns on the strip's interface lines.
    pub interface: Vec<usize>,
    /// `(local row, global column, value)` couplings to unknowns outside `interior`.
    pub coupling: Vec<(usize, usize, f64)>,
    pub solver: DirectSolver,
}

impl LocalProblem {
    fn new(system: &AssembledSystem, mesh: &StructuredMesh, decomposition: &Decomposition, s: usize) -> Result<Self> {
        let strip = decomposition.strips[s];
        let (first, last) = (strip.first_column, strip.last_column);
        let column = |u: usize| mesh.grid_position(u / 2).0;
        let interior: Vec<usize> = (0..system.dim())
            .filter(|&u| !system.dirichlet_mask[u] && first < column(u) && column(u) < last)
            .collect();
        let interface_columns = strip.interface_columns(mesh.nx);
        let interface: Vec<usize> = (0..system.dim())
            .filter(|&u| !system.dirichlet_mask[u] && interface_columns.contains(&column(u)))
            .collect();
        let mut local = vec![usize::MAX; system.dim()];
        for (l, &g) in interior.iter().enumerate() {
            local[g] = l;
        }
        let mut coupling = Vec::new();
        for (l, &g) in interior.iter().enumerate() {
            let (cols, vals) = system.matrix.row(g);
            for (&c, &v) in cols.iter().zip(vals) {
                if local[c] == usize::MAX && v != 0.0 {
                    coupling.push((l, c, v));
                }
            }
        }
        let solver = DirectSolver::factorize(&system.matrix.submatrix(&interior))?;
        Ok(Self {
            interior,
            interface,
            coupling,
            solver,
        })
    }

    /// Local solution with right-hand side `b` and Dirichlet data `outside` on the strip boundary.
    fn solve_with_data(&self, b: &[f64], outside: &[f64]) -> Vec<f64> {
        let mut rhs: Vec<f64> = self.interior.iter().map(|&g| b[g]).collect();
        for &(l, c, v) in &self.coupling {
            rhs[l] -= v * outside[c];
        }
        self.solver.solve(&rhs)
    }

    /// Local solution with homogeneous data, `A_ii^{-1} R_i r`.
    fn solve_restricted(&self, r: &[f64]) -> Vec<f64> {
        let rhs: Vec<f64> = self.interior.iter().map(|&g| r[g]).collect();
        self.solver.solve(&rhs)
    }
}

/// Per-iteration error norms of a Schwarz run (entry 0 is the initial error).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ErrorHistory {
    /// Max over nodes of the displacement modulus `sqrt(e_x^2 + e_y^2)`.
    pub err_max: Vec<f64>,
    /// `sqrt(hx hy sum_nodes |e|^2)`.
    pub err_l2: Vec<f64>,
    /// Dominant sine mode of the error trace on the middle line.
    pub dominant_mode: Vec<Option<usize>>,
}

impl ErrorHistory {
    pub fn len(&self) -> usize {
        self.err_max.len()
    }

    pub fn is_empty(&self) -> bool {
        self.err_max.is_empty()
    }

    /// Per-iteration rate `(err[to] / err[from])^(1/(to-from))` of the max-modulus error.
    pub fn rate(&self, from: usize, to: usize) -> f64 {
        (self.err_max[to] / self.err_max[from]).powf(1.0 / (to - from) as f64)
    }
}

/// Two-level state of the parallel Schwarz iteration: one iterate per strip.
#[derive(Debug, Clone, PartialEq)]
pub struct SchwarzState {
    /// Full-length iterate of each strip (zero outside the strip).
    pub local: Vec<Vec<f64>>,
    pub iteration: usize,
}

/// Factorized overlapping decomposition of an assembled system.
pub struct SchwarzSolver<'a> {
    pub system: &'a AssembledSystem,
    pub mesh: &'a StructuredMesh,
    pub decomposition: &'a Decomposition,
    pub(crate) locals: Vec<LocalProblem>,
    /// Owning strip of every unknown.
    pub(crate) owner: Vec<usize>,
}

impl<'a> SchwarzSolver<'a> {
    /// Factorizes every strip problem.
    pub fn new(system: &'a AssembledSystem, mesh: &'a StructuredMesh, decomposition: &'a Decomposition) -> Result<Self> {
        if system.dim() != mesh.unknown_count() {
            return Err(Error::DimensionMismatch {
                expected: mesh.unknown_count(),
                got: system.dim(),
            });
        }
        if decomposition.nx != mesh.nx || decomposition.ny != mesh.ny {
            return Err(Error::domain("decomposition", "built for a different mesh"));
        }
        let locals = (0..decomposition.strips.len())
            .into_par_iter()
            .map(|s| LocalProblem::new(system, mesh, decomposition, s))
            .collect::<Result<Vec<_>>>()?;
        let node_owner = decomposition.node_owner(mesh);
        let owner = (0..system.dim()).map(|u| node_owner[u / 2]).collect();
        Ok(Self {
            system,
            mesh,
            decomposition,
            locals,
            owner,
        })
    }

    pub fn dim(&self) -> usize {
        self.system.dim()
    }

    /// Exact discrete solution: zero for a zero load, otherwise a global direct solve.
    pub fn reference_solution(&self) -> Result<Vec<f64>> {
        if self.system.rhs.iter().all(|&b| b == 0.0) {
            Ok(vec![0.0; self.dim()])
        } else {
            crate::fem::direct_solve(self.system)
        }
    }

    /// Starting state where every strip holds the same global field.
    pub fn initial_state(&self, initial: &[f64]) -> SchwarzState {
        let local = self
            .decomposition
            .strips
            .iter()
            .map(|strip| {
                (0..self.dim())
                    .map(|u| if strip.contains_column(self.mesh.grid_position(u / 2).0) { initial[u] } else { 0.0 })
                    .collect()
            })
            .collect();
        SchwarzState { local, iteration: 0 }
    }

    /// Glues strip iterates with the disjoint partition of unity.
    pub fn glue(&self, state: &SchwarzState) -> Vec<f64> {
        (0..self.dim()).map(|u| state.local[self.owner[u]][u]).collect()
    }

    /// One parallel step: every strip solves with interface data from the
    /// previous iterate of the strip that owns the interface line.
    pub fn step(&self, state: &SchwarzState) -> SchwarzState {
        let glued = self.glue(state);
        let local = self
            .locals
            .par_iter()
            .map(|lp| {
                let interior = lp.solve_with_data(&self.system.rhs, &glued);
                let mut full = vec![0.0; self.dim()];
                for &c in &lp.interface {
                    full[c] = glued[c];
                }
                for (&g, v) in lp.interior.iter().zip(interior) {
                    full[g] = v;
                }
                full
            })
            .collect();
        SchwarzState {
            local,
            iteration: state.iteration + 1,
        }
    }

    /// Error norms and dominant interface mode of `u - reference`.
    pub fn measure(&self, u: &[f64], reference: &[f64]) -> Result<(f64, f64, Option<usize>)> {
        let mut err_max = 0.0f64;
        let mut sum = 0.0;
        for n in 0..self.mesh.node_count() {
            let ex = u[2 * n] - reference[2 * n];
            let ey = u[2 * n + 1] - reference[2 * n + 1];
            let m2 = ex * ex + ey * ey;
            err_max = err_max.max(m2.sqrt());
            sum += m2;
        }
        let err_l2 = (sum * self.mesh.hx() * self.mesh.hy()).sqrt();
        let column = self.mesh.column(self.decomposition.midline_column);
        let tx: Vec<f64> = column.iter().map(|&n| u[2 * n] - reference[2 * n]).collect();
        let ty: Vec<f64> = column.iter().map(|&n| u[2 * n + 1] - reference[2 * n + 1]).collect();
        let amplitudes = vector_mode_amplitudes(&tx, &ty, self.mesh.ny)?;
        Ok((err_max, err_l2, dominant_mode(&amplitudes)))
    }

    /// Runs `n_iter` parallel Schwarz steps from `initial` and records the
    /// glued error after every step.
    pub fn iterate(&self, initial: &[f64], n_iter: usize) -> Result<(Vec<f64>, ErrorHistory)> {
        if initial.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: initial.len(),
            });
        }
        let reference = self.reference_solution()?;
        let mut history = ErrorHistory::default();
        let mut state = self.initial_state(initial);
        let mut glued = self.glue(&state);
        let record = |u: &[f64], history: &mut ErrorHistory| -> Result<()> {
            let (m, l2, j) = self.measure(u, &reference)?;
            history.err_max.push(m);
            history.err_l2.push(l2);
            history.dominant_mode.push(j);
            Ok(())
        };
        record(&glued, &mut history)?;
        for _ in 0..n_iter {
            state = self.step(&state);
            glued = self.glue(&state);
            record(&glued, &mut history)?;
        }
        Ok((glued, history))
    }

    /// Restricted additive Schwarz preconditioner
    /// `M^{-1} r = sum_i Rtilde_i^T A_i^{-1} R_i r`; clamped unknowns pass through.
    pub fn ras_apply(&self, r: &[f64]) -> Vec<f64> {
        let corrections: Vec<Vec<f64>> = self.locals.par_iter().map(|lp| lp.solve_restricted(r)).collect();
        let mut z: Vec<f64> = r
            .iter()
            .zip(&self.system.dirichlet_mask)
            .map(|(&v, &m)| if m { v } else { 0.0 })
            .collect();
        for (s, (lp, corr)) in self.locals.iter().zip(corrections).enumerate() {
            for (&g, v) in lp.interior.iter().zip(corr) {
                if self.owner[g] == s {
                    z[g] = v;
                }
            }
        }
        z
    }

    /// `M^{-1} A x`.
    pub fn preconditioned_apply(&self, x: &[f64]) -> Vec<f64> {
        self.ras_apply(&self.system.matrix.matvec(x))
    }

    /// Error propagation `E x = x - M^{-1} A x` of the stationary iteration.
    pub fn error_propagation(&self, x: &[f64]) -> Vec<f64> {
        let y = self.preconditioned_apply(x);
        x.iter().zip(y).map(|(a, b)| a - b).collect()
    }

    /// Seeded initial guess: uniform in `[-1, 1]` on free unknowns, zero on
    /// clamped ones, scaled so the max nodal modulus equals `max_modulus`.
    pub fn seeded_initial_guess(&self, seed: u64, max_modulus: f64) -> Vec<f64> {
        seeded_initial_guess(self.system, seed, max_modulus)
    }
}

/// Same as [`SchwarzSolver::seeded_initial_guess`] without a factorization.
pub fn seeded_initial_guess(system: &AssembledSystem, seed: u64, max_modulus: f64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut u: Vec<f64> = system
        .dirichlet_mask
        .iter()
        .map(|&m| {
            // draw for every unknown so the stream does not depend on the mask
            let v: f64 = rng.random_range(-1.0..=1.0);
            if m {
                0.0
            } else {
                v
            }
        })
        .collect();
    let current = u.chunks(2).map(|p| p[0].hypot(p[1])).fold(0.0, f64::max);
    if current > 0.0 {
        let s = max_modulus / current;
        u.iter_mut().for_each(|v| *v *= s);
    }
    u
}
