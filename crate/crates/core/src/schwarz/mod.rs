//! Two-subdomain overlapping Schwarz methods on the finite-element system.
//!
//! The parallel Schwarz iteration, the restricted additive Schwarz (RAS)
//! preconditioner, preconditioned GMRES and the spectrum of `M^{-1} A` all
//! share one set of subdomain factorizations held by [`SchwarzSolver`].
//! Because ownership is split at the middle line and both interface lines lie
//! in the other subdomain's owned region, the stationary RAS iteration
//! reproduces the glued parallel Schwarz iterates exactly.

pub mod decomposition;
pub mod krylov;
pub mod solver;
pub mod spectrum;

pub use decomposition::{decompose, Decomposition, Strip};
pub use krylov::{gmres, stationary, GmresOptions, SolveOutcome};
pub use solver::{seeded_initial_guess, ErrorHistory, SchwarzSolver, SchwarzState};
pub use spectrum::{spectrum, SPECTRUM_BUDGET};

use crate::error::Result;

impl SchwarzSolver<'_> {
    /// GMRES on the RAS-preconditioned system from a zero start.
    pub fn gmres(&self, rhs: &[f64], opts: GmresOptions) -> Result<SolveOutcome> {
        gmres(
            |x| self.system.matrix.matvec(x),
            |r| self.ras_apply(r),
            rhs,
            &vec![0.0; self.dim()],
            opts,
        )
    }

    /// Stationary RAS iteration from `x0`.
    pub fn stationary_ras(&self, rhs: &[f64], x0: &[f64], opts: GmresOptions) -> Result<SolveOutcome> {
        stationary(|x| self.system.matrix.matvec(x), |r| self.ras_apply(r), rhs, x0, opts)
    }
}
