//! Classical Schwarz domain decomposition for the time-harmonic Navier
//! (elastic wave) equations.
//!
//! * [`analysis`] evaluates the Fourier-mode convergence factor in closed form.
//! * [`modesim`] realizes the same interface recurrence numerically, as an oracle.
//! * [`fem`] discretizes the equations with P1 triangles on a rectangle.
//! * [`schwarz`] runs the two-subdomain iteration, the RAS preconditioner,
//!   preconditioned GMRES and the spectrum of the preconditioned operator.
//! * [`cli`] wires everything into reproducible experiments that emit CSV/JSON.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod fem;
pub mod mat2;
pub mod modesim;
pub mod schwarz;

pub use analysis::{ElasticMedium, Zone};
pub use error::{Error, Result};
