//! P1 finite elements for the time-harmonic Navier equations on a rectangle.

pub mod assembly;
pub mod direct;
pub mod export;
pub mod mesh;
pub mod modes;
pub mod quadrature;
pub mod sparse;

pub use assembly::{assemble, assemble_operator, assemble_with_load, direct_solve, AssembledSystem};
pub use direct::DirectSolver;
pub use mesh::{build_mesh, StructuredMesh};
pub use modes::{dominant_mode, interface_mode_amplitudes};
pub use sparse::CsrMatrix;
