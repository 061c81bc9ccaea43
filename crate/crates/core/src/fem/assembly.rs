//! P1 Galerkin discretization of `-mu Lap u - (lambda + mu) grad div u - rho omega^2 u = f`.
//!
//! The weak form is the gradient form
//! `a(u, v) = int mu grad u : grad v + (lambda + mu) div u div v - rho omega^2 u . v`,
//! which under full Dirichlet clamping is equivalent to the symmetric-strain
//! form. Unknowns are interleaved: displacement component `c` of node `n`
//! lives at index `2 n + c`.

use super::direct::DirectSolver;
use super::mesh::StructuredMesh;
use super::quadrature::{map_point, DEGREE4};
use super::sparse::CsrMatrix;
use crate::analysis::ElasticMedium;
use crate::error::{Error, Result};
use rayon::prelude::*;
use std::f64::consts::PI;

/// Dirichlet-eliminated linear system on a mesh.
#[derive(Debug, Clone)]
pub struct AssembledSystem {
    pub matrix: CsrMatrix,
    pub rhs: Vec<f64>,
    /// `true` for clamped unknowns; their rows and columns are identity.
    pub dirichlet_mask: Vec<bool>,
}

impl AssembledSystem {
    pub fn dim(&self) -> usize {
        self.rhs.len()
    }

    /// Indices of the unknowns that are not clamped.
    pub fn free_unknowns(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.dirichlet_mask[i]).collect()
    }
}

/// Shape-function gradients and area of a triangle.
fn p1_gradients(v: &[[f64; 2]; 3]) -> ([[f64; 2]; 3], f64) {
    let twice_area = (v[1][0] - v[0][0]) * (v[2][1] - v[0][1]) - (v[2][0] - v[0][0]) * (v[1][1] - v[0][1]);
    let s = 1.0 / twice_area;
    let g = [
        [(v[1][1] - v[2][1]) * s, (v[2][0] - v[1][0]) * s],
        [(v[2][1] - v[0][1]) * s, (v[0][0] - v[2][0]) * s],
        [(v[0][1] - v[1][1]) * s, (v[1][0] - v[0][0]) * s],
    ];
    (g, 0.5 * twice_area)
}

fn vertices(mesh: &StructuredMesh, t: usize) -> [[f64; 2]; 3] {
    mesh.triangles[t].map(|n| mesh.nodes[n])
}

/// 6x6 element matrix, local index `2 a + c` for vertex `a`, component `c`.
fn element_matrix(v: &[[f64; 2]; 3], mu: f64, lambda_plus_mu: f64, mass_coef: f64) -> [[f64; 6]; 6] {
    let (g, area) = p1_gradients(v);
    let mut k = [[0.0; 6]; 6];
    for a in 0..3 {
        for b in 0..3 {
            let grad_dot = g[a][0] * g[b][0] + g[a][1] * g[b][1];
            let mass = area / 12.0 * if a == b { 2.0 } else { 1.0 };
            for c in 0..2 {
                for d in 0..2 {
                    let mut entry = lambda_plus_mu * g[a][c] * g[b][d] * area;
                    if c == d {
                        entry += mu * grad_dot * area - mass_coef * mass;
                    }
                    k[2 * a + c][2 * b + d] = entry;
                }
            }
        }
    }
    k
}

fn check_omega(omega: f64) -> Result<()> {
    if omega >= 0.0 && omega.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("omega", format!("must be finite and nonnegative, got {omega}")))
    }
}

/// Global operator before boundary conditions are imposed.
///
/// Element matrices are computed in parallel and summed in element order, so
/// the result is bitwise reproducible.
pub fn assemble_operator(mesh: &StructuredMesh, medium: &ElasticMedium, omega: f64) -> Result<CsrMatrix> {
    check_omega(omega)?;
    let mu = medium.lame_mu();
    let lambda_plus_mu = medium.lame_lambda() + mu;
    let mass_coef = medium.rho() * omega * omega;
    let locals: Vec<[[f64; 6]; 6]> = (0..mesh.triangles.len())
        .into_par_iter()
        .map(|t| element_matrix(&vertices(mesh, t), mu, lambda_plus_mu, mass_coef))
        .collect();
    let mut triplets = Vec::with_capacity(36 * locals.len());
    for (tri, local) in mesh.triangles.iter().zip(&locals) {
        for (r, row) in local.iter().enumerate() {
            let gr = 2 * tri[r / 2] + r % 2;
            for (c, &value) in row.iter().enumerate() {
                triplets.push((gr, 2 * tri[c / 2] + c % 2, value));
            }
        }
    }
    Ok(CsrMatrix::from_triplets(mesh.unknown_count(), &triplets))
}

/// Consistent load vector `int f . phi` using a degree-4 rule per triangle.
pub fn load_vector<F>(mesh: &StructuredMesh, source: F) -> Vec<f64>
where
    F: Fn(f64, f64) -> [f64; 2] + Sync,
{
    let locals: Vec<[f64; 6]> = (0..mesh.triangles.len())
        .into_par_iter()
        .map(|t| {
            let v = vertices(mesh, t);
            let area = mesh.signed_area(t);
            let mut local = [0.0; 6];
            for (bary, w) in DEGREE4.iter() {
                let [x, y] = map_point(&v, bary);
                let f = source(x, y);
                for a in 0..3 {
                    for c in 0..2 {
                        local[2 * a + c] += w * area * f[c] * bary[a];
                    }
                }
            }
            local
        })
        .collect();
    let mut rhs = vec![0.0; mesh.unknown_count()];
    for (tri, local) in mesh.triangles.iter().zip(&locals) {
        for (l, &value) in local.iter().enumerate() {
            rhs[2 * tri[l / 2] + l % 2] += value;
        }
    }
    rhs
}

/// Both components of every outer-boundary node are clamped.
pub fn boundary_mask(mesh: &StructuredMesh) -> Vec<bool> {
    (0..mesh.unknown_count()).map(|i| mesh.is_boundary(i / 2)).collect()
}

/// Homogeneous Dirichlet elimination: masked rows and columns become identity, rhs zero.
pub fn apply_dirichlet(matrix: &CsrMatrix, rhs: &[f64], mask: &[bool]) -> AssembledSystem {
    let n = matrix.dim();
    let mut triplets = Vec::with_capacity(matrix.nnz());
    for i in 0..n {
        if mask[i] {
            triplets.push((i, i, 1.0));
            continue;
        }
        let (cols, vals) = matrix.row(i);
        for (&j, &v) in cols.iter().zip(vals) {
            if !mask[j] {
                triplets.push((i, j, v));
            }
        }
    }
    let rhs = rhs.iter().zip(mask).map(|(&b, &m)| if m { 0.0 } else { b }).collect();
    AssembledSystem {
        matrix: CsrMatrix::from_triplets(n, &triplets),
        rhs,
        dirichlet_mask: mask.to_vec(),
    }
}

/// Clamped system with zero load, the setting of the error-mode experiments.
pub fn assemble(mesh: &StructuredMesh, medium: &ElasticMedium, omega: f64) -> Result<AssembledSystem> {
    let operator = assemble_operator(mesh, medium, omega)?;
    let zero = vec![0.0; mesh.unknown_count()];
    Ok(apply_dirichlet(&operator, &zero, &boundary_mask(mesh)))
}

/// Clamped system with body force `source`.
pub fn assemble_with_load<F>(mesh: &StructuredMesh, medium: &ElasticMedium, omega: f64, source: F) -> Result<AssembledSystem>
where
    F: Fn(f64, f64) -> [f64; 2] + Sync,
{
    let operator = assemble_operator(mesh, medium, omega)?;
    let rhs = load_vector(mesh, source);
    Ok(apply_dirichlet(&operator, &rhs, &boundary_mask(mesh)))
}

/// Factorizes and solves once.
pub fn direct_solve(system: &AssembledSystem) -> Result<Vec<f64>> {
    Ok(DirectSolver::factorize(&system.matrix)?.solve(&system.rhs))
}

/// Nodal interpolant of a vector field.
pub fn interpolate<F: Fn(f64, f64) -> [f64; 2]>(mesh: &StructuredMesh, field: F) -> Vec<f64> {
    mesh.nodes.iter().flat_map(|&[x, y]| field(x, y)).collect()
}

/// `||u_h - u||_{L2}` with the discrete field reconstructed piecewise linearly.
pub fn l2_error<F: Fn(f64, f64) -> [f64; 2]>(mesh: &StructuredMesh, u: &[f64], exact: F) -> f64 {
    let mut total = 0.0;
    for (t, tri) in mesh.triangles.iter().enumerate() {
        let v = vertices(mesh, t);
        let area = mesh.signed_area(t);
        for (bary, w) in DEGREE4.iter() {
            let [x, y] = map_point(&v, bary);
            let e = exact(x, y);
            for c in 0..2 {
                let uh: f64 = (0..3).map(|a| bary[a] * u[2 * tri[a] + c]).sum();
                total += w * area * (uh - e[c]).powi(2);
            }
        }
    }
    total.sqrt()
}

/// `||u||_{L2}` of a discrete field.
pub fn l2_norm(mesh: &StructuredMesh, u: &[f64]) -> f64 {
    l2_error(mesh, u, |_, _| [0.0, 0.0])
}

/// `v^T A w`.
pub fn bilinear(matrix: &CsrMatrix, v: &[f64], w: &[f64]) -> f64 {
    v.iter().zip(matrix.matvec(w)).map(|(a, b)| a * b).sum()
}

/// Smooth clamped solution on the unit square used to verify the discretization.
pub mod manufactured {
    use super::*;

    /// `u = (sin(pi x) sin(pi y), 0)`.
    pub fn exact(x: f64, y: f64) -> [f64; 2] {
        [(PI * x).sin() * (PI * y).sin(), 0.0]
    }

    /// Body force reproducing [`exact`] for the given medium and frequency.
    pub fn source(medium: &ElasticMedium, omega: f64) -> impl Fn(f64, f64) -> [f64; 2] + Sync {
        let (lambda, mu, rho) = (medium.lame_lambda(), medium.lame_mu(), medium.rho());
        let pi2 = PI * PI;
        move |x, y| {
            let ss = (PI * x).sin() * (PI * y).sin();
            let cc = (PI * x).cos() * (PI * y).cos();
            [((lambda + 3.0 * mu) * pi2 - omega * omega * rho) * ss, -(lambda + mu) * pi2 * cc]
        }
    }

    /// Continuous `a(u, u)` for the exact field on the unit square.
    pub fn energy(medium: &ElasticMedium, omega: f64) -> f64 {
        let pi2 = PI * PI;
        medium.lame_mu() * pi2 / 2.0 + (medium.lame_lambda() + medium.lame_mu()) * pi2 / 4.0
            - medium.rho() * omega * omega / 4.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fem::mesh::build_mesh;

    fn medium() -> ElasticMedium {
        ElasticMedium::from_wave_speeds(1.0, 1.0, 0.5).unwrap()
    }

    #[test]
    fn rigid_translation_in_kernel_of_static_operator() {
        let mesh = build_mesh((0.0, 1.0), (0.0, 1.0), 3, 3).unwrap();
        let a = assemble_operator(&mesh, &medium(), 0.0).unwrap();
        let shift = interpolate(&mesh, |_, _| [1.0, -2.0]);
        assert!(a.matvec(&shift).iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn mass_term_integrates_constant() {
        // with zero stiffness contribution, 1^T M 1 per component equals the area
        let mesh = build_mesh((0.0, 2.0), (0.0, 1.0), 4, 3).unwrap();
        let a0 = assemble_operator(&mesh, &medium(), 0.0).unwrap();
        let a1 = assemble_operator(&mesh, &medium(), 1.0).unwrap();
        let ones = interpolate(&mesh, |_, _| [1.0, 0.0]);
        let m = bilinear(&a0, &ones, &ones) - bilinear(&a1, &ones, &ones);
        assert!((m - 2.0).abs() < 1e-12);
    }

    #[test]
    fn clamped_unit_cell_is_identity() {
        let mesh = build_mesh((0.0, 1.0), (0.0, 1.0), 1, 1).unwrap();
        let sys = assemble(&mesh, &medium(), 0.0).unwrap();
        assert_eq!(sys.matrix, CsrMatrix::identity(8));
        assert_eq!(direct_solve(&sys).unwrap(), vec![0.0; 8]);
    }
}
