//! Complex 2x2 matrices, the only dense algebra the mode analysis needs.

use num_complex::Complex64;
use std::ops::{Index, IndexMut, Mul};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major complex 2x2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[ONE, ZERO], [ZERO, ONE]]);

    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn det(&self) -> Complex64 {
        self[(0, 0)] * self[(1, 1)] - self[(0, 1)] * self[(1, 0)]
    }

    pub fn trace(&self) -> Complex64 {
        self[(0, 0)] + self[(1, 1)]
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn adjugate(&self) -> Mat2 {
        Mat2::new(self[(1, 1)], -self[(0, 1)], -self[(1, 0)], self[(0, 0)])
    }

    /// Inverse by the adjugate formula; `None` when `|det|` falls below `guard`.
    pub fn inverse(&self, guard: f64) -> Option<Mat2> {
        let det = self.det();
        if !(det.norm() > guard) {
            return None;
        }
        let inv_det = det.inv();
        Some(self.adjugate().scale(inv_det))
    }

    pub fn scale(&self, s: Complex64) -> Mat2 {
        let mut out = *self;
        out.0.iter_mut().flatten().for_each(|z| *z *= s);
        out
    }

    pub fn sub(&self, other: &Mat2) -> Mat2 {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                out[(i, j)] -= other[(i, j)];
            }
        }
        out
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self[(0, 0)] * v[0] + self[(0, 1)] * v[1],
            self[(1, 0)] * v[0] + self[(1, 1)] * v[1],
        ]
    }

    /// Both eigenvalues from the characteristic polynomial, larger modulus first.
    pub fn eigenvalues(&self) -> (Complex64, Complex64) {
        let half_tr = self.trace() * 0.5;
        // ((a - d)/2)^2 + bc equals half_tr^2 - det without cancellation near a double root
        let half_gap = (self[(0, 0)] - self[(1, 1)]) * 0.5;
        let disc = (half_gap * half_gap + self[(0, 1)] * self[(1, 0)]).sqrt();
        let (a, b) = (half_tr + disc, half_tr - disc);
        // The smaller root is recovered from the product to avoid cancellation.
        let (big, small) = if a.norm() >= b.norm() { (a, b) } else { (b, a) };
        if big.norm() > 0.0 {
            (big, self.det() / big)
        } else {
            (big, small)
        }
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues().0.norm()
    }

    /// One-norm condition number estimate (exact for 2x2).
    pub fn condition(&self) -> f64 {
        let norm1 = |m: &Mat2| {
            (0..2)
                .map(|j| m[(0, j)].norm() + m[(1, j)].norm())
                .fold(0.0, f64::max)
        };
        let det = self.det().norm();
        if det == 0.0 {
            return f64::INFINITY;
        }
        norm1(self) * norm1(&self.adjugate()) / det
    }
}

impl Index<(usize, usize)> for Mat2 {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Mat2 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.0[i][j]
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let mut out = Mat2([[ZERO; 2]; 2]);
        for i in 0..2 {
            for j in 0..2 {
                out[(i, j)] = self[(i, 0)] * rhs[(0, j)] + self[(i, 1)] * rhs[(1, j)];
            }
        }
        out
    }
}
