//! Triangle quadrature in barycentric coordinates.

/// Symmetric 6-point rule, exact for polynomials of degree 4.
/// Weights sum to one and multiply the triangle area.
pub const DEGREE4: [([f64; 3], f64); 6] = {
    const A: f64 = 0.108_103_018_168_070;
    const B: f64 = 0.445_948_490_915_965;
    const WA: f64 = 0.223_381_589_678_011;
    const C: f64 = 0.816_847_572_980_459;
    const D: f64 = 0.091_576_213_509_771;
    const WC: f64 = 0.109_951_743_655_322;
    [
        ([A, B, B], WA),
        ([B, A, B], WA),
        ([B, B, A], WA),
        ([C, D, D], WC),
        ([D, C, D], WC),
        ([D, D, C], WC),
    ]
};

/// Physical coordinates of a barycentric point.
pub fn map_point(vertices: &[[f64; 2]; 3], bary: &[f64; 3]) -> [f64; 2] {
    let mut p = [0.0; 2];
    for (v, &b) in vertices.iter().zip(bary) {
        p[0] += b * v[0];
        p[1] += b * v[1];
    }
    p
}
