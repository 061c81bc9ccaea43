use crate::error::{Error, Result};

/// Rectangle split into `nx * ny` cells, each cut along its
/// lower-left to upper-right diagonal into two triangles.
///
/// Nodes are numbered lexicographically with x running fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct StructuredMesh {
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub nx: usize,
    pub ny: usize,
    pub nodes: Vec<[f64; 2]>,
    pub triangles: Vec<[usize; 3]>,
}

/// Builds the structured triangulation of `x_range x y_range`.
pub fn build_mesh(x_range: (f64, f64), y_range: (f64, f64), nx: usize, ny: usize) -> Result<StructuredMesh> {
    if nx == 0 {
        return Err(Error::domain("nx", "need at least one cell"));
    }
    if ny == 0 {
        return Err(Error::domain("ny", "need at least one cell"));
    }
    if !(x_range.1 > x_range.0) || !x_range.0.is_finite() || !x_range.1.is_finite() {
        return Err(Error::domain("x_range", format!("degenerate range {x_range:?}")));
    }
    if !(y_range.1 > y_range.0) || !y_range.0.is_finite() || !y_range.1.is_finite() {
        return Err(Error::domain("y_range", format!("degenerate range {y_range:?}")));
    }
    let coord = |lo: f64, hi: f64, i: usize, n: usize| {
        if i == n {
            hi
        } else {
            lo + (hi - lo) * i as f64 / n as f64
        }
    };
    let mut nodes = Vec::with_capacity((nx + 1) * (ny + 1));
    for j in 0..=ny {
        let y = coord(y_range.0, y_range.1, j, ny);
        for i in 0..=nx {
            nodes.push([coord(x_range.0, x_range.1, i, nx), y]);
        }
    }
    let mut triangles = Vec::with_capacity(2 * nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            let ll = j * (nx + 1) + i;
            let lr = ll + 1;
            let ur = lr + nx + 1;
            let ul = ll + nx + 1;
            triangles.push([ll, lr, ur]);
            triangles.push([ll, ur, ul]);
        }
    }
    Ok(StructuredMesh {
        x_range,
        y_range,
        nx,
        ny,
        nodes,
        triangles,
    })
}

impl StructuredMesh {
    pub fn hx(&self) -> f64 {
        (self.x_range.1 - self.x_range.0) / self.nx as f64
    }

    pub fn hy(&self) -> f64 {
        (self.y_range.1 - self.y_range.0) / self.ny as f64
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Two displacement unknowns per node.
    pub fn unknown_count(&self) -> usize {
        2 * self.nodes.len()
    }

    pub fn node_index(&self, i: usize, j: usize) -> usize {
        j * (self.nx + 1) + i
    }

    /// Grid coordinates `(i, j)` of a node.
    pub fn grid_position(&self, node: usize) -> (usize, usize) {
        (node % (self.nx + 1), node / (self.nx + 1))
    }

    pub fn is_boundary(&self, node: usize) -> bool {
        let (i, j) = self.grid_position(node);
        i == 0 || j == 0 || i == self.nx || j == self.ny
    }

    /// Nodes of grid column `i`, ordered by increasing y.
    pub fn column(&self, i: usize) -> Vec<usize> {
        (0..=self.ny).map(|j| self.node_index(i, j)).collect()
    }

    /// Signed area of a triangle (positive for counterclockwise ordering).
    pub fn signed_area(&self, t: usize) -> f64 {
        let [a, b, c] = self.triangles[t].map(|n| self.nodes[n]);
        0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]))
    }

    pub fn domain_area(&self) -> f64 {
        (self.x_range.1 - self.x_range.0) * (self.y_range.1 - self.y_range.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_mesh_counts() {
        let mesh = build_mesh((-1.0, 1.0), (0.0, 1.0), 80, 40).unwrap();
        assert_eq!(mesh.node_count(), 3321);
        assert_eq!(mesh.triangles.len(), 6400);
        assert_eq!(mesh.unknown_count(), 6642);
        assert_eq!(mesh.hx(), 1.0 / 40.0);
    }

    #[test]
    fn unit_cell() {
        let mesh = build_mesh((0.0, 1.0), (0.0, 1.0), 1, 1).unwrap();
        assert_eq!(mesh.node_count(), 4);
        assert_eq!(mesh.triangles.len(), 2);
        assert!((0..4).all(|n| mesh.is_boundary(n)));
    }

    #[test]
    fn two_squares() {
        let mesh = build_mesh((0.0, 2.0), (0.0, 1.0), 2, 1).unwrap();
        assert_eq!(mesh.hx(), 1.0);
        assert_eq!(mesh.hy(), 1.0);
        assert_eq!(mesh.triangles.len(), 4);
        for t in 0..4 {
            assert_eq!(mesh.signed_area(t), 0.5);
        }
    }

    #[test]
    fn areas_positive_and_sum_to_domain() {
        let mesh = build_mesh((-1.0, 1.0), (0.0, 1.0), 13, 7).unwrap();
        let expected = mesh.hx() * mesh.hy() / 2.0;
        let mut total = 0.0;
        for t in 0..mesh.triangles.len() {
            let a = mesh.signed_area(t);
            assert!((a - expected).abs() < 1e-15);
            total += a;
        }
        assert!((total - mesh.domain_area()).abs() < 1e-12);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(build_mesh((0.0, 0.0), (0.0, 1.0), 2, 2).is_err());
        assert!(build_mesh((0.0, 1.0), (1.0, 0.0), 2, 2).is_err());
        assert!(build_mesh((0.0, 1.0), (0.0, 1.0), 0, 2).is_err());
    }
}
