use crate::error::{Error, Result};
use crate::fem::StructuredMesh;

/// A subdomain made of whole grid columns `first_column..=last_column`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Strip {
    pub first_column: usize,
    pub last_column: usize,
    /// Columns this subdomain owns in the partition of unity.
    pub owned: (usize, usize),
}

impl Strip {
    pub fn contains_column(&self, i: usize) -> bool {
        (self.first_column..=self.last_column).contains(&i)
    }

    pub fn owns_column(&self, i: usize) -> bool {
        (self.owned.0..=self.owned.1).contains(&i)
    }

    /// Columns where the subdomain takes Dirichlet data from its neighbour.
    pub fn interface_columns(&self, nx: usize) -> Vec<usize> {
        let mut cols = Vec::new();
        if self.first_column > 0 {
            cols.push(self.first_column);
        }
        if self.last_column < nx {
            cols.push(self.last_column);
        }
        cols
    }
}

/// Overlapping split of a structured mesh into vertical strips.
///
/// The two-strip split places the interfaces at `x_mid +- (overlap_cells/2) h`
/// around the middle grid line and assigns ownership disjointly: columns up
/// to and including the middle line belong to the left strip.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub nx: usize,
    pub ny: usize,
    pub overlap_cells: usize,
    pub strips: Vec<Strip>,
    /// Grid column of the middle line, where interface traces are sampled.
    pub midline_column: usize,
}

/// Two-strip decomposition with an overlap of `overlap_cells` mesh cells.
pub fn decompose(mesh: &StructuredMesh, overlap_cells: usize) -> Result<Decomposition> {
    let nx = mesh.nx;
    if overlap_cells < 2 || !overlap_cells.is_multiple_of(2) {
        return Err(Error::domain(
            "overlap_cells",
            format!("must be even and at least 2 so the split line is a mesh line, got {overlap_cells}"),
        ));
    }
    if !nx.is_multiple_of(2) {
        return Err(Error::domain("nx", format!("must be even to split at the middle line, got {nx}")));
    }
    if overlap_cells >= nx {
        return Err(Error::domain(
            "overlap_cells",
            format!("{overlap_cells} cells leave no room outside the overlap on an {nx}-cell mesh"),
        ));
    }
    let mid = nx / 2;
    let half = overlap_cells / 2;
    let left = Strip {
        first_column: 0,
        last_column: mid + half,
        owned: (0, mid),
    };
    let right = Strip {
        first_column: mid - half,
        last_column: nx,
        owned: (mid + 1, nx),
    };
    Ok(Decomposition {
        nx,
        ny: mesh.ny,
        overlap_cells,
        strips: vec![left, right],
        midline_column: mid,
    })
}

impl Decomposition {
    /// Degenerate decomposition with one subdomain covering the whole mesh.
    pub fn single(mesh: &StructuredMesh) -> Self {
        Self {
            nx: mesh.nx,
            ny: mesh.ny,
            overlap_cells: 0,
            strips: vec![Strip {
                first_column: 0,
                last_column: mesh.nx,
                owned: (0, mesh.nx),
            }],
            midline_column: mesh.nx / 2,
        }
    }

    /// Physical overlap width `overlap_cells * h`.
    pub fn overlap_width(&self, mesh: &StructuredMesh) -> f64 {
        self.overlap_cells as f64 * mesh.hx()
    }

    /// Abscissae of the interface lines, left to right.
    pub fn interface_positions(&self, mesh: &StructuredMesh) -> Vec<f64> {
        let mut xs: Vec<f64> = self
            .strips
            .iter()
            .flat_map(|s| s.interface_columns(self.nx))
            .map(|i| mesh.nodes[mesh.node_index(i, 0)][0])
            .collect();
        xs.sort_by(f64::total_cmp);
        xs
    }

    /// Owning strip of every node.
    pub fn node_owner(&self, mesh: &StructuredMesh) -> Vec<usize> {
        (0..mesh.node_count())
            .map(|n| {
                let (i, _) = mesh.grid_position(n);
                self.strips.iter().position(|s| s.owns_column(i)).expect("ownership covers every column")
            })
            .collect()
    }

    /// Node indices of strip `s` (closure, including interface and outer boundary).
    pub fn strip_nodes(&self, mesh: &StructuredMesh, s: usize) -> Vec<usize> {
        let strip = self.strips[s];
        (0..mesh.node_count()).filter(|&n| strip.contains_column(mesh.grid_position(n).0)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fem::build_mesh;

    #[test]
    fn reference_split() {
        let mesh = build_mesh((-1.0, 1.0), (0.0, 1.0), 80, 40).unwrap();
        let d = decompose(&mesh, 4).unwrap();
        assert!((d.overlap_width(&mesh) - 0.1).abs() < 1e-15);
        let xs = d.interface_positions(&mesh);
        assert_eq!(xs.len(), 2);
        assert!((xs[0] + 0.05).abs() < 1e-15 && (xs[1] - 0.05).abs() < 1e-15);
    }

    #[test]
    fn ownership_is_a_partition() {
        let mesh = build_mesh((-1.0, 1.0), (0.0, 1.0), 10, 4).unwrap();
        let d = decompose(&mesh, 2).unwrap();
        let owner = d.node_owner(&mesh);
        for (n, &o) in owner.iter().enumerate() {
            assert!(d.strips[o].contains_column(mesh.grid_position(n).0));
        }
        let covered: usize = (0..2).map(|s| d.strip_nodes(&mesh, s).len()).sum();
        assert_eq!(covered, mesh.node_count() + 3 * 5);
    }

    #[test]
    fn rejects_bad_overlap() {
        let mesh = build_mesh((-1.0, 1.0), (0.0, 1.0), 8, 4).unwrap();
        assert!(decompose(&mesh, 3).is_err());
        assert!(decompose(&mesh, 0).is_err());
        assert!(decompose(&mesh, 8).is_err());
        assert!(decompose(&mesh, 16).is_err());
        assert!(decompose(&build_mesh((0.0, 1.0), (0.0, 1.0), 7, 4).unwrap(), 2).is_err());
    }
}
