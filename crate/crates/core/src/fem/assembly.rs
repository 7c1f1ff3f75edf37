use super::mesh::TriMesh;
use super::sparse::{SparseSym, SymPattern};
use crate::error::{Error, Result};
use std::sync::Arc;

/// Stiffness, mass and boundary mass of the P1 space on one mesh.
#[derive(Debug, Clone)]
pub struct RobinMatrices {
    pub k: SparseSym,
    pub m: SparseSym,
    pub b: SparseSym,
    pub alpha: f64,
}

impl RobinMatrices {
    pub fn n(&self) -> usize {
        self.k.n()
    }

    /// `K + alpha B - sigma M`.
    pub fn pencil(&self, sigma: f64) -> SparseSym {
        SparseSym::combine(&[(1.0, &self.k), (self.alpha, &self.b), (-sigma, &self.m)])
    }

    /// `(x^T K x + alpha x^T B x) / x^T M x`.
    pub fn rayleigh_quotient(&self, x: &[f64]) -> f64 {
        (self.k.bilinear(x, x) + self.alpha * self.b.bilinear(x, x)) / self.m.bilinear(x, x)
    }
}

/// Assembles the P1 matrices of the Robin form on `mesh`.
pub fn assemble(mesh: &TriMesh, alpha: f64) -> Result<RobinMatrices> {
    let n = mesh.points.len();
    let edges = mesh
        .triangles
        .iter()
        .flat_map(|t| [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])]);
    let pattern = Arc::new(SymPattern::from_edges(n, edges));
    let mut k = SparseSym::zeros(pattern.clone());
    let mut m = SparseSym::zeros(pattern.clone());
    let mut b = SparseSym::zeros(pattern);
    let scale = mesh.h * mesh.h;
    for (t, tri) in mesh.triangles.iter().enumerate() {
        let area = mesh.triangle_area(t);
        if area.is_nan() || area <= 1e-14 * scale {
            return Err(Error::Numerical(format!("degenerate triangle {t} with area {area}")));
        }
        let p = tri.map(|i| mesh.points[i]);
        // e[i] is the edge opposite vertex i
        let e: [[f64; 2]; 3] = std::array::from_fn(|i| {
            let (a, c) = (p[(i + 1) % 3], p[(i + 2) % 3]);
            [c[0] - a[0], c[1] - a[1]]
        });
        for i in 0..3 {
            for j in 0..3 {
                let kij = (e[i][0] * e[j][0] + e[i][1] * e[j][1]) / (4.0 * area);
                let mij = area / 12.0 * if i == j { 2.0 } else { 1.0 };
                k.add(tri[i], tri[j], kij);
                m.add(tri[i], tri[j], mij);
            }
        }
    }
    for &[a, c] in &mesh.boundary_edges {
        let (p, q) = (mesh.points[a], mesh.points[c]);
        let len = (q[0] - p[0]).hypot(q[1] - p[1]);
        let (d, o) = (len / 3.0, len / 6.0);
        b.add(a, a, d);
        b.add(c, c, d);
        b.add(a, c, o);
        b.add(c, a, o);
    }
    Ok(RobinMatrices { k, m, b, alpha })
}
