//! Symmetric sparse matrices sharing one pattern, a geometric nested
//! dissection ordering, and an up-looking sparse `L D L^T` factorization
//! used both for inertia counts and for linear solves.

use crate::error::{Error, Result};
use crate::geometry::Point;
use std::sync::Arc;

/// Full (both triangles) compressed-column pattern with sorted row indices.
#[derive(Debug, Clone, PartialEq)]
pub struct SymPattern {
    n: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<usize>,
}

impl SymPattern {
    /// Pattern containing the diagonal and both orientations of every edge.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        for (a, b) in edges {
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut col_ptr = Vec::with_capacity(n + 1);
        let mut row_idx = Vec::new();
        col_ptr.push(0);
        for mut rows in adj {
            rows.sort_unstable();
            rows.dedup();
            row_idx.extend(rows);
            col_ptr.push(row_idx.len());
        }
        Self { n, col_ptr, row_idx }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.row_idx.len()
    }

    pub fn column(&self, j: usize) -> &[usize] {
        &self.row_idx[self.col_ptr[j]..self.col_ptr[j + 1]]
    }

    /// Storage position of entry `(i, j)`.
    pub fn position(&self, i: usize, j: usize) -> Option<usize> {
        let start = self.col_ptr[j];
        self.column(j).binary_search(&i).ok().map(|p| start + p)
    }
}

/// Symmetric matrix stored on a shared [`SymPattern`].
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSym {
    pattern: Arc<SymPattern>,
    values: Vec<f64>,
}

impl SparseSym {
    pub fn zeros(pattern: Arc<SymPattern>) -> Self {
        let values = vec![0.0; pattern.nnz()];
        Self { pattern, values }
    }

    pub fn pattern(&self) -> &Arc<SymPattern> {
        &self.pattern
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.pattern.n
    }

    /// Adds `v` to entry `(i, j)` only; callers add `(j, i)` themselves.
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let p = self
            .pattern
            .position(i, j)
            .unwrap_or_else(|| panic!("entry ({i}, {j}) outside pattern"));
        self.values[p] += v;
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.pattern.position(i, j).map_or(0.0, |p| self.values[p])
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n()];
        for (j, &xj) in x.iter().enumerate() {
            let (s, e) = (self.pattern.col_ptr[j], self.pattern.col_ptr[j + 1]);
            for p in s..e {
                y[self.pattern.row_idx[p]] += self.values[p] * xj;
            }
        }
        y
    }

    /// `x^T A y`.
    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> f64 {
        self.mul_vec(y).iter().zip(x).map(|(a, b)| a * b).sum()
    }

    /// `sum_k c_k A_k` over matrices sharing this pattern.
    pub fn combine(terms: &[(f64, &SparseSym)]) -> SparseSym {
        let first = terms.first().expect("at least one term").1;
        let mut values = vec![0.0; first.values.len()];
        for (c, m) in terms {
            assert!(Arc::ptr_eq(&m.pattern, &first.pattern), "patterns differ");
            for (v, a) in values.iter_mut().zip(&m.values) {
                *v += c * a;
            }
        }
        SparseSym {
            pattern: first.pattern.clone(),
            values,
        }
    }
}

const LEAF_SIZE: usize = 32;

/// Geometric nested dissection: nodes are split at the median of the longer
/// bounding-box axis, the nodes of the upper half adjacent to the lower half
/// form the separator, and separators are numbered after both halves.
/// Returns `perm` with `perm[k]` = original index of the `k`-th pivot.
pub fn nested_dissection(pattern: &SymPattern, points: &[Point]) -> Vec<usize> {
    assert_eq!(pattern.n, points.len());
    let mut perm = Vec::with_capacity(pattern.n);
    let mut side = vec![0u8; pattern.n];
    let mut nodes: Vec<usize> = (0..pattern.n).collect();
    dissect(pattern, points, &mut nodes, &mut side, &mut perm);
    perm
}

fn dissect(pattern: &SymPattern, points: &[Point], nodes: &mut [usize], side: &mut [u8], perm: &mut Vec<usize>) {
    if nodes.len() <= LEAF_SIZE {
        perm.extend_from_slice(nodes);
        return;
    }
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for &i in nodes.iter() {
        for a in 0..2 {
            lo[a] = lo[a].min(points[i][a]);
            hi[a] = hi[a].max(points[i][a]);
        }
    }
    let axis = if hi[0] - lo[0] >= hi[1] - lo[1] { 0 } else { 1 };
    nodes.sort_by(|&a, &b| points[a][axis].total_cmp(&points[b][axis]).then(a.cmp(&b)));
    let half = nodes.len() / 2;
    for &i in &nodes[..half] {
        side[i] = 1;
    }
    let (left, right) = nodes.split_at_mut(half);
    let mut rest = Vec::with_capacity(right.len());
    let mut sep = Vec::new();
    for &i in right.iter() {
        if pattern.column(i).iter().any(|&j| side[j] == 1) {
            sep.push(i);
        } else {
            rest.push(i);
        }
    }
    for &i in left.iter() {
        side[i] = 0;
    }
    dissect(pattern, points, left, side, perm);
    dissect(pattern, points, &mut rest, side, perm);
    perm.extend_from_slice(&sep);
}

/// Elimination tree and column counts of `P A P^T`, reused across
/// numeric factorizations of matrices on the same pattern.
#[derive(Debug, Clone)]
pub struct Symbolic {
    pattern: Arc<SymPattern>,
    perm: Vec<usize>,
    pinv: Vec<usize>,
    parent: Vec<Option<usize>>,
    l_ptr: Vec<usize>,
}

impl Symbolic {
    pub fn new(pattern: Arc<SymPattern>, perm: Vec<usize>) -> Self {
        let n = pattern.n;
        assert_eq!(perm.len(), n);
        let mut pinv = vec![usize::MAX; n];
        for (k, &i) in perm.iter().enumerate() {
            pinv[i] = k;
        }
        let mut parent = vec![None; n];
        let mut flag = vec![usize::MAX; n];
        let mut counts = vec![0usize; n];
        for k in 0..n {
            flag[k] = k;
            for &row in pattern.column(perm[k]) {
                let mut i = pinv[row];
                if i >= k {
                    continue;
                }
                while flag[i] != k {
                    if parent[i].is_none() {
                        parent[i] = Some(k);
                    }
                    counts[i] += 1;
                    flag[i] = k;
                    i = parent[i].expect("set above");
                }
            }
        }
        let mut l_ptr = Vec::with_capacity(n + 1);
        l_ptr.push(0);
        for c in counts {
            l_ptr.push(l_ptr.last().copied().unwrap_or(0) + c);
        }
        Self {
            pattern,
            perm,
            pinv,
            parent,
            l_ptr,
        }
    }

    pub fn n(&self) -> usize {
        self.pattern.n
    }

    /// Nonzeros of the strictly lower factor.
    pub fn factor_nnz(&self) -> usize {
        self.l_ptr[self.n()]
    }

    /// Numeric `L D L^T` of `P A P^T` without pivoting.
    pub fn factor(&self, a: &SparseSym, shift: f64) -> Result<Ldl> {
        assert!(Arc::ptr_eq(a.pattern(), &self.pattern), "pattern mismatch");
        let n = self.n();
        let nnz = self.factor_nnz();
        let mut l_idx = vec![0usize; nnz];
        let mut l_val = vec![0.0; nnz];
        let mut l_len = vec![0usize; n];
        let mut d = vec![0.0; n];
        let mut y = vec![0.0; n];
        let mut flag = vec![usize::MAX; n];
        let mut stack = vec![0usize; n];
        let col_ptr = &self.pattern.col_ptr;
        let row_idx = &self.pattern.row_idx;
        for k in 0..n {
            let mut top = n;
            flag[k] = k;
            let kk = self.perm[k];
            let range = col_ptr[kk]..col_ptr[kk + 1];
            for (&row, &value) in row_idx[range.clone()].iter().zip(&a.values[range]) {
                let mut i = self.pinv[row];
                if i > k {
                    continue;
                }
                y[i] += value;
                let mut len = 0;
                while flag[i] != k {
                    stack[len] = i;
                    len += 1;
                    flag[i] = k;
                    i = self.parent[i].expect("reachable rows have parents");
                }
                while len > 0 {
                    top -= 1;
                    len -= 1;
                    stack[top] = stack[len];
                }
            }
            d[k] = y[k];
            y[k] = 0.0;
            for &i in &stack[top..n] {
                let yi = y[i];
                y[i] = 0.0;
                let start = self.l_ptr[i];
                for p in start..start + l_len[i] {
                    y[l_idx[p]] -= l_val[p] * yi;
                }
                let lki = yi / d[i];
                d[k] -= lki * yi;
                let p = start + l_len[i];
                l_idx[p] = k;
                l_val[p] = lki;
                l_len[i] += 1;
            }
            if d[k] == 0.0 || !d[k].is_finite() {
                return Err(Error::Factorization { pivot: k, shift });
            }
        }
        Ok(Ldl {
            perm: self.perm.clone(),
            l_ptr: self.l_ptr.clone(),
            l_idx,
            l_val,
            d,
        })
    }
}

/// Numeric factor `P A P^T = L D L^T` with unit lower `L`.
#[derive(Debug, Clone)]
pub struct Ldl {
    perm: Vec<usize>,
    l_ptr: Vec<usize>,
    l_idx: Vec<usize>,
    l_val: Vec<f64>,
    d: Vec<f64>,
}

impl Ldl {
    pub fn diagonal(&self) -> &[f64] {
        &self.d
    }

    /// Number of negative pivots, equal to the number of negative
    /// eigenvalues of `A` by Sylvester's law of inertia.
    pub fn negative_count(&self) -> usize {
        self.d.iter().filter(|&&v| v < 0.0).count()
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.d.len();
        let mut x: Vec<f64> = self.perm.iter().map(|&i| b[i]).collect();
        for j in 0..n {
            let xj = x[j];
            for p in self.l_ptr[j]..self.l_ptr[j + 1] {
                x[self.l_idx[p]] -= self.l_val[p] * xj;
            }
        }
        for (v, dj) in x.iter_mut().zip(&self.d) {
            *v /= dj;
        }
        for j in (0..n).rev() {
            let mut s = x[j];
            for p in self.l_ptr[j]..self.l_ptr[j + 1] {
                s -= self.l_val[p] * x[self.l_idx[p]];
            }
            x[j] = s;
        }
        let mut out = vec![0.0; n];
        for (k, &i) in self.perm.iter().enumerate() {
            out[i] = x[k];
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_xorshift::XorShiftRng;

    fn grid(nx: usize, ny: usize) -> (Arc<SymPattern>, Vec<Point>) {
        let idx = |i: usize, j: usize| j * nx + i;
        let mut edges = Vec::new();
        let mut pts = Vec::new();
        for j in 0..ny {
            for i in 0..nx {
                pts.push([i as f64, j as f64]);
                if i + 1 < nx {
                    edges.push((idx(i, j), idx(i + 1, j)));
                }
                if j + 1 < ny {
                    edges.push((idx(i, j), idx(i, j + 1)));
                }
                if i + 1 < nx && j + 1 < ny {
                    edges.push((idx(i, j), idx(i + 1, j + 1)));
                }
            }
        }
        (Arc::new(SymPattern::from_edges(nx * ny, edges)), pts)
    }

    fn random_sym(pattern: &Arc<SymPattern>, seed: u64, diag: f64) -> SparseSym {
        let mut rng = XorShiftRng::seed_from_u64(seed);
        let mut a = SparseSym::zeros(pattern.clone());
        for j in 0..pattern.n() {
            for &i in pattern.column(j) {
                if i < j {
                    let v: f64 = rng.random_range(-1.0..1.0);
                    a.add(i, j, v);
                    a.add(j, i, v);
                } else if i == j {
                    a.add(i, i, diag + rng.random_range(-1.0..1.0));
                }
            }
        }
        a
    }

    #[test]
    fn ordering_is_a_permutation() {
        let (pattern, pts) = grid(23, 17);
        let mut perm = nested_dissection(&pattern, &pts);
        perm.sort_unstable();
        assert_eq!(perm, (0..23 * 17).collect::<Vec<_>>());
    }

    #[test]
    fn dissection_reduces_fill() {
        let (pattern, pts) = grid(40, 40);
        let natural = Symbolic::new(pattern.clone(), (0..1600).collect());
        let nd = Symbolic::new(pattern.clone(), nested_dissection(&pattern, &pts));
        assert!(nd.factor_nnz() < natural.factor_nnz());
    }

    #[test]
    fn solve_matches_matvec() {
        let (pattern, pts) = grid(15, 12);
        let a = random_sym(&pattern, 7, 3.0);
        let sym = Symbolic::new(pattern.clone(), nested_dissection(&pattern, &pts));
        let f = sym.factor(&a, 0.0).unwrap();
        let x: Vec<f64> = (0..a.n()).map(|i| (i as f64 * 0.37).sin()).collect();
        let b = a.mul_vec(&x);
        let y = f.solve(&b);
        for (u, v) in x.iter().zip(&y) {
            assert!((u - v).abs() < 1e-9);
        }
    }

    #[test]
    fn inertia_of_diagonal_shift() {
        // 1D Laplacian, eigenvalues 2 - 2 cos(j pi / (n + 1))
        let n = 50;
        let pattern = Arc::new(SymPattern::from_edges(n, (0..n - 1).map(|i| (i, i + 1))));
        let mut a = SparseSym::zeros(pattern.clone());
        for i in 0..n {
            a.add(i, i, 2.0);
            if i + 1 < n {
                a.add(i, i + 1, -1.0);
                a.add(i + 1, i, -1.0);
            }
        }
        let pts: Vec<Point> = (0..n).map(|i| [i as f64, 0.0]).collect();
        let sym = Symbolic::new(pattern.clone(), nested_dissection(&pattern, &pts));
        let mut ident = SparseSym::zeros(pattern.clone());
        for i in 0..n {
            ident.add(i, i, 1.0);
        }
        let eig = |j: usize| 2.0 - 2.0 * (j as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos();
        for j in [1usize, 5, 20, 49] {
            let sigma = 0.5 * (eig(j) + eig(j + 1));
            let shifted = SparseSym::combine(&[(1.0, &a), (-sigma, &ident)]);
            assert_eq!(sym.factor(&shifted, sigma).unwrap().negative_count(), j);
        }
    }

    #[test]
    fn zero_pivot_is_reported() {
        let pattern = Arc::new(SymPattern::from_edges(2, [(0, 1)]));
        let mut a = SparseSym::zeros(pattern.clone());
        a.add(0, 1, 1.0);
        a.add(1, 0, 1.0);
        let sym = Symbolic::new(pattern, vec![0, 1]);
        assert!(matches!(sym.factor(&a, 0.0), Err(Error::Factorization { pivot: 0, .. })));
    }
}
