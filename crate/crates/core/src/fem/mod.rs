//! P1 finite element solver for the first Robin eigenvalue of a convex polygon.
//!
//! The smallest eigenvalue of `(K + alpha B) x = lambda M x` is located by
//! inertia bisection (negative pivots of `K + alpha B - sigma M` count the
//! eigenvalues below `sigma`), then polished by shifted inverse iteration.
//! [`solve`] repeats this on three nested meshes and extrapolates.

mod assembly;
mod mesh;
pub mod sparse;

pub use assembly::{assemble, RobinMatrices};
pub use mesh::{triangulate, TriMesh};

use crate::error::{domain, Error, Result};
use crate::exec;
use crate::geometry::ConvexPolygon;
use serde::{Deserialize, Serialize};
use sparse::{nested_dissection, Ldl, Symbolic};
use std::sync::Arc;

/// Shift perturbations tried after a factorization breakdown.
const BREAKDOWN_RETRIES: usize = 8;
const MAX_INVERSE_ITERATIONS: usize = 50;
const MAX_BRACKET_DOUBLINGS: usize = 200;

/// Largest `h^2 |lambda_h|` on the finest mesh for which the ground state
/// counts as resolved. Beyond it `K + alpha B - lambda M` has positive
/// off-diagonal entries and the discrete eigenvector may change sign.
pub const RESOLVED_H2_LAMBDA: f64 = 0.5;
/// Largest relative change of `lambda_h` between the two finest levels for
/// which the ground state counts as resolved.
pub const RESOLVED_LEVEL_CHANGE: f64 = 0.1;
/// Finest level [`solve_resolved`] refines to.
pub const MAX_RESOLVED_LEVELS: u32 = 6;

/// Eigenvalue data from one or more refinement levels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    /// Refinement levels solved, coarsest first; empty for a single given mesh.
    pub levels: Vec<u32>,
    /// Discrete eigenvalue per level, coarsest first.
    pub lambda_h: Vec<f64>,
    /// Mesh size per level.
    pub mesh_sizes: Vec<f64>,
    pub lambda_extrapolated: f64,
    pub error_estimate: f64,
    /// Nodal values on the finest level, positive, unit `M`-norm.
    pub eigenvector: Vec<f64>,
    /// Largest count of eigenvalues below `lambda_h + 10 tol` over all levels.
    pub multiplicity_check: usize,
    /// Whether the finest eigenvector keeps one sign.
    pub sign_constant: bool,
    /// `log2` of successive difference ratios; `None` for a single level.
    pub observed_order: Option<f64>,
    /// Set when the level sequence is not decreasing or a polish step failed;
    /// the error estimate is widened in that case.
    pub flagged: bool,
    /// Rayleigh quotient of the finest eigenvector recomputed from the matrices.
    pub rayleigh_check: f64,
    /// `h^2 |lambda_h| <= RESOLVED_H2_LAMBDA` on the finest level and, with
    /// several levels, `lambda_h` moved by at most `RESOLVED_LEVEL_CHANGE`
    /// (relative) between the two finest ones.
    pub resolved: bool,
}

/// Shared symbolic analysis plus the matrices of one level.
struct Pencil<'a> {
    mats: &'a RobinMatrices,
    symbolic: Symbolic,
}

impl Pencil<'_> {
    fn factor(&self, sigma: f64) -> Result<(Ldl, f64)> {
        let mut shift = sigma;
        let mut last = None;
        for attempt in 0..=BREAKDOWN_RETRIES {
            match self.symbolic.factor(&self.mats.pencil(shift), shift) {
                Ok(f) => return Ok((f, shift)),
                Err(e) => last = Some(e),
            }
            shift = sigma + (attempt as f64 + 1.0) * 1e-12 * (1.0 + sigma.abs());
        }
        Err(last.expect("at least one attempt"))
    }

    /// Number of eigenvalues below `sigma`.
    fn count_below(&self, sigma: f64) -> Result<usize> {
        Ok(self.factor(sigma)?.0.negative_count())
    }
}

struct LevelOutcome {
    lambda: f64,
    vector: Vec<f64>,
    multiplicity: usize,
    polished: bool,
    error_bar: f64,
}

/// Smallest eigenvalue of the discrete pencil on one mesh.
pub fn smallest_eigenvalue(mats: &RobinMatrices, mesh: &TriMesh, tol: f64) -> Result<SpectrumResult> {
    let out = level_eigen(mats, mesh, tol)?;
    let rayleigh_check = mats.rayleigh_quotient(&out.vector);
    Ok(SpectrumResult {
        levels: Vec::new(),
        lambda_h: vec![out.lambda],
        mesh_sizes: vec![mesh.h],
        lambda_extrapolated: out.lambda,
        error_estimate: out.error_bar,
        sign_constant: is_sign_constant(&out.vector),
        eigenvector: out.vector,
        multiplicity_check: out.multiplicity,
        observed_order: None,
        flagged: !out.polished,
        rayleigh_check,
        resolved: mesh.h * mesh.h * out.lambda.abs() <= RESOLVED_H2_LAMBDA,
    })
}

fn level_eigen(mats: &RobinMatrices, mesh: &TriMesh, tol: f64) -> Result<LevelOutcome> {
    if !(tol.is_finite() && tol > 0.0) {
        return domain(format!("tolerance must be positive, got {tol}"));
    }
    let pattern = Arc::clone(mats.k.pattern());
    let perm = nested_dissection(&pattern, &mesh.points);
    let pencil = Pencil {
        mats,
        symbolic: Symbolic::new(pattern, perm),
    };

    let one = vec![1.0; mats.n()];
    let mut hi = mats.rayleigh_quotient(&one);
    if pencil.count_below(hi)? == 0 {
        // the constant vector is itself an eigenvector; nudge past it
        hi += tol.max(1e-12 * hi.abs());
        if pencil.count_below(hi)? == 0 {
            return Err(Error::Numerical(format!("no eigenvalue below {hi}")));
        }
    }
    let mut lo = 2.0 * hi;
    let mut doublings = 0;
    while pencil.count_below(lo)? > 0 {
        hi = hi.min(lo);
        lo *= 2.0;
        doublings += 1;
        if doublings > MAX_BRACKET_DOUBLINGS {
            return Err(Error::Numerical("lower bracket for the eigenvalue not found".into()));
        }
    }
    // lo has no eigenvalue below it, hi has at least one
    let width = tol.max(1e-13 * hi.abs());
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pencil.count_below(mid)? == 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let (lambda, vector, polished) = match inverse_iteration(&pencil, lo) {
        Some((l, v)) if l >= lo - width && l <= hi + width => (l, v, true),
        other => {
            let v = other.map(|(_, v)| v).unwrap_or(one);
            (0.5 * (lo + hi), v, false)
        }
    };
    let error_bar = if polished { width } else { 10.0 * (hi - lo).max(width) };
    let multiplicity = pencil.count_below(lambda + 10.0 * width)?;
    Ok(LevelOutcome {
        lambda,
        vector: normalize(mats, vector),
        multiplicity,
        polished,
        error_bar,
    })
}

/// Inverse iteration with shift `sigma`; returns the Rayleigh quotient and vector.
fn inverse_iteration(pencil: &Pencil<'_>, sigma: f64) -> Option<(f64, Vec<f64>)> {
    let mats = pencil.mats;
    let (ldl, _) = pencil.factor(sigma).ok()?;
    let mut x = vec![1.0; mats.n()];
    let mut lambda = mats.rayleigh_quotient(&x);
    let mut prev_delta = f64::INFINITY;
    for it in 0..MAX_INVERSE_ITERATIONS {
        let y = ldl.solve(&mats.m.mul_vec(&x));
        let norm = mats.m.bilinear(&y, &y).sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return None;
        }
        x = y.into_iter().map(|v| v / norm).collect();
        let next = mats.rayleigh_quotient(&x);
        let delta = (next - lambda).abs();
        lambda = next;
        // rounding noise of the quotient sets the floor; stop once it stagnates
        let stagnated = it >= 2 && delta >= prev_delta && delta <= 1e-9 * lambda.abs();
        if delta <= 1e-13 * lambda.abs() || stagnated {
            return Some((lambda, x));
        }
        prev_delta = delta;
    }
    None
}

fn normalize(mats: &RobinMatrices, mut v: Vec<f64>) -> Vec<f64> {
    let sum: f64 = v.iter().sum();
    let norm = mats.m.bilinear(&v, &v).sqrt();
    let s = if sum < 0.0 { -1.0 / norm } else { 1.0 / norm };
    v.iter_mut().for_each(|x| *x *= s);
    v
}

fn is_sign_constant(v: &[f64]) -> bool {
    let min = v.iter().copied().fold(f64::INFINITY, f64::min);
    let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    min * max > 0.0
}

/// Eigenvalue on refinement levels `levels - 2`, `levels - 1` and `levels`,
/// extrapolated assuming second order convergence in `h`.
pub fn solve(poly: &ConvexPolygon, alpha: f64, levels: u32, tol: f64) -> Result<SpectrumResult> {
    if levels < 2 {
        return domain(format!("need at least 2 refinement levels, got {levels}"));
    }
    if !(alpha.is_finite() && alpha < 0.0) {
        return domain(format!("alpha must be negative and finite, got {alpha}"));
    }
    let ladder = [levels - 2, levels - 1, levels];
    let outcomes = exec::map(&ladder, |&l| -> Result<(LevelOutcome, f64, f64)> {
        let mesh = triangulate(poly, l);
        let mats = assemble(&mesh, alpha)?;
        let out = level_eigen(&mats, &mesh, tol)?;
        let rq = mats.rayleigh_quotient(&out.vector);
        Ok((out, mesh.h, rq))
    });
    let outcomes = outcomes.into_iter().collect::<Result<Vec<_>>>()?;

    let lambda_h: Vec<f64> = outcomes.iter().map(|o| o.0.lambda).collect();
    let mesh_sizes: Vec<f64> = outcomes.iter().map(|o| o.1).collect();
    let (l0, l1, l2) = (lambda_h[0], lambda_h[1], lambda_h[2]);
    let d_coarse = l0 - l1;
    let d_fine = l1 - l2;
    let bars = outcomes.iter().map(|o| o.0.error_bar).fold(0.0, f64::max);
    let monotone = d_coarse >= -bars && d_fine >= -bars;
    let polished = outcomes.iter().all(|o| o.0.polished);
    let observed_order = (d_coarse > 0.0 && d_fine > 0.0).then(|| (d_coarse / d_fine).log2());
    let lambda_extrapolated = (4.0 * l2 - l1) / 3.0;
    let mut error_estimate = d_fine.abs().max(bars);
    if !monotone || !polished {
        error_estimate = error_estimate.max(d_coarse.abs()) * 4.0;
    }
    let (finest, h_finest, rayleigh_check) = outcomes.last().expect("three levels");
    Ok(SpectrumResult {
        levels: ladder.to_vec(),
        lambda_h,
        mesh_sizes,
        lambda_extrapolated,
        error_estimate,
        eigenvector: finest.vector.clone(),
        multiplicity_check: outcomes.iter().map(|o| o.0.multiplicity).max().unwrap_or(0),
        sign_constant: is_sign_constant(&finest.vector),
        observed_order,
        flagged: !monotone || !polished,
        rayleigh_check: *rayleigh_check,
        resolved: h_finest * h_finest * l2.abs() <= RESOLVED_H2_LAMBDA
            && d_fine.abs() <= RESOLVED_LEVEL_CHANGE * l2.abs(),
    })
}

/// [`solve`] with finest level `levels`, raised one level at a time up to
/// [`MAX_RESOLVED_LEVELS`] while the finest mesh does not resolve the ground state.
pub fn solve_resolved(poly: &ConvexPolygon, alpha: f64, levels: u32, tol: f64) -> Result<SpectrumResult> {
    let mut levels = levels;
    loop {
        let s = solve(poly, alpha, levels, tol)?;
        if s.resolved || levels >= MAX_RESOLVED_LEVELS {
            return Ok(s);
        }
        levels += 1;
    }
}
