//! Radial Robin eigenproblems: balls and spherical shells in `R^n`.
//!
//! On a ball of radius `R` the positive first eigenfunction is
//! `phi(r) = r^{-beta} I_beta(k r)` with `beta = (n - 2) / 2` and
//! `lambda = -k^2`, where `k` is the positive root of
//! `k I_{beta+1}(k R) + alpha I_beta(k R) = 0`.

use crate::error::{domain, Error, Result};
use crate::specialfn::{besseli_scaled, besselk_scaled, gammafn};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Number of geometric samples used to bracket roots.
pub const SCAN_SAMPLES: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallSpec {
    pub dim: u32,
    pub radius: f64,
}

impl BallSpec {
    pub fn new(dim: u32, radius: f64) -> Result<Self> {
        if dim < 2 {
            return domain(format!("dimension must be at least 2, got {dim}"));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return domain(format!("radius must be positive and finite, got {radius}"));
        }
        Ok(Self { dim, radius })
    }

    pub fn beta(&self) -> f64 {
        (self.dim as f64 - 2.0) / 2.0
    }

    /// `|B_R| = omega_n R^n`.
    pub fn volume(&self) -> f64 {
        let n = self.dim as f64;
        PI.powf(n / 2.0) / gammafn(n / 2.0 + 1.0).expect("n/2+1 > 0") * self.radius.powf(n)
    }

    /// `P(B_R) = n omega_n R^{n-1}`.
    pub fn perimeter(&self) -> f64 {
        self.dim as f64 * self.volume() / self.radius
    }
}

/// First Robin eigenpair of a ball.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialEigen {
    pub spec: BallSpec,
    pub alpha: f64,
    pub k: f64,
    pub lambda: f64,
    pub beta: f64,
    /// `|k I_{beta+1}(kR) / I_beta(kR) + alpha|` at the returned root.
    pub root_residual: f64,
    pub bracket: (f64, f64),
}

impl RadialEigen {
    /// Upper bound `alpha P / |B_R| = alpha n / R` obtained from constant test functions.
    pub fn constant_bound(&self) -> f64 {
        self.alpha * self.spec.dim as f64 / self.spec.radius
    }
}

fn check_alpha_tol(alpha: f64, tol: f64) -> Result<()> {
    if !(alpha.is_finite() && alpha < 0.0) {
        return domain(format!("alpha must be negative and finite, got {alpha}"));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return domain(format!("tolerance must be positive, got {tol}"));
    }
    Ok(())
}

/// `k I_{b+1}(kR) / I_b(kR) + alpha`, a positive multiple of the root function.
fn ball_root_fn(beta: f64, radius: f64, alpha: f64, k: f64) -> f64 {
    let x = k * radius;
    let i_b = besseli_scaled(beta, x).expect("valid order and argument");
    let i_b1 = besseli_scaled(beta + 1.0, x).expect("valid order and argument");
    k * i_b1 / i_b + alpha
}

fn geometric_grid(lo: f64, hi: f64, count: usize) -> impl Iterator<Item = f64> {
    let ratio = (hi / lo).powf(1.0 / (count - 1) as f64);
    (0..count).map(move |i| if i + 1 == count { hi } else { lo * ratio.powi(i as i32) })
}

/// Bisects `f` on `[lo, hi]` where `f(lo) < 0 < f(hi)` (or the reverse)
/// until the bracket is narrower than `tol` and `|f(mid)| <= tol`.
fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64, f64) {
    let lo_sign = f(lo).signum();
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return (mid, mid, mid);
        }
        if fm.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= tol && fm.abs() <= tol {
            break;
        }
    }
    (0.5 * (lo + hi), lo, hi)
}

/// First Robin eigenvalue of the ball `B_R` in `R^n` with `alpha < 0`.
pub fn ball_eigenvalue(spec: BallSpec, alpha: f64, tol: f64) -> Result<RadialEigen> {
    check_alpha_tol(alpha, tol)?;
    let spec = BallSpec::new(spec.dim, spec.radius)?;
    let beta = spec.beta();
    let radius = spec.radius;
    let f = |k: f64| ball_root_fn(beta, radius, alpha, k);

    let k_max = 10.0 * alpha.abs() + 10.0 / radius;
    let k_min = k_max * 1e-9;
    let mut prev = k_min;
    let mut f_prev = f(prev);
    if f_prev >= 0.0 {
        return Err(Error::Internal(format!(
            "root function nonnegative at k = {k_min} (alpha {alpha}, R {radius})"
        )));
    }
    let mut bracket = None;
    for k in geometric_grid(k_min, k_max, SCAN_SAMPLES).skip(1) {
        let fk = f(k);
        if f_prev < 0.0 && fk >= 0.0 {
            bracket = Some((prev, k));
            break;
        }
        prev = k;
        f_prev = fk;
    }
    let (lo, hi) = bracket.ok_or_else(|| {
        Error::Internal(format!("no sign change of the ball root function below k = {k_max}"))
    })?;
    let (k, blo, bhi) = bisect(f, lo, hi, tol);
    Ok(RadialEigen {
        spec,
        alpha,
        k,
        lambda: -k * k,
        beta,
        root_residual: f(k).abs(),
        bracket: (blo, bhi),
    })
}

/// `phi(r) = r^{-beta} I_beta(k r)` and its derivative `k r^{-beta} I_{beta+1}(k r)`.
pub fn eigenfunction_phi(eig: &RadialEigen, r: f64) -> Result<(f64, f64)> {
    let (v, d) = eigenfunction_phi_scaled(eig, r)?;
    let s = (eig.k * eig.spec.radius).exp();
    Ok((v * s, d * s))
}

/// `phi` and `phi'` multiplied by `e^{-k R}`, safe for large `k R`.
pub fn eigenfunction_phi_scaled(eig: &RadialEigen, r: f64) -> Result<(f64, f64)> {
    let radius = eig.spec.radius;
    if !(r >= 0.0 && r <= radius * (1.0 + 1e-14)) {
        return domain(format!("r = {r} outside [0, {radius}]"));
    }
    let r = r.min(radius);
    let (k, beta) = (eig.k, eig.beta);
    let decay = (-k * radius).exp();
    if r == 0.0 {
        let v = k.powf(beta) / (2f64.powf(beta) * gammafn(beta + 1.0)?);
        return Ok((v * decay, 0.0));
    }
    let x = k * r;
    let shift = (x - k * radius).exp();
    let scale = r.powf(-beta) * shift;
    let value = besseli_scaled(beta, x)? * scale;
    let deriv = k * besseli_scaled(beta + 1.0, x)? * scale;
    Ok((value, deriv))
}

/// Radius `r` with `phi(r) = t`, by bisection on the increasing profile.
pub fn phi_inverse(eig: &RadialEigen, t: f64) -> Result<f64> {
    let radius = eig.spec.radius;
    let (lo_val, _) = eigenfunction_phi(eig, 0.0)?;
    let (hi_val, _) = eigenfunction_phi(eig, radius)?;
    let slack = 1e-13 * hi_val.abs();
    if !(t >= lo_val - slack && t <= hi_val + slack) {
        return domain(format!("level {t} outside [{lo_val}, {hi_val}]"));
    }
    if t <= lo_val {
        return Ok(0.0);
    }
    if t >= hi_val {
        return Ok(radius);
    }
    let (mut lo, mut hi) = (0.0, radius);
    while hi - lo > 1e-14 * radius {
        let mid = 0.5 * (lo + hi);
        if eigenfunction_phi(eig, mid)?.0 < t {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `g(t) = |grad v|` on the level set `{v = t}` of the ball eigenfunction.
pub fn level_gradient(eig: &RadialEigen, t: f64) -> Result<f64> {
    let r = phi_inverse(eig, t)?;
    Ok(eigenfunction_phi(eig, r)?.1)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnulusSpec {
    pub dim: u32,
    pub outer: f64,
    pub inner: f64,
}

impl AnnulusSpec {
    pub fn new(dim: u32, outer: f64, inner: f64) -> Result<Self> {
        if dim < 2 {
            return domain(format!("dimension must be at least 2, got {dim}"));
        }
        if !(inner.is_finite() && outer.is_finite() && inner > 0.0 && inner < outer) {
            return domain(format!("need 0 < inner < outer, got inner {inner}, outer {outer}"));
        }
        Ok(Self { dim, outer, inner })
    }

    pub fn beta(&self) -> f64 {
        (self.dim as f64 - 2.0) / 2.0
    }

    pub fn volume(&self) -> f64 {
        BallSpec::new(self.dim, self.outer).unwrap().volume()
            - BallSpec::new(self.dim, self.inner).unwrap().volume()
    }

    /// Total boundary measure (outer plus inner sphere).
    pub fn perimeter(&self) -> f64 {
        BallSpec::new(self.dim, self.outer).unwrap().perimeter()
            + BallSpec::new(self.dim, self.inner).unwrap().perimeter()
    }
}

/// First Robin eigenpair of a spherical shell.
///
/// The eigenfunction is `u(r) = r^{-beta} (a I_beta(k r) + b K_beta(k r))`
/// with `(a, b) = coeffs`, scaled so that `a I_beta` carries a factor
/// `e^{-2 k R_out}` (see [`AnnulusEigen::u_sign_profile`]).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnulusEigen {
    pub spec: AnnulusSpec,
    pub alpha: f64,
    pub k: f64,
    pub lambda: f64,
    pub beta: f64,
    pub root_residual: f64,
    pub bracket: (f64, f64),
    /// Every positive root of the characteristic determinant in the scan range.
    pub roots_found: usize,
    coeffs: (f64, f64),
}

impl AnnulusEigen {
    /// `e^{k r} r^{beta} u(r)` up to a positive constant; its sign is the
    /// sign of the eigenfunction.
    pub fn u_sign_profile(&self, r: f64) -> f64 {
        let x = self.k * r;
        let (a, b) = self.coeffs;
        let i = besseli_scaled(self.beta, x).expect("valid");
        let kk = besselk_scaled(self.beta, x).expect("valid");
        a * i * (2.0 * self.k * (r - self.spec.outer)).exp() + b * kk
    }

    /// Whether the eigenfunction keeps one sign on `samples` radii.
    pub fn is_sign_constant(&self, samples: usize) -> bool {
        let (ri, ro) = (self.spec.inner, self.spec.outer);
        let vals: Vec<f64> = (0..samples)
            .map(|j| ri + (ro - ri) * j as f64 / (samples - 1) as f64)
            .map(|r| self.u_sign_profile(r))
            .collect();
        vals.iter().all(|v| *v > 0.0) || vals.iter().all(|v| *v < 0.0)
    }
}

/// Scaled rows of the Robin boundary system at `k`.
fn annulus_rows(spec: &AnnulusSpec, alpha: f64, k: f64) -> [[f64; 2]; 2] {
    let beta = spec.beta();
    let xo = k * spec.outer;
    let xi = k * spec.inner;
    let i = |x: f64, nu: f64| besseli_scaled(nu, x).expect("valid");
    let kk = |x: f64, nu: f64| besselk_scaled(nu, x).expect("valid");
    // outer: u'(Ro) + alpha u(Ro) = 0; inner normal is -e_r: -u'(Ri) + alpha u(Ri) = 0
    let a11 = k * i(xo, beta + 1.0) + alpha * i(xo, beta);
    let a12 = -k * kk(xo, beta + 1.0) + alpha * kk(xo, beta);
    let a21 = -k * i(xi, beta + 1.0) + alpha * i(xi, beta);
    let a22 = k * kk(xi, beta + 1.0) + alpha * kk(xi, beta);
    [[a11, a12], [a21, a22]]
}

/// Characteristic determinant divided by `e^{k (R_out - R_in)}`; same sign as the true one.
fn annulus_det(spec: &AnnulusSpec, alpha: f64, k: f64) -> f64 {
    let [[a11, a12], [a21, a22]] = annulus_rows(spec, alpha, k);
    a11 * a22 - (-2.0 * k * (spec.outer - spec.inner)).exp() * a12 * a21
}

/// First Robin eigenvalue of the shell `R_in < |x| < R_out`.
///
/// All positive roots of the determinant in `(0, 10|alpha| + 10/R_in]` are
/// located; the ground state is the largest one (most negative `lambda`).
pub fn annulus_eigenvalue(spec: AnnulusSpec, alpha: f64, tol: f64) -> Result<AnnulusEigen> {
    check_alpha_tol(alpha, tol)?;
    let spec = AnnulusSpec::new(spec.dim, spec.outer, spec.inner)?;
    let f = |k: f64| annulus_det(&spec, alpha, k);
    let k_max = 10.0 * alpha.abs() + 10.0 / spec.inner;
    let k_min = 1e-9 * k_max;
    let samples = 2 * SCAN_SAMPLES;
    let mut brackets = Vec::new();
    let mut prev = k_min;
    let mut f_prev = f(prev);
    for k in geometric_grid(k_min, k_max, samples).skip(1) {
        let fk = f(k);
        if f_prev.signum() != fk.signum() {
            brackets.push((prev, k));
        }
        prev = k;
        f_prev = fk;
    }
    let &(lo, hi) = brackets.last().ok_or(Error::NoRootFound { scan_max: k_max })?;
    let (k, blo, bhi) = bisect(f, lo, hi, tol);

    let [[a11, a12], [a21, a22]] = annulus_rows(&spec, alpha, k);
    // null vector from either row, in the convention of `u_sign_profile`
    let damp = (-2.0 * k * (spec.outer - spec.inner)).exp();
    let from_outer = (a12, -a11);
    let from_inner = (a22, -a21 * damp);
    let coeffs = if from_outer.0.hypot(from_outer.1) >= from_inner.0.hypot(from_inner.1) {
        from_outer
    } else {
        from_inner
    };
    let mut eig = AnnulusEigen {
        spec,
        alpha,
        k,
        lambda: -k * k,
        beta: spec.beta(),
        root_residual: f(k).abs(),
        bracket: (blo, bhi),
        roots_found: brackets.len(),
        coeffs,
    };
    if eig.u_sign_profile(spec.outer) < 0.0 {
        eig.coeffs = (-coeffs.0, -coeffs.1);
    }
    Ok(eig)
}

/// Outcome of comparing two balls of radii `r1 <= r2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityCheck {
    pub lambda_small: f64,
    pub lambda_large: f64,
    pub ordered: bool,
}

/// Checks `lambda(alpha, B_{r1}) < lambda(alpha, B_{r2})` for `r1 < r2`
/// (equality when `r1 == r2`).
pub fn ball_lambda_monotonicity(
    dim: u32,
    alpha: f64,
    r1: f64,
    r2: f64,
    tol: f64,
) -> Result<MonotonicityCheck> {
    if r1 > r2 {
        return domain(format!("expected r1 <= r2, got {r1} > {r2}"));
    }
    let small = ball_eigenvalue(BallSpec::new(dim, r1)?, alpha, tol)?;
    let large = if r1 == r2 { small } else { ball_eigenvalue(BallSpec::new(dim, r2)?, alpha, tol)? };
    let ordered = if r1 == r2 {
        small.lambda == large.lambda
    } else {
        small.lambda < large.lambda
    };
    Ok(MonotonicityCheck {
        lambda_small: small.lambda,
        lambda_large: large.lambda,
        ordered,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialfn::besseli_series;
    use approx::assert_relative_eq;

    const TOL: f64 = 1e-12;

    fn ball(dim: u32, radius: f64, alpha: f64) -> RadialEigen {
        ball_eigenvalue(BallSpec::new(dim, radius).unwrap(), alpha, TOL).unwrap()
    }

    #[test]
    fn unit_disc_matches_dense_scan() {
        let eig = ball(2, 1.0, -1.0);
        // first sign change of k I_1(k) - I_0(k) on a 1e-4 grid, unscaled series
        let f = |k: f64| k * besseli_series(1.0, k).unwrap() - besseli_series(0.0, k).unwrap();
        let mut k = 1e-4;
        while f(k) < 0.0 {
            k += 1e-4;
        }
        assert!((eig.k - k).abs() <= 1e-4, "{} vs scan {k}", eig.k);
        assert!((eig.k - 1.608).abs() < 0.01);
        assert!((eig.lambda + 2.587).abs() < 0.03);
        assert_eq!(eig.lambda, -eig.k * eig.k);
        assert!(eig.root_residual <= TOL);
        assert!(eig.bracket.1 - eig.bracket.0 <= TOL);
    }

    #[test]
    fn half_space_limit_is_approached_monotonically() {
        let ks: Vec<f64> = [5.0, 10.0, 25.0, 50.0].iter().map(|&r| ball(2, r, -1.0).k).collect();
        assert!(ks.windows(2).all(|w| w[1] < w[0]), "{ks:?}");
        assert!(ks.iter().all(|&k| k > 1.0));
        assert!((ks[3] - 1.0).abs() < 0.03);
    }

    #[test]
    fn eigenvalues_lie_below_the_constant_bound() {
        for dim in 2..=5 {
            for &radius in &[0.1, 0.5, 1.0, 3.0, 20.0] {
                for &alpha in &[-0.1, -1.0, -7.5] {
                    let eig = ball(dim, radius, alpha);
                    assert!(eig.lambda < alpha * dim as f64 / radius);
                    assert_relative_eq!(
                        eig.constant_bound(),
                        alpha * eig.spec.perimeter() / eig.spec.volume(),
                        max_relative = 1e-12
                    );
                }
            }
        }
    }

    #[test]
    fn eigenfunction_conditions() {
        for dim in [2, 3, 4] {
            let eig = ball(dim, 1.3, -2.0);
            let (v_r, d_r) = eigenfunction_phi(&eig, 1.3).unwrap();
            assert!((d_r + eig.alpha * v_r).abs() <= 1e-8 * v_r.abs());
            let (v0, d0) = eigenfunction_phi(&eig, 0.0).unwrap();
            assert_eq!(d0, 0.0);
            let (v_eps, d_eps) = eigenfunction_phi(&eig, 1e-7).unwrap();
            assert_relative_eq!(v_eps, v0, max_relative = 1e-10);
            assert!(d_eps.abs() < 1e-5);
            let mut prev = v0;
            for j in 1..=100 {
                let (v, d) = eigenfunction_phi(&eig, 1.3 * j as f64 / 100.0).unwrap();
                assert!(v > prev && d > 0.0);
                prev = v;
            }
            assert!(eigenfunction_phi(&eig, 1.31).is_err());
            assert!(eigenfunction_phi(&eig, -0.01).is_err());
        }
    }

    #[test]
    fn disc_eigenfunction_is_i0() {
        let eig = ball(2, 1.0, -1.0);
        for &r in &[0.0, 0.2, 0.7, 1.0] {
            let (v, d) = eigenfunction_phi(&eig, r).unwrap();
            assert_relative_eq!(v, besseli_series(0.0, eig.k * r).unwrap(), max_relative = 1e-12);
            assert_relative_eq!(d, eig.k * besseli_series(1.0, eig.k * r).unwrap(), max_relative = 1e-12, epsilon = 1e-300);
        }
    }

    #[test]
    fn ode_residual() {
        for dim in [2u32, 3, 5] {
            let eig = ball(dim, 1.0, -1.5);
            let n = dim as f64;
            let flux = |r: f64| r.powf(n - 1.0) * eigenfunction_phi(&eig, r).unwrap().1;
            for j in 1..20 {
                let r = j as f64 / 20.0;
                let h = 1e-5 * r;
                let div = (flux(r + h) - flux(r - h)) / (2.0 * h) / r.powf(n - 1.0);
                let v = eigenfunction_phi(&eig, r).unwrap().0;
                let rel = (-div - eig.lambda * v).abs() / (eig.lambda * v).abs();
                assert!(rel <= 1e-6, "n={dim} r={r} rel={rel}");
            }
        }
    }

    #[test]
    fn phi_inverse_round_trip() {
        let eig = ball(3, 2.0, -0.8);
        let lo = eigenfunction_phi(&eig, 0.0).unwrap().0;
        let hi = eigenfunction_phi(&eig, 2.0).unwrap().0;
        assert_eq!(phi_inverse(&eig, lo).unwrap(), 0.0);
        assert_eq!(phi_inverse(&eig, hi).unwrap(), 2.0);
        for j in 0..100 {
            let t = lo + (hi - lo) * (j as f64 + 0.5) / 100.0;
            let r = phi_inverse(&eig, t).unwrap();
            assert_relative_eq!(eigenfunction_phi(&eig, r).unwrap().0, t, max_relative = 1e-9);
        }
        assert!(phi_inverse(&eig, hi * 1.01).is_err());
        assert!(phi_inverse(&eig, lo * 0.99).is_err());
    }

    #[test]
    fn large_arguments_stay_finite() {
        let eig = ball(2, 100.0, -10.0);
        assert!(eig.k.is_finite() && (eig.k - 10.0).abs() < 0.1);
        let (v, d) = eigenfunction_phi_scaled(&eig, 100.0).unwrap();
        assert!(v.is_finite() && v > 0.0 && d.is_finite());
    }

    #[test]
    fn bad_arguments() {
        let spec = BallSpec::new(2, 1.0).unwrap();
        assert!(ball_eigenvalue(spec, 1.0, TOL).is_err());
        assert!(ball_eigenvalue(spec, 0.0, TOL).is_err());
        assert!(ball_eigenvalue(spec, -1.0, 0.0).is_err());
        assert!(BallSpec::new(1, 1.0).is_err());
        assert!(BallSpec::new(2, -1.0).is_err());
        assert!(AnnulusSpec::new(2, 1.0, 1.0).is_err());
        assert!(AnnulusSpec::new(2, 1.0, 0.0).is_err());
    }

    #[test]
    fn thin_inner_hole_recovers_the_ball() {
        for dim in [2, 3] {
            let ann = annulus_eigenvalue(AnnulusSpec::new(dim, 1.0, 1e-3).unwrap(), -1.0, TOL).unwrap();
            let b = ball(dim, 1.0, -1.0);
            assert!((ann.lambda - b.lambda).abs() <= 1e-2, "{} vs {}", ann.lambda, b.lambda);
            assert!(ann.is_sign_constant(200));
        }
    }

    #[test]
    fn annulus_chain() {
        let ann = annulus_eigenvalue(AnnulusSpec::new(2, 1.0, 0.5).unwrap(), -1.0, TOL).unwrap();
        let inner_ball = ball(2, 1.0, -1.0);
        let equal_perimeter = ball(2, 1.5, -1.0);
        assert!(ann.lambda <= inner_ball.lambda);
        assert!(inner_ball.lambda <= equal_perimeter.lambda);
        assert!(ann.is_sign_constant(200));
        assert!(ann.root_residual <= 1e-8);
        let spec = ann.spec;
        assert!(ann.lambda < -spec.perimeter() / spec.volume());
    }

    #[test]
    fn annulus_is_monotone_in_alpha() {
        let spec = AnnulusSpec::new(2, 1.0, 0.5).unwrap();
        let l: Vec<f64> = [-0.5, -1.0, -2.0, -4.0]
            .iter()
            .map(|&a| annulus_eigenvalue(spec, a, TOL).unwrap().lambda)
            .collect();
        assert!(l.windows(2).all(|w| w[1] < w[0]), "{l:?}");
    }

    #[test]
    fn ground_state_is_the_one_signed_root() {
        let spec = AnnulusSpec::new(2, 1.0, 0.5).unwrap();
        let eig = annulus_eigenvalue(spec, -10.0, TOL).unwrap();
        assert!(eig.roots_found >= 2);
        assert!(eig.is_sign_constant(400));
        assert!(eig.lambda < -10.0 * spec.perimeter() / spec.volume());
    }

    #[test]
    fn thin_annulus_beats_the_equal_area_disc() {
        let spec = AnnulusSpec::new(2, 1.0, 0.9).unwrap();
        let ann = annulus_eigenvalue(spec, -10.0, TOL).unwrap();
        let disc = ball(2, (spec.volume() / PI).sqrt(), -10.0);
        assert!(ann.lambda < disc.lambda);
    }

    #[test]
    fn ball_monotonicity_examples() {
        assert!(ball_lambda_monotonicity(2, -1.0, 1.0, 2.0, TOL).unwrap().ordered);
        assert!(ball_lambda_monotonicity(3, -1.0, 0.5, 5.0, TOL).unwrap().ordered);
        let same = ball_lambda_monotonicity(2, -1.0, 1.5, 1.5, TOL).unwrap();
        assert!(same.ordered && same.lambda_small == same.lambda_large);
        assert!(ball_lambda_monotonicity(2, -1.0, 2.0, 1.0, TOL).is_err());
    }
}
