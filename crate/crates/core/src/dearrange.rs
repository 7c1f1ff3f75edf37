//! Transplanting the disc eigenfunction onto a convex polygon.
//!
//! Let `Omega*` be the disc with the same perimeter as `Omega`, radius
//! `R_* = P / (2 pi)`, with first eigenfunction `phi`. The test function
//! `w(x) = phi(R_* - d(x))`, where `d` is the distance to the boundary, has
//! the same boundary values as the disc eigenfunction and the same gradient
//! on corresponding level sets. Since `|grad d| = 1` almost everywhere, its
//! Rayleigh quotient reduces to one-dimensional integrals against the
//! perimeter profile `s -> P(Omega_s)`.

use crate::error::{domain, Error, Result};
use crate::fem;
use crate::geometry::{ball_of_same_perimeter, parallel_profile, ConvexPolygon, ParallelProfile, Point};
use crate::quadrature::adaptive;
use crate::radial::{ball_eigenvalue, eigenfunction_phi, level_gradient, RadialEigen};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// The test function `w = phi(R_* - d)` on a polygon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DearrangedTest {
    pub polygon: ConvexPolygon,
    pub profile: ParallelProfile,
    /// Eigenpair of the disc with the polygon's perimeter.
    pub star: RadialEigen,
    pub alpha: f64,
    pub r_star: f64,
    /// `max w = phi(R_*)`, attained on the boundary.
    pub w_max: f64,
    /// `min w = phi(R_* - r_Omega)`, attained at the incenter.
    pub w_min: f64,
    /// `min v = phi(0)` on the disc.
    pub v_min: f64,
}

impl DearrangedTest {
    pub fn inradius(&self) -> f64 {
        self.profile.inradius
    }

    /// `G(s) = phi(R_* - s)`, the value of `w` at depth `s`.
    pub fn value_at_depth(&self, s: f64) -> Result<f64> {
        Ok(eigenfunction_phi(&self.star, (self.r_star - s).max(0.0))?.0)
    }

    /// `|G'(s)| = phi'(R_* - s)`, the gradient norm of `w` at depth `s`.
    pub fn gradient_at_depth(&self, s: f64) -> Result<f64> {
        Ok(eigenfunction_phi(&self.star, (self.r_star - s).max(0.0))?.1)
    }

    /// `w(x)` for a point inside the polygon.
    pub fn w_at(&self, x: Point) -> Result<f64> {
        let d = self
            .polygon
            .edge_lines()
            .iter()
            .map(|(n, b)| b - (n[0] * x[0] + n[1] * x[1]))
            .fold(f64::INFINITY, f64::min);
        if d < -1e-12 * self.polygon.diameter() {
            return domain(format!("point {x:?} lies outside the polygon"));
        }
        self.value_at_depth(d.max(0.0))
    }
}

/// Builds the test function for `poly` and `alpha < 0`.
pub fn build_test(poly: &ConvexPolygon, alpha: f64, tol: f64) -> Result<DearrangedTest> {
    let ball = ball_of_same_perimeter(poly);
    let star = ball_eigenvalue(ball, alpha, tol)?;
    let profile = parallel_profile(poly);
    let r_star = ball.radius;
    if profile.inradius > r_star {
        return Err(Error::Internal(format!(
            "inradius {} exceeds R_* = {r_star}",
            profile.inradius
        )));
    }
    let w_max = eigenfunction_phi(&star, r_star)?.0;
    let w_min = eigenfunction_phi(&star, r_star - profile.inradius)?.0;
    let v_min = eigenfunction_phi(&star, 0.0)?.0;
    if !(w_max.is_finite() && w_max > 0.0) {
        return Err(Error::Numerical(format!("phi(R_*) = {w_max} is not representable")));
    }
    Ok(DearrangedTest {
        polygon: poly.clone(),
        profile,
        star,
        alpha,
        r_star,
        w_max,
        w_min,
        v_min,
    })
}

/// The three integrals of the Rayleigh quotient and the quotient itself.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FunctionalTerms {
    /// `int |grad w|^2`.
    pub dirichlet: f64,
    /// `int_{boundary} w^2`.
    pub boundary: f64,
    /// `int w^2`.
    pub l2: f64,
    /// `(dirichlet + alpha boundary) / l2`.
    pub rayleigh: f64,
}

impl FunctionalTerms {
    fn new(dirichlet: f64, boundary: f64, l2: f64, alpha: f64) -> Result<Self> {
        let rayleigh = (dirichlet + alpha * boundary) / l2;
        if !rayleigh.is_finite() {
            return Err(Error::Numerical(format!(
                "functional terms not representable (dirichlet {dirichlet}, boundary {boundary}, l2 {l2})"
            )));
        }
        Ok(Self {
            dirichlet,
            boundary,
            l2,
            rayleigh,
        })
    }
}

/// Coarea evaluation on the polygon: integrals over depth `s` against `P(Omega_s)`.
pub fn functional_terms(test: &DearrangedTest, quad_tol: f64) -> Result<FunctionalTerms> {
    check_quad_tol(quad_tol)?;
    let intervals = &test.profile.intervals;
    let share = quad_tol / intervals.len().max(1) as f64;
    let (mut dirichlet, mut l2) = (0.0, 0.0);
    for iv in intervals {
        let phi = |s: f64| eigenfunction_phi(&test.star, (test.r_star - s).max(0.0)).expect("r in range");
        dirichlet += adaptive(|s| phi(s).1.powi(2) * iv.perimeter_at(s), iv.start, iv.end, share)?.value;
        l2 += adaptive(|s| phi(s).0.powi(2) * iv.perimeter_at(s), iv.start, iv.end, share)?.value;
    }
    let boundary = test.w_max * test.w_max * test.polygon.perimeter();
    FunctionalTerms::new(dirichlet, boundary, l2, test.alpha)
}

/// The same three integrals for the disc eigenfunction on `Omega*`.
pub fn disc_terms(star: &RadialEigen, quad_tol: f64) -> Result<FunctionalTerms> {
    check_quad_tol(quad_tol)?;
    let r = star.spec.radius;
    let phi = |x: f64| eigenfunction_phi(star, x).expect("r in range");
    let dirichlet = adaptive(|x| phi(x).1.powi(2) * 2.0 * PI * x, 0.0, r, quad_tol)?.value;
    let l2 = adaptive(|x| phi(x).0.powi(2) * 2.0 * PI * x, 0.0, r, quad_tol)?.value;
    let boundary = phi(r).0.powi(2) * 2.0 * PI * r;
    FunctionalTerms::new(dirichlet, boundary, l2, star.alpha)
}

fn check_quad_tol(quad_tol: f64) -> Result<()> {
    if !(quad_tol.is_finite() && quad_tol > 0.0) {
        return domain(format!("quadrature tolerance must be positive, got {quad_tol}"));
    }
    Ok(())
}

/// Nodes of the Chebyshev–Lobatto grid on `[a, b]`, increasing.
fn chebyshev(a: f64, b: f64, samples: usize) -> Vec<f64> {
    if samples == 1 {
        return vec![b];
    }
    (0..samples)
        .map(|j| {
            let c = -(PI * j as f64 / (samples - 1) as f64).cos();
            0.5 * (a + b) + 0.5 * (b - a) * c
        })
        .collect()
}

/// Sublevel set perimeters at one level `t = phi(rho)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerimeterSample {
    pub t: f64,
    pub rho: f64,
    /// `P({w < t}) = P(Omega_{R_* - rho})`.
    pub polygon: f64,
    /// `P({v < t}) = 2 pi rho`.
    pub disc: f64,
}

impl PerimeterSample {
    pub fn gap(&self) -> f64 {
        self.disc - self.polygon
    }
}

/// Absolute slack of the perimeter comparison.
pub const PERIMETER_SLACK: f64 = 1e-9;

/// Compares `P({w < t})` with `P({v < t})` at `samples` levels in `(w_min, w_max]`,
/// Chebyshev-spaced in `rho = phi^{-1}(t)`.
pub fn perimeter_comparison(test: &DearrangedTest, samples: usize) -> Result<Vec<PerimeterSample>> {
    let rho_min = test.r_star - test.inradius();
    let grid = chebyshev(rho_min, test.r_star, samples + 1);
    grid[1..]
        .iter()
        .map(|&rho| {
            Ok(PerimeterSample {
                t: eigenfunction_phi(&test.star, rho)?.0,
                rho,
                polygon: test.profile.perimeter_at(test.r_star - rho),
                disc: 2.0 * PI * rho,
            })
        })
        .collect()
}

/// Superlevel measures at one level `t = phi(rho)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VolumeSample {
    pub t: f64,
    pub rho: f64,
    /// `|Omega| - |{w < t}|`.
    pub polygon: f64,
    /// `|Omega*| - |{v < t}|`.
    pub disc: f64,
}

/// Superlevel comparison together with its integrated consequence for `int w^2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolumeComparison {
    pub samples: Vec<VolumeSample>,
    pub l2_polygon: f64,
    pub l2_disc: f64,
}

impl VolumeComparison {
    pub fn holds(&self, slack: f64) -> bool {
        self.samples.iter().all(|v| v.polygon <= v.disc + slack) && self.l2_polygon <= self.l2_disc + slack
    }
}

/// Compares the measures of the superlevel sets of `w` and `v` for `t` in
/// `[0, v_M]` (`rho` Chebyshev-spaced in `[0, R_*]`, plus `t = 0`).
pub fn volume_comparison(test: &DearrangedTest, samples: usize, quad_tol: f64) -> Result<VolumeComparison> {
    let area = test.polygon.area();
    let disc_area = PI * test.r_star * test.r_star;
    let mut out = vec![VolumeSample {
        t: 0.0,
        rho: 0.0,
        polygon: area,
        disc: disc_area,
    }];
    for rho in chebyshev(0.0, test.r_star, samples) {
        let depth = test.r_star - rho;
        let below = if depth >= test.inradius() { 0.0 } else { test.profile.area_at(depth) };
        out.push(VolumeSample {
            t: eigenfunction_phi(&test.star, rho)?.0,
            rho,
            polygon: area - below,
            disc: disc_area - PI * rho * rho,
        });
    }
    Ok(VolumeComparison {
        samples: out,
        l2_polygon: functional_terms(test, quad_tol)?.l2,
        l2_disc: disc_terms(&test.star, quad_tol)?.l2,
    })
}

/// Uniform comparison of an RK4 solution of `G' = -g(G)`, `G(0) = v_M`
/// with the closed form `phi(R_* - s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OdeCheck {
    pub steps: usize,
    pub max_abs_error: f64,
    pub max_rel_error: f64,
}

/// Integrates the profile ODE on `[0, r_Omega]` with `steps` RK4 steps.
pub fn ode_check(test: &DearrangedTest, steps: usize) -> Result<OdeCheck> {
    if steps == 0 {
        return domain("need at least one step");
    }
    let g = |t: f64| level_gradient(&test.star, t.clamp(test.v_min, test.w_max));
    let h = test.inradius() / steps as f64;
    let mut y = test.w_max;
    let (mut max_abs, mut max_rel) = (0.0_f64, 0.0_f64);
    for i in 0..steps {
        let k1 = -g(y)?;
        let k2 = -g(y + 0.5 * h * k1)?;
        let k3 = -g(y + 0.5 * h * k2)?;
        let k4 = -g(y + h * k3)?;
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        let exact = test.value_at_depth(h * (i + 1) as f64)?;
        max_abs = max_abs.max((y - exact).abs());
        max_rel = max_rel.max((y - exact).abs() / exact.abs());
    }
    Ok(OdeCheck {
        steps,
        max_abs_error: max_abs,
        max_rel_error: max_rel,
    })
}

/// Tolerances and sizes for [`verify_chain`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainConfig {
    /// Root finding and eigenvalue bisection width.
    pub tol: f64,
    /// Absolute tolerance per quadrature term.
    pub quad_tol: f64,
    /// Finest refinement level of the finite element solve.
    pub fem_levels: u32,
    /// Levels sampled by the perimeter and volume comparisons.
    pub samples: usize,
}

impl Default for ChainConfig {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            quad_tol: 1e-10,
            fem_levels: 4,
            samples: 100,
        }
    }
}

/// Every quantity of the comparison `lambda(Omega) <= F(w) <= lambda(Omega*)`
/// for one polygon; each flag is derived from a stored margin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub fingerprint: String,
    pub alpha: f64,
    pub perimeter: f64,
    pub area: f64,
    pub inradius: f64,
    #[serde(rename = "R_star")]
    pub r_star: f64,
    pub lambda_star: f64,
    pub rayleigh_w: f64,
    pub lambda_fem: f64,
    pub fem_error: f64,
    /// `lambda_star - rayleigh_w`.
    pub margin_star: f64,
    /// `rayleigh_w - lambda_fem`.
    pub margin_fw: f64,
    pub polygon_terms: FunctionalTerms,
    pub disc_terms: FunctionalTerms,
    /// Smallest `P(B_t) - P(E_t)` over the sampled levels.
    pub perimeter_margin: f64,
    /// Smallest superlevel measure margin over the sampled levels.
    pub volume_margin: f64,
    /// `dirichlet(Omega*) - dirichlet(Omega)`.
    pub energy_margin: f64,
    /// `l2(Omega*) - l2(Omega)`.
    pub l2_margin: f64,
    /// `|boundary(Omega) - boundary(Omega*)| / boundary(Omega*)`.
    pub boundary_rel_gap: f64,
    /// `alpha P / |Omega| - lambda_fem`.
    pub bound_margin: f64,
    pub fem_multiplicity: usize,
    pub fem_sign_constant: bool,
    pub fem_flagged: bool,
    /// Finest refinement level used, at least `config.fem_levels`.
    pub fem_levels_used: u32,
    /// Whether the finest mesh resolves the ground state (see [`fem::RESOLVED_H2_LAMBDA`]).
    pub fem_resolved: bool,
    pub tol_chain: f64,
    pub tol_quad_compare: f64,
    pub config: ChainConfig,
    pub perimetri_ok: bool,
    pub energie_ok: bool,
    #[serde(rename = "normeL2_ok")]
    pub norme_l2_ok: bool,
    pub boundary_ok: bool,
    pub chain_ok: bool,
    /// Bound `lambda < alpha P / |Omega|`, simplicity of the discrete ground
    /// state, and its positivity when the mesh resolves it.
    pub spectral_ok: bool,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.perimetri_ok && self.energie_ok && self.norme_l2_ok && self.boundary_ok && self.chain_ok && self.spectral_ok
    }
}

/// Relative gap allowed between the two boundary terms.
pub const BOUNDARY_REL_TOL: f64 = 1e-9;

/// Runs every comparison for one polygon and `alpha < 0`.
pub fn verify_chain(poly: &ConvexPolygon, alpha: f64, config: &ChainConfig) -> Result<TheoremReport> {
    let test = build_test(poly, alpha, config.tol)?;
    let terms = functional_terms(&test, config.quad_tol)?;
    let disc = disc_terms(&test.star, config.quad_tol)?;
    let perim = perimeter_comparison(&test, config.samples)?;
    let volume = volume_comparison(&test, config.samples, config.quad_tol)?;
    let spectrum = fem::solve_resolved(poly, alpha, config.fem_levels, config.tol)?;

    let lambda_star = test.star.lambda;
    let rayleigh_w = terms.rayleigh;
    let lambda_fem = spectrum.lambda_extrapolated;
    let fem_error = spectrum.error_estimate;
    let tol_chain = (2.0 * fem_error).max(1e-8);
    let margin_star = lambda_star - rayleigh_w;
    let margin_fw = rayleigh_w - lambda_fem;

    let perimeter_margin = perim.iter().map(PerimeterSample::gap).fold(f64::INFINITY, f64::min);
    let volume_margin = volume
        .samples
        .iter()
        .map(|v| v.disc - v.polygon)
        .fold(f64::INFINITY, f64::min);
    let energy_margin = disc.dirichlet - terms.dirichlet;
    let l2_margin = disc.l2 - terms.l2;
    let boundary_rel_gap = (terms.boundary - disc.boundary).abs() / disc.boundary;
    let tol_quad_compare = 2.0 * config.quad_tol + 1e-12 * disc.dirichlet.max(disc.l2);
    let constant_bound = alpha * poly.perimeter() / poly.area();
    let bound_margin = constant_bound - lambda_fem;
    let perimeter_slack = PERIMETER_SLACK * poly.perimeter().max(1.0);

    Ok(TheoremReport {
        fingerprint: poly.fingerprint(),
        alpha,
        perimeter: poly.perimeter(),
        area: poly.area(),
        inradius: test.inradius(),
        r_star: test.r_star,
        lambda_star,
        rayleigh_w,
        lambda_fem,
        fem_error,
        margin_star,
        margin_fw,
        polygon_terms: terms,
        disc_terms: disc,
        perimeter_margin,
        volume_margin,
        energy_margin,
        l2_margin,
        boundary_rel_gap,
        bound_margin,
        fem_multiplicity: spectrum.multiplicity_check,
        fem_sign_constant: spectrum.sign_constant,
        fem_flagged: spectrum.flagged,
        fem_levels_used: *spectrum.levels.last().expect("three levels"),
        fem_resolved: spectrum.resolved,
        tol_chain,
        tol_quad_compare,
        config: *config,
        perimetri_ok: perimeter_margin >= -perimeter_slack,
        energie_ok: energy_margin >= -tol_quad_compare,
        norme_l2_ok: l2_margin >= -tol_quad_compare && volume_margin >= -perimeter_slack,
        boundary_ok: boundary_rel_gap <= BOUNDARY_REL_TOL,
        chain_ok: margin_fw >= -tol_chain && margin_star >= -tol_chain,
        spectral_ok: bound_margin > 0.0
            && lambda_star < test.star.constant_bound()
            && spectrum.multiplicity_check == 1
            && (spectrum.sign_constant || !spectrum.resolved),
    })
}
