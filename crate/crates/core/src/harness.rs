//! Executable catalog of the inequalities checked by this crate.
//!
//! Every case is a named statement evaluated on fixed inputs or on a seeded
//! polygon corpus. A failing polygon case is shrunk (fewer vertices, rounded
//! coordinates) to a small witness and serialized as a [`Replay`] that
//! reproduces the failure exactly.

use crate::corpus::{random_convex_polygon, Shape};
use crate::dearrange::{
    build_test, disc_terms, functional_terms, ode_check, perimeter_comparison, verify_chain, volume_comparison,
    ChainConfig, PERIMETER_SLACK,
};
use crate::error::{Error, Result};
use crate::exec;
use crate::fem;
use crate::geometry::{parallel_profile, ConvexPolygon, Point};
use crate::radial::{annulus_eigenvalue, ball_eigenvalue, ball_lambda_monotonicity, AnnulusSpec, BallSpec};
use crate::specialfn::{besseli, besseli_scaled, besselk, besselk_scaled};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Sizes and tolerances of a suite run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Number of random polygons in the corpus.
    pub corpus_size: usize,
    /// Points per random hull.
    pub hull_points: usize,
    pub alphas: Vec<f64>,
    pub chain: ChainConfig,
    /// Name of one case whose `alpha` is negated, to check that the suite notices.
    pub inject_fault: Option<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            corpus_size: 12,
            hull_points: 12,
            alphas: vec![-0.5, -1.0, -5.0],
            chain: ChainConfig::default(),
            inject_fault: None,
        }
    }
}

/// One evaluated inequality: it holds when `margin >= -tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub margin: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl Check {
    fn new(margin: f64, tolerance: f64, detail: impl Into<String>) -> Self {
        Self {
            margin,
            tolerance,
            detail: detail.into(),
        }
    }

    /// A check that is either satisfied or not, with no numerical margin.
    fn boolean(ok: bool, detail: impl Into<String>) -> Self {
        Self::new(if ok { 0.0 } else { -1.0 }, 0.0, detail)
    }

    pub fn holds(&self) -> bool {
        self.margin >= -self.tolerance
    }
}

/// Input for reproducing one polygon failure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Replay {
    pub polygon: ConvexPolygon,
    pub config: ReplayConfig,
    pub case: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplayConfig {
    /// The `alpha` actually used, after any injected fault.
    pub alpha: f64,
    pub seed: u64,
    pub chain: ChainConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseOutcome {
    pub name: String,
    pub statement: String,
    pub passed: bool,
    pub checks: usize,
    /// Check with the smallest `margin + tolerance`.
    pub worst: Option<Check>,
    pub error: Option<String>,
    pub counterexample: Option<Replay>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub outcomes: Vec<CaseOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }
}

type FixedFn = fn(&SuiteConfig, f64) -> Result<Vec<Check>>;
type PolygonFn = fn(&ConvexPolygon, f64, &ChainConfig) -> Result<Check>;

#[derive(Clone, Copy)]
enum Kind {
    /// Fixed inputs; the argument multiplies every `alpha` used (`-1` under a fault).
    Fixed(FixedFn, bool),
    /// Run on every corpus polygon, once per `alpha` if `uses_alpha`.
    Polygon(PolygonFn, bool),
}

#[derive(Clone, Copy)]
struct Case {
    name: &'static str,
    statement: &'static str,
    kind: Kind,
}

impl Case {
    fn uses_alpha(&self) -> bool {
        match self.kind {
            Kind::Fixed(_, a) | Kind::Polygon(_, a) => a,
        }
    }
}

const CATALOG: &[Case] = &[
    Case {
        name: "bessel-wronskian",
        statement: "I_nu(x) K_{nu+1}(x) + I_{nu+1}(x) K_nu(x) = 1/x on a 20 x 20 grid, relative residual <= 1e-8",
        kind: Kind::Fixed(bessel_wronskian, false),
    },
    Case {
        name: "bessel-recurrence",
        statement: "three-term recurrences of I_nu and K_nu on a 20 x 20 grid, relative residual <= 1e-8",
        kind: Kind::Fixed(bessel_recurrence, false),
    },
    Case {
        name: "bessel-reference",
        statement: "I_0(1) equals its power series to 1e-10; half-integer orders match elementary closed forms to 1e-9",
        kind: Kind::Fixed(bessel_reference, false),
    },
    Case {
        name: "ball-bound",
        statement: "the ball eigenvalue lies strictly below the constant test function value alpha n / R",
        kind: Kind::Fixed(ball_bound, true),
    },
    Case {
        name: "ball-monotonicity",
        statement: "the ball eigenvalue increases strictly with the radius",
        kind: Kind::Fixed(ball_monotonicity, true),
    },
    Case {
        name: "annulus-chain",
        statement: "shell (1, 0.5) <= unit disc <= disc of radius 1.5 at alpha = -1, shell ground state of one sign",
        kind: Kind::Fixed(annulus_chain, true),
    },
    Case {
        name: "equality-trend",
        statement: "for regular m-gons of perimeter 2 pi, lambda(disc) - F(w) is positive and decreases in m",
        kind: Kind::Fixed(equality_trend, true),
    },
    Case {
        name: "fem-disc",
        statement: "finite elements on the regular 64-gon inscribed in the unit disc agree with the disc to 2e-2",
        kind: Kind::Fixed(fem_disc, true),
    },
    Case {
        name: "profile-lemma",
        statement: "P(Omega_s) is concave with slope <= -2 pi, and dA/ds = -P",
        kind: Kind::Polygon(profile_lemma, false),
    },
    Case {
        name: "perimetri",
        statement: "each sublevel set of w has perimeter at most that of the matching disc sublevel set",
        kind: Kind::Polygon(perimetri, true),
    },
    Case {
        name: "normeL2",
        statement: "superlevel sets of w are no larger than those of v, hence int w^2 <= int v^2",
        kind: Kind::Polygon(norme_l2, true),
    },
    Case {
        name: "energie",
        statement: "int |grad w|^2 over the polygon <= int |grad v|^2 over the disc",
        kind: Kind::Polygon(energie, true),
    },
    Case {
        name: "boundary",
        statement: "boundary integrals of w and v agree to 1e-9 relative",
        kind: Kind::Polygon(boundary, true),
    },
    Case {
        name: "closed-form-ode",
        statement: "RK4 on G' = -g(G), G(0) = phi(R_*) tracks phi(R_* - s) to 1e-6",
        kind: Kind::Polygon(closed_form_ode, true),
    },
    Case {
        name: "fem-simplicity",
        statement: "discrete ground state below alpha P / |Omega|, simple, and of one sign",
        kind: Kind::Polygon(fem_simplicity, true),
    },
    Case {
        name: "chain",
        statement: "lambda_fem <= F(w) <= lambda(disc of equal perimeter) within the chain tolerance",
        kind: Kind::Polygon(chain, true),
    },
];

/// Names of all cases in catalog order.
pub fn case_names() -> Vec<&'static str> {
    CATALOG.iter().map(|c| c.name).collect()
}

/// Fixed shapes plus `corpus_size` random hulls.
pub fn suite_corpus(config: &SuiteConfig) -> Result<Vec<Shape>> {
    let mut shapes = vec![
        Shape {
            id: "square".into(),
            label: "1x1".into(),
            polygon: ConvexPolygon::rectangle(1.0, 1.0)?,
        },
        Shape {
            id: "rectangle".into(),
            label: "4x0.25".into(),
            polygon: ConvexPolygon::rectangle(4.0, 0.25)?,
        },
        Shape {
            id: "triangle".into(),
            label: "3".into(),
            polygon: ConvexPolygon::new(vec![[0.0, 0.0], [2.0, 0.0], [0.4, 1.1]])?,
        },
        Shape {
            id: "regular-7".into(),
            label: "7".into(),
            polygon: ConvexPolygon::regular(7, 1.0)?,
        },
    ];
    for i in 0..config.corpus_size as u64 {
        let s = config.seed.wrapping_add(i);
        shapes.push(Shape {
            id: format!("random-{s}"),
            label: format!("{}@{s}", config.hull_points),
            polygon: random_convex_polygon(s, config.hull_points)?,
        });
    }
    Ok(shapes)
}

/// Runs every case whose name contains `filter` (case-insensitive).
pub fn run_suite(filter: Option<&str>, config: &SuiteConfig) -> Result<SuiteReport> {
    if let Some(name) = &config.inject_fault {
        let case = CATALOG
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::Input(format!("no case named `{name}`")))?;
        if !case.uses_alpha() {
            return Err(Error::Input(format!("case `{name}` has no alpha to flip")));
        }
    }
    let needle = filter.map(str::to_lowercase);
    let selected: Vec<Case> = CATALOG
        .iter()
        .filter(|c| needle.as_ref().is_none_or(|f| c.name.to_lowercase().contains(f)))
        .copied()
        .collect();
    let corpus = if selected.iter().any(|c| matches!(c.kind, Kind::Polygon(..))) {
        suite_corpus(config)?
    } else {
        Vec::new()
    };
    let outcomes = exec::map(&selected, |case| run_case(case, config, &corpus));
    Ok(SuiteReport {
        seed: config.seed,
        outcomes,
    })
}

fn fault_sign(case: &Case, config: &SuiteConfig) -> f64 {
    if config.inject_fault.as_deref() == Some(case.name) {
        -1.0
    } else {
        1.0
    }
}

fn outcome(case: &Case, checks: &[Check], error: Option<String>, counterexample: Option<Replay>) -> CaseOutcome {
    let worst = checks
        .iter()
        .min_by(|a, b| (a.margin + a.tolerance).total_cmp(&(b.margin + b.tolerance)))
        .cloned();
    CaseOutcome {
        name: case.name.into(),
        statement: case.statement.into(),
        passed: error.is_none() && checks.iter().all(Check::holds),
        checks: checks.len(),
        worst,
        error,
        counterexample,
    }
}

fn run_case(case: &Case, config: &SuiteConfig, corpus: &[Shape]) -> CaseOutcome {
    let sign = fault_sign(case, config);
    match case.kind {
        Kind::Fixed(f, _) => match f(config, sign) {
            Ok(checks) => outcome(case, &checks, None, None),
            Err(e) => outcome(case, &[], Some(e.to_string()), None),
        },
        Kind::Polygon(f, uses_alpha) => {
            let alphas: Vec<f64> = if uses_alpha {
                config.alphas.iter().map(|a| a * sign).collect()
            } else {
                vec![config.alphas.first().copied().unwrap_or(-1.0)]
            };
            let jobs: Vec<(&Shape, f64)> = corpus
                .iter()
                .flat_map(|s| alphas.iter().map(move |&a| (s, a)))
                .collect();
            let results = exec::map(&jobs, |&(shape, alpha)| {
                f(&shape.polygon, alpha, &config.chain).map(|mut c| {
                    c.detail = format!("{} alpha={alpha}: {}", shape.id, c.detail);
                    c
                })
            });
            let mut checks = Vec::new();
            let mut first_failure = None;
            for (job, r) in jobs.iter().zip(results) {
                match r {
                    Ok(c) => {
                        if !c.holds() && first_failure.is_none() {
                            first_failure = Some((job, c.detail.clone()));
                        }
                        checks.push(c);
                    }
                    Err(e) => {
                        if first_failure.is_none() {
                            first_failure = Some((job, format!("{} alpha={}: {e}", job.0.id, job.1)));
                        }
                    }
                }
            }
            match first_failure {
                None => outcome(case, &checks, None, None),
                Some((&(shape, alpha), message)) => {
                    let fails = |p: &ConvexPolygon| f(p, alpha, &config.chain).map_or(true, |c| !c.holds());
                    let witness = shrink(&shape.polygon, fails);
                    let replay = Replay {
                        polygon: witness,
                        config: ReplayConfig {
                            alpha,
                            seed: config.seed,
                            chain: config.chain,
                        },
                        case: case.name.into(),
                    };
                    outcome(case, &checks, Some(message), Some(replay))
                }
            }
        }
    }
}

/// Drops vertices while the failure persists, then rounds coordinates to
/// the fewest decimal digits (1 to 6) that still fail.
pub fn shrink<F: Fn(&ConvexPolygon) -> bool>(poly: &ConvexPolygon, fails: F) -> ConvexPolygon {
    let mut current = poly.clone();
    'drop: loop {
        if current.len() <= 3 {
            break;
        }
        for i in 0..current.len() {
            let rest: Vec<Point> = current
                .vertices()
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| *p)
                .collect();
            if let Ok(candidate) = ConvexPolygon::hull(&rest) {
                if fails(&candidate) {
                    current = candidate;
                    continue 'drop;
                }
            }
        }
        break;
    }
    for digits in 1..=6 {
        let scale = 10f64.powi(digits);
        let rounded: Vec<Point> = current
            .vertices()
            .iter()
            .map(|p| [(p[0] * scale).round() / scale, (p[1] * scale).round() / scale])
            .collect();
        if let Ok(candidate) = ConvexPolygon::hull(&rounded) {
            if fails(&candidate) {
                return candidate;
            }
        }
    }
    current
}

/// Re-runs the polygon check recorded in `replay`.
pub fn replay(replay: &Replay) -> Result<CaseOutcome> {
    let case = CATALOG
        .iter()
        .find(|c| c.name == replay.case)
        .ok_or_else(|| Error::Input(format!("no case named `{}`", replay.case)))?;
    let Kind::Polygon(f, _) = case.kind else {
        return Err(Error::Input(format!("case `{}` does not take a polygon", case.name)));
    };
    Ok(match f(&replay.polygon, replay.config.alpha, &replay.config.chain) {
        Ok(c) => {
            let failed = !c.holds();
            let error = failed.then(|| c.detail.clone());
            outcome(case, &[c], error, failed.then(|| replay.clone()))
        }
        Err(e) => outcome(case, &[], Some(e.to_string()), Some(replay.clone())),
    })
}

fn log_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
}

fn lin_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

/// Relative Wronskian residual `|x (I_nu K_{nu+1} + I_{nu+1} K_nu) - 1|`.
pub fn wronskian_residual(nu: f64, x: f64) -> Result<f64> {
    // the exponential scalings cancel in each product
    let w = besseli_scaled(nu, x)? * besselk_scaled(nu + 1.0, x)? + besseli_scaled(nu + 1.0, x)? * besselk_scaled(nu, x)?;
    Ok((x * w - 1.0).abs())
}

/// Residuals of `I_{nu-1} - I_{nu+1} = (2 nu / x) I_nu` and
/// `K_{nu+1} - K_{nu-1} = (2 nu / x) K_nu`, relative to the largest term.
pub fn recurrence_residuals(nu: f64, x: f64) -> Result<(f64, f64)> {
    let i = |n: f64| besseli_scaled(n, x);
    let k = |n: f64| besselk_scaled(n, x);
    let (im, i0, ip) = (i(nu - 1.0)?, i(nu)?, i(nu + 1.0)?);
    let ri = (im - ip - 2.0 * nu / x * i0).abs() / im.abs().max(ip.abs()).max((2.0 * nu / x * i0).abs());
    let (km, k0, kp) = (k(nu - 1.0)?, k(nu)?, k(nu + 1.0)?);
    let rk = (kp - km - 2.0 * nu / x * k0).abs() / kp.abs().max(km.abs()).max((2.0 * nu / x * k0).abs());
    Ok((ri, rk))
}

fn bessel_wronskian(_: &SuiteConfig, _: f64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for nu in lin_grid(0.0, 5.0, 20) {
        for x in log_grid(0.05, 60.0, 20) {
            let r = wronskian_residual(nu, x)?;
            checks.push(Check::new(-r, 1e-8, format!("nu={nu} x={x} residual={r:e}")));
        }
    }
    Ok(checks)
}

fn bessel_recurrence(_: &SuiteConfig, _: f64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for nu in lin_grid(1.0, 6.0, 20) {
        for x in log_grid(0.05, 60.0, 20) {
            let (ri, rk) = recurrence_residuals(nu, x)?;
            checks.push(Check::new(-ri, 1e-8, format!("I: nu={nu} x={x} residual={ri:e}")));
            checks.push(Check::new(-rk, 1e-8, format!("K: nu={nu} x={x} residual={rk:e}")));
        }
    }
    Ok(checks)
}

fn bessel_reference(_: &SuiteConfig, _: f64) -> Result<Vec<Check>> {
    // I_0(1) = sum_m 1 / (4^m (m!)^2), 20 terms
    let mut term = 1.0_f64;
    let mut series = 1.0_f64;
    for m in 1..20 {
        term /= 4.0 * (m * m) as f64;
        series += term;
    }
    let i01 = besseli(0.0, 1.0)?.value;
    let mut checks = vec![Check::new(-(i01 - series).abs(), 1e-10, format!("I_0(1)={i01} series={series}"))];
    for x in log_grid(0.1, 40.0, 12) {
        let sqrt = (2.0 / (PI * x)).sqrt();
        let forms = [
            (besseli(0.5, x)?.value, sqrt * x.sinh(), "I_1/2"),
            (besseli(1.5, x)?.value, sqrt * (x.cosh() - x.sinh() / x), "I_3/2"),
            (besselk(0.5, x)?.value, (PI / (2.0 * x)).sqrt() * (-x).exp(), "K_1/2"),
            (besselk(1.5, x)?.value, (PI / (2.0 * x)).sqrt() * (-x).exp() * (1.0 + 1.0 / x), "K_3/2"),
        ];
        for (got, want, name) in forms {
            let rel = (got - want).abs() / want.abs();
            checks.push(Check::new(-rel, 1e-9, format!("{name}({x}) relative error {rel:e}")));
        }
    }
    Ok(checks)
}

fn ball_bound(config: &SuiteConfig, sign: f64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for &alpha in &config.alphas {
        let alpha = alpha * sign;
        for dim in [2, 3, 4] {
            for radius in [0.3, 1.0, 5.0] {
                let eig = ball_eigenvalue(BallSpec::new(dim, radius)?, alpha, config.chain.tol)?;
                let margin = eig.constant_bound() - eig.lambda;
                checks.push(Check::new(
                    margin,
                    0.0,
                    format!("n={dim} R={radius} alpha={alpha}: lambda={} bound={}", eig.lambda, eig.constant_bound()),
                ));
                checks.push(Check::boolean(margin > 0.0, "strict inequality"));
            }
        }
    }
    Ok(checks)
}

/// Twenty `(r1, r2)` pairs with `r1 < r2`.
pub fn radius_pairs() -> Vec<(f64, f64)> {
    let radii: Vec<f64> = log_grid(0.2, 8.0, 21).collect();
    radii.windows(2).map(|w| (w[0], w[1])).collect()
}

fn ball_monotonicity(config: &SuiteConfig, sign: f64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for &alpha in &config.alphas {
        for dim in [2, 3] {
            for (r1, r2) in radius_pairs() {
                let m = ball_lambda_monotonicity(dim, alpha * sign, r1, r2, config.chain.tol)?;
                checks.push(Check::boolean(
                    m.ordered,
                    format!("n={dim} R={r1} < {r2}: {} < {}", m.lambda_small, m.lambda_large),
                ));
            }
        }
    }
    Ok(checks)
}

fn annulus_chain(config: &SuiteConfig, sign: f64) -> Result<Vec<Check>> {
    let alpha = -sign;
    let tol = config.chain.tol;
    let shell = annulus_eigenvalue(AnnulusSpec::new(2, 1.0, 0.5)?, alpha, tol)?;
    let b1 = ball_eigenvalue(BallSpec::new(2, 1.0)?, alpha, tol)?;
    let b15 = ball_eigenvalue(BallSpec::new(2, 1.5)?, alpha, tol)?;
    Ok(vec![
        Check::new(b1.lambda - shell.lambda, tol, format!("shell {} vs B_1 {}", shell.lambda, b1.lambda)),
        Check::new(b15.lambda - b1.lambda, tol, format!("B_1 {} vs B_1.5 {}", b1.lambda, b15.lambda)),
        Check::boolean(shell.is_sign_constant(200), "shell eigenfunction of one sign"),
    ])
}

/// `lambda(disc) - F(w)` for regular `m`-gons of perimeter `2 pi`.
pub fn equality_margins(sides: &[usize], alpha: f64, config: &ChainConfig) -> Result<Vec<f64>> {
    sides
        .iter()
        .map(|&m| {
            let poly = ConvexPolygon::regular_with_perimeter(m, 2.0 * PI)?;
            let test = build_test(&poly, alpha, config.tol)?;
            Ok(test.star.lambda - functional_terms(&test, config.quad_tol)?.rayleigh)
        })
        .collect()
}

fn equality_trend(config: &SuiteConfig, sign: f64) -> Result<Vec<Check>> {
    let sides = [8, 16, 32, 64];
    let margins = equality_margins(&sides, -sign, &config.chain)?;
    let mut checks: Vec<Check> = sides
        .iter()
        .zip(&margins)
        .map(|(m, g)| Check::boolean(*g > 0.0, format!("m={m}: margin {g:e}")))
        .collect();
    for (w, s) in margins.windows(2).zip(sides.windows(2)) {
        checks.push(Check::boolean(w[1] < w[0], format!("m={} -> {}: {:e} -> {:e}", s[0], s[1], w[0], w[1])));
    }
    Ok(checks)
}

fn fem_disc(config: &SuiteConfig, sign: f64) -> Result<Vec<Check>> {
    let alpha = -sign;
    let poly = ConvexPolygon::regular(64, 1.0)?;
    let spectrum = fem::solve(&poly, alpha, config.chain.fem_levels, config.chain.tol)?;
    let disc = ball_eigenvalue(BallSpec::new(2, 1.0)?, alpha, config.chain.tol)?;
    let gap = (spectrum.lambda_extrapolated - disc.lambda).abs();
    Ok(vec![Check::new(
        2e-2 - gap,
        0.0,
        format!("fem {} disc {} gap {gap:e}", spectrum.lambda_extrapolated, disc.lambda),
    )])
}

fn profile_lemma(poly: &ConvexPolygon, _: f64, _: &ChainConfig) -> Result<Check> {
    let profile = parallel_profile(poly);
    let scale = poly.perimeter();
    let mut margin = f64::INFINITY;
    let mut detail = String::from("ok");
    for (j, iv) in profile.intervals.iter().enumerate() {
        let steep = -iv.slope - 2.0 * PI;
        if steep < margin {
            margin = steep;
            detail = format!("interval {j}: slope {}", iv.slope);
        }
        if j > 0 {
            let prev = profile.intervals[j - 1].slope;
            // concavity: slopes never increase
            let c = (prev - iv.slope) / scale + 1e-12;
            if c < margin {
                margin = c;
                detail = format!("interval {j}: slope {} after {prev}", iv.slope);
            }
        }
        // dA/ds = -P by central differences at the interval midpoint
        let (a, b) = (iv.start, iv.end);
        let h = 1e-4 * (b - a);
        if h > 0.0 {
            let mid = 0.5 * (a + b);
            let da = (iv.area_at(mid + h) - iv.area_at(mid - h)) / (2.0 * h);
            let rel = (da + iv.perimeter_at(mid)).abs() / scale;
            if 1e-8 - rel < margin {
                margin = 1e-8 - rel;
                detail = format!("interval {j}: dA/ds + P = {rel:e} (relative)");
            }
        }
    }
    Ok(Check::new(margin, 1e-9, detail))
}

fn perimetri(poly: &ConvexPolygon, alpha: f64, config: &ChainConfig) -> Result<Check> {
    let test = build_test(poly, alpha, config.tol)?;
    let samples = perimeter_comparison(&test, config.samples)?;
    let worst = samples
        .iter()
        .min_by(|a, b| a.gap().total_cmp(&b.gap()))
        .ok_or_else(|| Error::Internal("no samples".into()))?;
    Ok(Check::new(
        worst.gap(),
        PERIMETER_SLACK * poly.perimeter().max(1.0),
        format!("rho={} P(E_t)={} P(B_t)={}", worst.rho, worst.polygon, worst.disc),
    ))
}

fn norme_l2(poly: &ConvexPolygon, alpha: f64, config: &ChainConfig) -> Result<Check> {
    let test = build_test(poly, alpha, config.tol)?;
    let v = volume_comparison(&test, config.samples, config.quad_tol)?;
    let level = v.samples.iter().map(|s| s.disc - s.polygon).fold(f64::INFINITY, f64::min);
    let l2 = v.l2_disc - v.l2_polygon;
    let tol = 2.0 * config.quad_tol + 1e-12 * v.l2_disc;
    Ok(Check::new(
        level.min(l2),
        tol,
        format!("superlevel margin {level:e}, l2 {} <= {}", v.l2_polygon, v.l2_disc),
    ))
}

fn energie(poly: &ConvexPolygon, alpha: f64, config: &ChainConfig) -> Result<Check> {
    let test = build_test(poly, alpha, config.tol)?;
    let w = functional_terms(&test, config.quad_tol)?;
    let v = disc_terms(&test.star, config.quad_tol)?;
    Ok(Check::new(
        v.dirichlet - w.dirichlet,
        2.0 * config.quad_tol + 1e-12 * v.dirichlet,
        format!("dirichlet {} <= {}", w.dirichlet, v.dirichlet),
    ))
}

fn boundary(poly: &ConvexPolygon, alpha: f64, config: &ChainConfig) -> Result<Check> {
    let test = build_test(poly, alpha, config.tol)?;
    let w = functional_terms(&test, config.quad_tol)?;
    let v = disc_terms(&test.star, config.quad_tol)?;
    let rel = (w.boundary - v.boundary).abs() / v.boundary;
    Ok(Check::new(-rel, 1e-9, format!("boundary {} vs {}", w.boundary, v.boundary)))
}

fn closed_form_ode(poly: &ConvexPolygon, alpha: f64, config: &ChainConfig) -> Result<Check> {
    let test = build_test(poly, alpha, config.tol)?;
    let c = ode_check(&test, 1000)?;
    Ok(Check::new(-c.max_abs_error, 1e-6, format!("max error {:e}", c.max_abs_error)))
}

fn fem_simplicity(poly: &ConvexPolygon, alpha: f64, config: &ChainConfig) -> Result<Check> {
    let s = fem::solve_resolved(poly, alpha, config.fem_levels, config.tol)?;
    let bound = alpha * poly.perimeter() / poly.area();
    let margin = if s.multiplicity_check == 1 && (s.sign_constant || !s.resolved) {
        s.lambda_h.iter().map(|l| bound - l).fold(f64::INFINITY, f64::min)
    } else {
        -1.0
    };
    Ok(Check::new(
        margin,
        0.0,
        format!(
            "levels={:?} lambda_h={:?} bound={bound} multiplicity={} sign_constant={} resolved={}",
            s.levels, s.lambda_h, s.multiplicity_check, s.sign_constant, s.resolved
        ),
    ))
}

fn chain(poly: &ConvexPolygon, alpha: f64, config: &ChainConfig) -> Result<Check> {
    let r = verify_chain(poly, alpha, config)?;
    Ok(Check::new(
        r.margin_fw.min(r.margin_star),
        r.tol_chain,
        format!(
            "lambda_fem={} F={} lambda_star={} tol={:e}",
            r.lambda_fem, r.rayleigh_w, r.lambda_star, r.tol_chain
        ),
    ))
}
