//! Gauss–Legendre rules and an adaptive bisecting integrator.

use crate::error::{Error, Result};
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Nodes and weights of an `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on `P_n` from the Chebyshev-like initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Applies the rule on `[a, b]`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        half * self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Shared 20-point rule used by [`adaptive`].
pub fn rule20() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(20))
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

const MAX_DEPTH: u32 = 40;

/// Adaptive Gauss–Legendre: a panel is accepted when the 20-point value
/// on the whole panel and the sum over its halves agree to the panel's
/// share of `abs_tol`. The tolerance is floored at a few ulps of the
/// running estimate so that large integrands still terminate.
pub fn adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> Result<Quadrature> {
    if a == b {
        return Ok(Quadrature { value: 0.0, error: 0.0, evaluations: 0 });
    }
    let rule = rule20();
    let whole = rule.integrate(&f, a, b);
    let mut evals = 20;
    let out = refine(&f, rule, a, b, whole, abs_tol, 0, &mut evals)?;
    Ok(Quadrature {
        value: out.0,
        error: out.1,
        evaluations: evals,
    })
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(
    f: &F,
    rule: &GaussLegendre,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    evals: &mut usize,
) -> Result<(f64, f64)> {
    let mid = 0.5 * (a + b);
    let left = rule.integrate(f, a, mid);
    let right = rule.integrate(f, mid, b);
    *evals += 40;
    let sum = left + right;
    let err = (sum - whole).abs();
    let floor = 8.0 * f64::EPSILON * sum.abs();
    if err <= tol.max(floor) {
        return Ok((sum, err));
    }
    if depth >= MAX_DEPTH || !sum.is_finite() {
        return Err(Error::Quadrature { a, b, estimate: sum, error: err });
    }
    let (l, el) = refine(f, rule, a, mid, left, 0.5 * tol, depth + 1, evals)?;
    let (r, er) = refine(f, rule, mid, b, right, 0.5 * tol, depth + 1, evals)?;
    Ok((l + r, el + er))
}
