//! Gamma function and modified Bessel functions `I_nu`, `K_nu` of real
//! nonnegative order and nonnegative real argument.
//!
//! `I_nu` is summed from its power series for `x <= 30` and from the large
//! argument expansion of `e^{-x} I_nu(x)` beyond. `K_nu` uses the integral
//! `K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt` (trapezoidal rule,
//! which converges geometrically for this doubly-exponentially decaying
//! analytic integrand) for `x <= 30` and the large argument expansion of
//! `e^{x} K_nu(x)` beyond.
//!
//! Every evaluation returns both the plain and the exponentially scaled
//! value so callers working with large `x` can stay in scaled form.

use crate::error::{domain, Result};
use std::f64::consts::PI;

/// Argument at which both Bessel functions switch to their asymptotic forms.
pub const ASYMPTOTIC_CROSSOVER: f64 = 30.0;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `Gamma(x)` for `x > 0`.
///
/// Lanczos approximation (g = 7, 9 terms); `x < 0.5` is shifted up with
/// `Gamma(x) = Gamma(x + 1) / x`.
pub fn gammafn(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return domain(format!("gamma requires a finite positive argument, got {x}"));
    }
    if x < 0.5 {
        return Ok(lanczos(x + 1.0) / x);
    }
    Ok(lanczos(x))
}

fn lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    // split the power so t^(z+1/2) cannot overflow before e^{-t} is applied
    let half = t.powf(0.5 * (z + 0.5));
    (2.0 * PI).sqrt() * half * (half * (-t).exp()) * acc
}

/// A Bessel function value together with its exponentially scaled form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselValue {
    /// `I_nu(x)` or `K_nu(x)`; may be `inf` when not representable.
    pub value: f64,
    /// `e^{-x} I_nu(x)` or `e^{x} K_nu(x)`.
    pub scaled_value: f64,
    pub order: f64,
    pub argument: f64,
}

fn check_order_arg(order: f64, x: f64) -> Result<()> {
    if !order.is_finite() || order < 0.0 {
        return domain(format!("Bessel order must be finite and nonnegative, got {order}"));
    }
    if !x.is_finite() || x < 0.0 {
        return domain(format!("Bessel argument must be finite and nonnegative, got {x}"));
    }
    Ok(())
}

/// Modified Bessel function of the first kind, `I_order(x)`.
pub fn besseli(order: f64, x: f64) -> Result<BesselValue> {
    check_order_arg(order, x)?;
    let scaled = if x <= ASYMPTOTIC_CROSSOVER {
        besseli_series(order, x)? * (-x).exp()
    } else {
        besseli_asymptotic_scaled(order, x)
    };
    Ok(BesselValue {
        value: scaled * x.exp(),
        scaled_value: scaled,
        order,
        argument: x,
    })
}

/// `e^{-x} I_order(x)` without the bookkeeping of [`besseli`].
pub fn besseli_scaled(order: f64, x: f64) -> Result<f64> {
    Ok(besseli(order, x)?.scaled_value)
}

/// Power series `sum_m (x/2)^{2m+nu} / (m! Gamma(m+nu+1))`, unscaled.
///
/// Summation stops once the geometric tail bound `t r / (1 - r)` on the
/// remaining terms falls below one ulp of the partial sum.
pub fn besseli_series(order: f64, x: f64) -> Result<f64> {
    check_order_arg(order, x)?;
    if x == 0.0 {
        return Ok(if order == 0.0 { 1.0 } else { 0.0 });
    }
    let half = 0.5 * x;
    let q = half * half;
    let mut term = half.powf(order) / gammafn(order + 1.0)?;
    let mut sum = term;
    let mut m = 0.0_f64;
    loop {
        m += 1.0;
        term *= q / (m * (m + order));
        sum += term;
        let ratio = q / ((m + 1.0) * (m + 1.0 + order));
        if ratio < 1.0 && term * ratio / (1.0 - ratio) <= f64::EPSILON * sum {
            break;
        }
        if m > 10_000.0 {
            break;
        }
    }
    Ok(sum)
}

/// Large argument expansion of `e^{-x} I_nu(x)`; accurate for `x >~ 25`.
pub fn besseli_asymptotic_scaled(order: f64, x: f64) -> f64 {
    let mu = 4.0 * order * order;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        let next = -term * (mu - odd * odd) / (8.0 * kf * x);
        if next.abs() > term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() <= f64::EPSILON * sum.abs() {
            break;
        }
    }
    sum / (2.0 * PI * x).sqrt()
}

/// Modified Bessel function of the second kind, `K_order(x)`, `x > 0`.
pub fn besselk(order: f64, x: f64) -> Result<BesselValue> {
    check_order_arg(order, x)?;
    if x == 0.0 {
        return domain("K_nu diverges at x = 0");
    }
    let scaled = if x <= ASYMPTOTIC_CROSSOVER {
        besselk_integral_scaled(order, x)
    } else {
        besselk_asymptotic_scaled(order, x)
    };
    Ok(BesselValue {
        value: scaled * (-x).exp(),
        scaled_value: scaled,
        order,
        argument: x,
    })
}

/// `e^{x} K_order(x)` without the bookkeeping of [`besselk`].
pub fn besselk_scaled(order: f64, x: f64) -> Result<f64> {
    Ok(besselk(order, x)?.scaled_value)
}

/// Trapezoidal rule on `int_0^inf exp(-x (cosh t - 1)) cosh(nu t) dt`.
pub fn besselk_integral_scaled(order: f64, x: f64) -> f64 {
    const STEP: f64 = 0.05;
    // the integrand peaks where sinh t = nu / x
    let peak = (order / x).asinh();
    let mut sum = 0.5;
    let mut j = 1usize;
    loop {
        let t = j as f64 * STEP;
        let f = (-x * (t.cosh() - 1.0) + order * t).exp() * 0.5 * (1.0 + (-2.0 * order * t).exp());
        sum += f;
        if t > peak && f <= 1e-18 * sum {
            break;
        }
        j += 1;
        if j > 100_000 {
            break;
        }
    }
    sum * STEP
}

/// Large argument expansion of `e^{x} K_nu(x)`.
pub fn besselk_asymptotic_scaled(order: f64, x: f64) -> f64 {
    let mu = 4.0 * order * order;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        let next = term * (mu - odd * odd) / (8.0 * kf * x);
        if next.abs() > term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() <= f64::EPSILON * sum.abs() {
            break;
        }
    }
    sum * (PI / (2.0 * x)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_values() {
        assert_relative_eq!(gammafn(1.0).unwrap(), 1.0, max_relative = 1e-14);
        assert_relative_eq!(gammafn(0.5).unwrap(), PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(gammafn(5.0).unwrap(), 24.0, max_relative = 1e-14);
        let mut fact = 1.0_f64;
        for n in 1..50 {
            fact *= n as f64;
            assert_relative_eq!(gammafn(n as f64 + 1.0).unwrap(), fact, max_relative = 1e-13);
        }
        // Gamma(n + 1/2) = (2n)! sqrt(pi) / (4^n n!)
        let mut g = PI.sqrt();
        for n in 0..45 {
            assert_relative_eq!(gammafn(n as f64 + 0.5).unwrap(), g, max_relative = 1e-13);
            g *= n as f64 + 0.5;
        }
    }

    #[test]
    fn gamma_rejects_bad_input() {
        assert!(gammafn(0.0).is_err());
        assert!(gammafn(-1.5).is_err());
        assert!(gammafn(f64::NAN).is_err());
        assert!(gammafn(f64::INFINITY).is_err());
    }

    #[test]
    fn besseli_at_zero() {
        assert_eq!(besseli(0.0, 0.0).unwrap().value, 1.0);
        assert_eq!(besseli(0.7, 0.0).unwrap().value, 0.0);
        assert_eq!(besseli(2.0, 0.0).unwrap().value, 0.0);
    }

    #[test]
    fn besseli_domain() {
        assert!(besseli(-0.5, 1.0).is_err());
        assert!(besseli(0.5, -1.0).is_err());
        assert!(besselk(0.5, 0.0).is_err());
        assert!(besselk(0.5, -2.0).is_err());
    }

    #[test]
    fn half_integer_closed_forms() {
        for &x in &[0.01, 0.3, 1.0, 4.0, 12.0, 29.0, 31.0, 60.0, 250.0] {
            let i_half = (2.0 / (PI * x)).sqrt() * x.sinh();
            let i = besseli(0.5, x).unwrap();
            assert_relative_eq!(i.value, i_half, max_relative = 1e-12);
            let k_half = (PI / (2.0 * x)).sqrt() * (-x).exp();
            let k = besselk(0.5, x).unwrap();
            assert_relative_eq!(k.value, k_half, max_relative = 1e-12);
            let k_three_half = k_half * (1.0 + 1.0 / x);
            assert_relative_eq!(besselk(1.5, x).unwrap().value, k_three_half, max_relative = 1e-12);
        }
    }

    #[test]
    fn k_is_decreasing() {
        let a = besselk(0.0, 10.0).unwrap().value;
        let b = besselk(0.0, 20.0).unwrap().value;
        assert!(b < a);
    }

    #[test]
    fn scaled_values_survive_large_arguments() {
        for &x in &[100.0, 400.0, 700.0] {
            let i = besseli(1.0, x).unwrap();
            assert!(i.scaled_value.is_finite() && i.scaled_value > 0.0);
            let k = besselk(1.0, x).unwrap();
            assert!(k.scaled_value.is_finite() && k.scaled_value > 0.0);
        }
    }

    #[test]
    fn i0_at_one_matches_independent_series() {
        // sum (1/2)^{2m} / (m!)^2 over 20 terms; the tail is below 1e-40
        let mut term = 1.0_f64;
        let mut sum = 1.0_f64;
        for m in 1..20 {
            term *= 0.25 / (m * m) as f64;
            sum += term;
        }
        assert_relative_eq!(besseli(0.0, 1.0).unwrap().value, sum, max_relative = 1e-14);
        assert_relative_eq!(sum, 1.2660658777520082, max_relative = 1e-15);
    }

    #[test]
    fn branches_agree_across_crossover() {
        for &nu in &[0.0, 0.5, 1.0, 1.5, 2.0, 3.0] {
            for j in 0..=20 {
                let x = 25.0 + 0.5 * j as f64;
                let series = besseli_series(nu, x).unwrap() * (-x).exp();
                let asym = besseli_asymptotic_scaled(nu, x);
                assert_relative_eq!(series, asym, max_relative = 1e-7);
                let integral = besselk_integral_scaled(nu, x);
                let kasym = besselk_asymptotic_scaled(nu, x);
                assert_relative_eq!(integral, kasym, max_relative = 1e-7);
            }
        }
    }

    #[test]
    fn wronskian_and_recurrence() {
        let w = |nu: f64, x: f64| {
            let i0 = besseli(nu, x).unwrap().scaled_value;
            let i1 = besseli(nu + 1.0, x).unwrap().scaled_value;
            let k0 = besselk(nu, x).unwrap().scaled_value;
            let k1 = besselk(nu + 1.0, x).unwrap().scaled_value;
            i0 * k1 + i1 * k0
        };
        assert_relative_eq!(w(0.3, 1.7), 1.0 / 1.7, max_relative = 1e-10);
        for a in 0..10 {
            for b in 1..=10 {
                let (nu, x) = (0.45 * a as f64, 0.07 * (b * b) as f64);
                assert_relative_eq!(w(nu, x), 1.0 / x, max_relative = 1e-9);
                let nu = nu + 1.0;
                let lo = besseli(nu - 1.0, x).unwrap().value;
                let hi = besseli(nu + 1.0, x).unwrap().value;
                let mid = besseli(nu, x).unwrap().value;
                assert!((lo - hi - 2.0 * nu / x * mid).abs() <= 1e-12 * lo);
            }
        }
    }

    #[test]
    fn i_is_increasing() {
        for &nu in &[0.0, 0.5, 2.5] {
            let vals: Vec<f64> = (1..200).map(|j| besseli(nu, 0.25 * j as f64).unwrap().value).collect();
            assert!(vals.windows(2).all(|w| w[1] > w[0]));
        }
    }
}
