use std::f64::consts::PI;

use super::{series::g_series, InterpParams};
use crate::numerics::{complex_gamma, integrate_semi_infinite, rpow, ComplexScalar, EvalConfig, SemiInfinite};
use crate::special::{lerch_phi, PhiArgs};
use crate::{Error, Result};

/// `f_{k,s,v}(y)`, with `f(0) = 0`.
pub fn f_ksv(params: &InterpParams, y: f64) -> ComplexScalar {
    if y == 0.0 {
        return ComplexScalar::new(0.0, 0.0);
    }
    let s = params.s;
    // θ = (2v - 1)y - πk/2
    let x = (2.0 * params.v_value() - 1.0) * y;
    let (sin_theta, cos_theta) = if params.k == 0 { (x.sin(), x.cos()) } else { (-x.cos(), x.sin()) };
    let half = s * (PI / 2.0);
    let odd = sin_theta / half.sin();
    let even = y.signum() * cos_theta / half.cos();
    -PI * rpow(2.0, s - 2.0) * rpow(y.abs(), s) * (odd + even)
}

/// `F_{k,s,v}(y) = ∫_0^∞ t^{s-1} e^{(1-v)t} / ((e^t - (-1)^k)(1 + (t/2y)²)) dt`.
pub fn integral_f_ksv(params: &InterpParams, y: f64, config: &EvalConfig) -> Result<ComplexScalar> {
    integral_raw(params.k, params.s, params.v_value(), y, config)
}

pub(crate) fn integral_raw(k: u8, s: ComplexScalar, v: f64, y: f64, config: &EvalConfig) -> Result<ComplexScalar> {
    let floor = if k == 0 { 1.0 } else { 0.0 };
    if s.re <= floor {
        return Err(Error::domain(format!("the integral needs Re s > {floor} for k = {k}, got {}", s.re)));
    }
    if y == 0.0 || !y.is_finite() {
        return Err(Error::domain("the integral is defined for finite y != 0"));
    }
    let scale = 1.0 / (2.0 * y);
    let shape = SemiInfinite { endpoint_exponent: s.re - 2.0 + k as f64, decay_rate: v };
    let kernel = move |t: f64| {
        let damping = 1.0 / (1.0 + (t * scale).powi(2));
        rpow(t, s - 1.0) * damping
    };
    if k == 0 {
        integrate_semi_infinite(|t| kernel(t) * ((-v * t).exp() / -(-t).exp_m1()), shape, config)
    } else {
        integrate_semi_infinite(|t| kernel(t) * ((-v * t).exp() / (1.0 + (-t).exp())), shape, config)
    }
}

/// `Σ_{j=1}^{m} (-1)^{j-1} Γ(s-2j) Φ((-1)^k, s-2j, v) (2y)^{2j}`.
pub(crate) fn polynomial_part(
    k: u8,
    s: ComplexScalar,
    v: f64,
    y: f64,
    m: usize,
    config: &EvalConfig,
) -> Result<ComplexScalar> {
    let z = if k == 0 { 1 } else { -1 };
    let mut sum = ComplexScalar::new(0.0, 0.0);
    let mut power = 1.0;
    for j in 1..=m {
        power *= 4.0 * y * y;
        let shifted = s - 2.0 * j as f64;
        let phi = lerch_phi(PhiArgs::new(z, shifted, v)?, config)?;
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        sum += complex_gamma(shifted, config.pole_guard)? * phi * (sign * power);
    }
    Ok(sum)
}

/// `F_{k,s,v}(y)` rebuilt from `F_{k,s-2m,v}(y)`.
pub fn recurrence_f(params: &InterpParams, y: f64, m: usize, config: &EvalConfig) -> Result<ComplexScalar> {
    let (k, s, v) = (params.k, params.s, params.v_value());
    let reduced = s - 2.0 * m as f64;
    let floor = if k == 0 { 1.0 } else { 0.0 };
    if reduced.re <= floor {
        return Err(Error::domain(format!(
            "reducing Re s by {} leaves the convergence domain Re s > {floor}",
            2 * m
        )));
    }
    let poly = polynomial_part(k, s, v, y, m, config)?;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let base = integral_raw(k, reduced, v, y, config)?;
    Ok(poly + base * (sign * (2.0 * y).powi(2 * m as i32)))
}

/// `f(y) - sin(y + πk/2) F(y)`; valid for every real `y` and every `v`.
pub fn g_via_identity(params: &InterpParams, y: f64, config: &EvalConfig) -> Result<ComplexScalar> {
    if y == 0.0 {
        // F(y) → 0 as y → 0 and f(0) = 0
        return Ok(ComplexScalar::new(0.0, 0.0));
    }
    let big_f = integral_f_ksv(params, y, config)?;
    Ok(f_ksv(params, y) - big_f * params.sin_factor(y))
}

/// `Δ(y) = f(y) - g(y)`, evaluated as `sin(y + πk/2) F(y)` for `y != 0`.
pub fn delta(params: &InterpParams, y: f64, config: &EvalConfig) -> Result<ComplexScalar> {
    if y == 0.0 {
        return match g_series(params, 0.0, config) {
            Ok(g) => Ok(f_ksv(params, 0.0) - g),
            Err(Error::IrrationalV) => Ok(ComplexScalar::new(0.0, 0.0)),
            Err(e) => Err(e),
        };
    }
    Ok(integral_f_ksv(params, y, config)? * params.sin_factor(y))
}

/// The common value of `f` and `g` at the node `π(n + k/2)`.
pub fn node_value(params: &InterpParams, n: i64) -> ComplexScalar {
    let half_index = n as f64 + params.k as f64 / 2.0;
    if half_index == 0.0 {
        return ComplexScalar::new(0.0, 0.0);
    }
    let s = params.s;
    let parity = if (n + params.k as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let angle = PI * (2.0 * n as f64 + params.k as f64) * params.v_value() + s * (PI / 2.0) * half_index.signum();
    -PI * rpow(2.0, s - 1.0) * parity * rpow(PI * half_index.abs(), s) * angle.sin() / (s * PI).sin()
}
