//! Dirichlet L-functions and the interpolation pair `φ_{s,q}`, `γ_{s,q}`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::analysis::{extract_limit, LimitEstimate, LimitSource, DEFAULT_Y0};
use crate::characters::{chi_3, DirichletCharacter, EXCEPTIONAL_THRESHOLD};
use crate::interpolation::pole_series::{PoleSeries, NEAR_NODE_TOL, PI_LO};
use crate::interpolation::{f_ksv, g_series, g_via_identity, InterpParams, Shift};
use crate::numerics::{
    complex_gamma, distance_to_integer, expm1_c, integrate_semi_infinite, rpow, ComplexScalar, EvalConfig,
    SemiInfinite,
};
use crate::special::{hurwitz_weighted_sum, riemann_zeta};
use crate::{Error, Result};

const NODE_OFFSETS: [f64; 2] = [1e-3, 5e-4];

/// `s` together with a nonprincipal character of modulus `q > 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LInterpParams {
    pub s: ComplexScalar,
    pub chi: DirichletCharacter,
}

impl LInterpParams {
    pub fn new(s: ComplexScalar, chi: DirichletCharacter) -> Result<Self> {
        let params = Self { s, chi };
        params.validate(&EvalConfig::default())?;
        Ok(params)
    }

    pub fn validate(&self, config: &EvalConfig) -> Result<()> {
        validate_s(self.s, config)?;
        if self.chi.modulus() < 2 || self.chi.is_principal() {
            return Err(Error::domain("a nonprincipal character with q > 1 is required"));
        }
        Ok(())
    }

    pub fn q(&self) -> u64 {
        self.chi.modulus()
    }

    /// `⌊Re s / 2⌋`.
    pub fn m1(&self) -> usize {
        (self.s.re / 2.0).floor().max(0.0) as usize
    }
}

fn validate_s(s: ComplexScalar, config: &EvalConfig) -> Result<()> {
    if !(s.re > 0.0 && s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::domain(format!("Re s must be positive, got {}", s.re)));
    }
    if distance_to_integer(s) < config.pole_guard {
        return Err(Error::domain(format!("s = {s} is within {:e} of an integer", config.pole_guard)));
    }
    let nearest_even = 2.0 * (s.re / 2.0).round();
    if nearest_even >= 2.0 && (s.re - nearest_even).abs() < config.pole_guard {
        return Err(Error::domain(format!("Re s must avoid {{2, 4, ...}}, got {}", s.re)));
    }
    Ok(())
}

/// `L(s, χ)`.
///
/// Nonprincipal characters use `q^{-s} Σ χ(l) ζ(s, l/q)` for every `Re s > 0`;
/// the modulus-1 and principal characters go through `ζ(s)` and the Euler
/// factors of the primes dividing `q`.
pub fn l_value(s: ComplexScalar, chi: &DirichletCharacter, config: &EvalConfig) -> Result<ComplexScalar> {
    if s.re <= 0.0 {
        return Err(Error::domain(format!("L(s, χ) is evaluated for Re s > 0, got {}", s.re)));
    }
    let q = chi.modulus();
    if q == 1 || chi.is_principal() {
        let mut value = riemann_zeta(s, config)?;
        for p in (2..=q).filter(|&p| q % p == 0 && is_prime(p)) {
            value *= -expm1_c(-s * (p as f64).ln());
        }
        return Ok(value);
    }
    let terms: Vec<(ComplexScalar, f64)> = (1..q)
        .filter(|&l| chi.value(l as i64) != ComplexScalar::new(0.0, 0.0))
        .map(|l| (chi.value(l as i64), l as f64 / q as f64))
        .collect();
    Ok(hurwitz_weighted_sum(s, &terms, config)? * rpow(q as f64, -s))
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `φ_{s,q}(y)`.
pub fn phi_sq(params: &LInterpParams, y: f64) -> ComplexScalar {
    if y == 0.0 {
        return ComplexScalar::new(0.0, 0.0);
    }
    let (s, q) = (params.s, params.q() as f64);
    let (mut sines, mut cosines) = (ComplexScalar::new(0.0, 0.0), ComplexScalar::new(0.0, 0.0));
    for l in 1..params.q() {
        let x = params.chi.value(l as i64);
        let angle = (2.0 * l as f64 / q - 1.0) * y;
        sines += x * angle.sin();
        cosines += x * angle.cos();
    }
    let half = s * (PI / 2.0);
    -PI * rpow(2.0, s - 2.0) * rpow(y.abs(), s) * (sines / half.sin() + cosines * y.signum() / half.cos())
}

/// `F*_{s,q}(y) = Σ χ(l) F_{0,s,l/q}(y)` as one integral, convergent for all
/// `Re s > 0` because `Σ χ(l) = 0`.
pub fn fstar(params: &LInterpParams, y: f64, config: &EvalConfig) -> Result<ComplexScalar> {
    fstar_raw(params.s, &params.chi, y, config)
}

fn fstar_raw(s: ComplexScalar, chi: &DirichletCharacter, y: f64, config: &EvalConfig) -> Result<ComplexScalar> {
    if s.re <= 0.0 {
        return Err(Error::domain(format!("F* needs Re s > 0, got {}", s.re)));
    }
    if y == 0.0 || !y.is_finite() {
        return Err(Error::domain("F* is defined for finite y != 0"));
    }
    let q = chi.modulus();
    // (χ(l), l/q) split into real and imaginary tables
    let split = |part: fn(ComplexScalar) -> f64| -> Vec<(f64, f64)> {
        (1..q)
            .map(|l| (part(chi.value(l as i64)), l as f64 / q as f64))
            .filter(|&(x, _)| x != 0.0)
            .collect()
    };
    let real = split(|x| x.re);
    let imag = split(|x| x.im);
    let scale = 1.0 / (2.0 * y);
    let numerator = move |t: f64, table: &[(f64, f64)]| -> f64 {
        if t <= 1.0 {
            // Σ χ(l) e^{(1-l/q)t} / (e^t - 1) with the vanishing constant removed
            table.iter().map(|&(x, r)| x * ((1.0 - r) * t).exp_m1()).sum::<f64>() / t.exp_m1()
        } else {
            table.iter().map(|&(x, r)| x * (-r * t).exp()).sum::<f64>() / -(-t).exp_m1()
        }
    };
    let integrand = |t: f64| {
        let weight = ComplexScalar::new(numerator(t, &real), numerator(t, &imag));
        rpow(t, s - 1.0) * weight / (1.0 + (t * scale).powi(2))
    };
    let shape = SemiInfinite { endpoint_exponent: s.re - 1.0, decay_rate: 1.0 / q as f64 };
    integrate_semi_infinite(integrand, shape, config)
}

/// `Σ_{j=1}^{m} (-1)^{j-1} q^{s-2j} Γ(s-2j) L(s-2j, χ) (2y)^{2j}`.
fn l_polynomial(
    s: ComplexScalar,
    chi: &DirichletCharacter,
    y: f64,
    m: usize,
    config: &EvalConfig,
) -> Result<ComplexScalar> {
    let mut sum = ComplexScalar::new(0.0, 0.0);
    let mut power = 1.0;
    for j in 1..=m {
        power *= 4.0 * y * y;
        let shifted = s - 2.0 * j as f64;
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        let scale = rpow(chi.modulus() as f64, shifted);
        sum += complex_gamma(shifted, config.pole_guard)? * l_value(shifted, chi, config)? * scale * (sign * power);
    }
    Ok(sum)
}

/// `F*_{s,q}(y)` rebuilt from `F*_{s-2m₁,q}(y)`.
pub fn fstar_recurrence(params: &LInterpParams, y: f64, config: &EvalConfig) -> Result<ComplexScalar> {
    let m = params.m1();
    let reduced = params.s - 2.0 * m as f64;
    let base = fstar_raw(reduced, &params.chi, y, config)?;
    let poly = l_polynomial(params.s, &params.chi, y, m, config)?;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    Ok(poly + base * (sign * (2.0 * y).powi(2 * m as i32)))
}

/// `γ_{s,q}(y) = φ_{s,q}(y) - sin(y) F*_{s,q}(y)`.
pub fn gamma_sq(params: &LInterpParams, y: f64, config: &EvalConfig) -> Result<ComplexScalar> {
    if y == 0.0 {
        return Ok(ComplexScalar::new(0.0, 0.0));
    }
    Ok(phi_sq(params, y) - fstar(params, y, config)? * y.sin())
}

/// `γ_{s,q}(y)` from its explicit series over `n ∉ E(χ)`.
pub fn gamma_sq_series(params: &LInterpParams, y: f64, config: &EvalConfig) -> Result<ComplexScalar> {
    let (s, q) = (params.s, params.q());
    let m = params.m1();
    let weights: Vec<ComplexScalar> = (0..q as i64)
        .map(|n| {
            if params.chi.exponential_sum(n).norm() < EXCEPTIONAL_THRESHOLD {
                return ComplexScalar::new(0.0, 0.0);
            }
            (1..q as i64)
                .map(|l| {
                    let angle = 2.0 * PI * ((n * l).rem_euclid(q as i64) as f64) / q as f64;
                    params.chi.value(l) * (s * (PI / 2.0) + angle).sin()
                })
                .sum()
        })
        .collect();
    let series = PoleSeries {
        spacing: PI,
        spacing_lo: PI_LO,
        offset: 0.0,
        first: 1,
        weights: &weights,
        exponent: s - (2 * m + 1) as f64,
        paired: false,
    }
    .eval(y, config)?;
    let poly = l_polynomial(s, &params.chi, y, m, config)?;
    let bracket = poly + series * (PI * rpow(2.0, s) * y.powi(2 * (m as i32 + 1))) / (s * PI).sin();
    Ok(-bracket * y.sin())
}

/// `γ_{s,q}(πn)` from series values at symmetric offsets around the node.
pub fn gamma_sq_at_node(params: &LInterpParams, n: i64, config: &EvalConfig) -> Result<ComplexScalar> {
    if n == 0 {
        return gamma_sq_series(params, 0.0, config);
    }
    symmetric_limit(|y| gamma_sq_series(params, y, config), PI * n as f64)
}

/// The common value of `φ_{s,q}` and `γ_{s,q}` at `πn`.
pub fn gamma_sq_node_value(params: &LInterpParams, n: i64) -> ComplexScalar {
    let q = params.q() as i64;
    if n == 0 || params.chi.exponential_sum(n).norm() < EXCEPTIONAL_THRESHOLD {
        return ComplexScalar::new(0.0, 0.0);
    }
    let s = params.s;
    let sign = n.signum() as f64;
    let sum: ComplexScalar = (1..q)
        .map(|l| {
            let angle = 2.0 * PI * ((n * l).rem_euclid(q) as f64) / q as f64;
            params.chi.value(l) * (s * (PI / 2.0) * sign + angle).sin()
        })
        .sum();
    let parity = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    -PI * rpow(2.0, s - 1.0) * parity * rpow(PI * n.unsigned_abs() as f64, s) * sum / (s * PI).sin()
}

/// `L(s, χ)` recovered from the limit of `(φ - γ)/sin y`, with its error
/// estimate.
pub fn l_limit(params: &LInterpParams, y_max: f64, config: &EvalConfig) -> Result<LimitEstimate> {
    let raw = extract_limit(&LimitSource::LFunction(params.clone()), DEFAULT_Y0, y_max, config)?;
    let norm = rpow(params.q() as f64, params.s) * complex_gamma(params.s, config.pole_guard)?;
    Ok(LimitEstimate { limit: raw.limit / norm, error_estimate: raw.error_estimate / norm.norm(), ..raw })
}

/// `φ*_{s,3}(y) = π(3|y|)^s / (2 sin(πs/2))`.
pub fn phi_star_q3(s: ComplexScalar, y: f64) -> ComplexScalar {
    if y == 0.0 {
        return ComplexScalar::new(0.0, 0.0);
    }
    PI * rpow(3.0 * y.abs(), s) / ((s * (PI / 2.0)).sin() * 2.0)
}

/// `(φ*_{s,3}(y), γ*_{s,3}(y))` with `γ* = φ* - (1 + 2cos y) F*_{s,3}(3y/2)`.
pub fn starred_q3(s: ComplexScalar, y: f64, config: &EvalConfig) -> Result<(ComplexScalar, ComplexScalar)> {
    let params = LInterpParams::new(s, chi_3())?;
    let phi = phi_star_q3(s, y);
    if y == 0.0 {
        return Ok((phi, ComplexScalar::new(0.0, 0.0)));
    }
    let gamma = phi - fstar(&params, 1.5 * y, config)? * (1.0 + 2.0 * y.cos());
    Ok((phi, gamma))
}

/// `γ*_{s,3}(y)` from its own series with nodes `2π(d ± 1/3)`.
pub fn gamma_star_q3_series(s: ComplexScalar, y: f64, config: &EvalConfig) -> Result<ComplexScalar> {
    let params = LInterpParams::new(s, chi_3())?;
    let m = params.m1();
    let zero = ComplexScalar::new(0.0, 0.0);
    let one = ComplexScalar::new(1.0, 0.0);
    let weights = [zero, -one, one];
    // 2π/3 split into a double and its rounding error
    let hi = 2.0 * PI / 3.0;
    let lo = (-3.0f64).mul_add(hi, 2.0 * PI) / 3.0 + 2.0 * PI_LO / 3.0;
    let series = PoleSeries {
        spacing: hi,
        spacing_lo: lo,
        offset: 0.0,
        first: 1,
        weights: &weights,
        exponent: s - (2 * m + 1) as f64,
        paired: false,
    }
    .eval(y, config)?;
    let poly = l_polynomial(s, &params.chi, 1.5 * y, m, config)?;
    let scale = PI * rpow(3.0, s - 0.5) * y.powi(2 * (m as i32 + 1)) / (s * (PI / 2.0)).sin();
    Ok((1.0 + 2.0 * y.cos()) * (series * scale - poly))
}

/// `γ*_{s,3}(y) = γ_{s,3}(3y/2) / sin(y/2)` using the series path for `γ`;
/// within `1e-6` of `2πℤ` the removable singularity is resolved by symmetric
/// offsets.
pub fn gamma_star_q3_scaled(s: ComplexScalar, y: f64, config: &EvalConfig) -> Result<ComplexScalar> {
    let params = LInterpParams::new(s, chi_3())?;
    let quotient = |y: f64| -> Result<ComplexScalar> {
        Ok(gamma_sq_series(&params, 1.5 * y, config)? / (0.5 * y).sin())
    };
    let nearest = 2.0 * PI * (y / (2.0 * PI)).round();
    if (y - nearest).abs() < NEAR_NODE_TOL {
        if nearest == 0.0 {
            return Ok(ComplexScalar::new(0.0, 0.0));
        }
        return symmetric_limit(quotient, nearest);
    }
    quotient(y)
}

/// `φ*_{s,3}` at the node `2π(d ± 1/3)`.
pub fn starred_q3_node_value(s: ComplexScalar, node: f64) -> ComplexScalar {
    PI * rpow(3.0, s) * rpow(node.abs(), s) / ((s * (PI / 2.0)).sin() * 2.0)
}

/// `(2^s f_{1,s,1/2}(y), 2^s g_{1,s,1/2}(y))`.
pub fn starred_q4(s: ComplexScalar, y: f64, config: &EvalConfig) -> Result<(ComplexScalar, ComplexScalar)> {
    validate_s(s, config)?;
    let params = InterpParams::new(1, s, Shift::rational(1, 2)?)?;
    let factor = rpow(2.0, s);
    Ok((f_ksv(&params, y) * factor, g_via_identity(&params, y, config)? * factor))
}

/// Series-path variant of the second component of [`starred_q4`].
pub fn gamma_star_q4_series(s: ComplexScalar, y: f64, config: &EvalConfig) -> Result<ComplexScalar> {
    validate_s(s, config)?;
    let params = InterpParams::new(1, s, Shift::rational(1, 2)?)?;
    Ok(g_series(&params, y, config)? * rpow(2.0, s))
}

/// Limit at `center` of a function known only away from it, from symmetric
/// averages at two offsets.
fn symmetric_limit<F>(f: F, center: f64) -> Result<ComplexScalar>
where
    F: Fn(f64) -> Result<ComplexScalar>,
{
    let mut averages = [ComplexScalar::new(0.0, 0.0); 2];
    for (avg, h) in averages.iter_mut().zip(NODE_OFFSETS) {
        *avg = (f(center + h)? + f(center - h)?) * 0.5;
    }
    let ratio = (NODE_OFFSETS[0] / NODE_OFFSETS[1]).powi(2);
    Ok((averages[1] * ratio - averages[0]) / (ratio - 1.0))
}
