//! Lerch transcendent at `z = ±1`, Hurwitz and Riemann zeta, Dirichlet beta.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::numerics::{
    alternating_sum_accelerated, complex_gamma, exprel_c, expm1_c, integrate_semi_infinite, rpow, CompensatedSum,
    ComplexScalar, EvalConfig, SemiInfinite,
};
use crate::{Error, Result};

/// `B_{2i} / (2i)!` for `i = 1..=10`.
const BERNOULLI_OVER_FACTORIAL: [f64; 10] = [
    0.083_333_333_333_333_33,
    -0.001_388_888_888_888_889,
    3.306_878_306_878_307e-5,
    -8.267_195_767_195_768e-7,
    2.087_675_698_786_81e-8,
    -5.284_190_138_687_493e-10,
    1.338_253_653_068_467_9e-11,
    -3.389_680_296_322_582_7e-13,
    8.586_062_056_277_845e-15,
    -2.174_868_698_558_062e-16,
];

/// Lowest real part reachable by the Euler-Maclaurin continuation.
pub const CONTINUATION_FLOOR: f64 = -19.0;

/// Arguments of `Φ(z, s, v)` with `z ∈ {+1, -1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiArgs {
    pub z: i32,
    pub s: ComplexScalar,
    pub v: f64,
}

impl PhiArgs {
    pub fn new(z: i32, s: ComplexScalar, v: f64) -> Result<Self> {
        let args = Self { z, s, v };
        args.validate()?;
        Ok(args)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.v > 0.0 && self.v.is_finite()) {
            return Err(Error::domain(format!("v must be positive, got {}", self.v)));
        }
        match self.z {
            1 if self.s.re > 1.0 => Ok(()),
            1 => Err(Error::domain(format!("z = 1 requires Re s > 1, got {}", self.s.re))),
            -1 if self.s.re > 0.0 => Ok(()),
            -1 => Err(Error::domain(format!("z = -1 requires Re s > 0, got {}", self.s.re))),
            z => Err(Error::domain(format!("z must be +1 or -1, got {z}"))),
        }
    }
}

/// `Φ(z, s, v)` for `z = ±1`.
///
/// Series path: Euler-Maclaurin for `z = 1`, accelerated alternating series
/// for `z = -1`. With `config.cross_check` the integral representation is
/// evaluated as well and a disagreement beyond the combined tolerance is an
/// error.
pub fn lerch_phi(args: PhiArgs, config: &EvalConfig) -> Result<ComplexScalar> {
    args.validate()?;
    let series = match args.z {
        1 => hurwitz_zeta(args.s, args.v, config)?,
        _ => alternating_sum_accelerated(|n| signed(n) * rpow(args.v + n as f64, -args.s), config)?,
    };
    if config.cross_check {
        let integral = lerch_phi_integral(args, config)?;
        let tol = cross_check_tolerance(args, series, config)?;
        let diff = (series - integral).norm();
        if diff > tol {
            return Err(Error::PathMismatch(format!(
                "Phi({}, {}, {}): series {series} vs integral {integral} (|diff| = {diff:e}, tol = {tol:e})",
                args.z, args.s, args.v
            )));
        }
    }
    Ok(series)
}

/// `Φ(z, s, v)` from `(1/Γ(s)) ∫_0^∞ t^{s-1} e^{(1-v)t} / (e^t - z) dt`.
pub fn lerch_phi_integral(args: PhiArgs, config: &EvalConfig) -> Result<ComplexScalar> {
    args.validate()?;
    let (s, v) = (args.s, args.v);
    let gamma = complex_gamma(s, config.pole_guard)?;
    let integral = if args.z == 1 {
        integrate_semi_infinite(
            |t| rpow(t, s - 1.0) * ((-v * t).exp() / -(-t).exp_m1()),
            SemiInfinite { endpoint_exponent: s.re - 2.0, decay_rate: v },
            config,
        )?
    } else {
        integrate_semi_infinite(
            |t| rpow(t, s - 1.0) * ((-v * t).exp() / (1.0 + (-t).exp())),
            SemiInfinite { endpoint_exponent: s.re - 1.0, decay_rate: v },
            config,
        )?
    };
    Ok(integral / gamma)
}

// The integral loses accuracy relative to the result when `|Γ(s)|` is much
// smaller than `∫|integrand|`, which happens for large `|Im s|`.
fn cross_check_tolerance(args: PhiArgs, reference: ComplexScalar, config: &EvalConfig) -> Result<f64> {
    let sigma = ComplexScalar::new(args.s.re, 0.0);
    let gamma_sigma = complex_gamma(sigma, config.pole_guard)?.re;
    let mass = if args.z == 1 {
        hurwitz_zeta(sigma, args.v, config)?.re
    } else {
        args.v.powf(-args.s.re)
    };
    let condition = gamma_sigma * mass / complex_gamma(args.s, config.pole_guard)?.norm();
    Ok(10.0 * ((config.quad_rel_tol + config.series_rel_tol) * reference.norm() + 100.0 * f64::EPSILON * condition))
}

/// Hurwitz zeta `ζ(s, v)`.
///
/// Converges as a series for `Re s > 1`; the Euler-Maclaurin formula continues
/// it to `Re s > -19`.
pub fn hurwitz_zeta(s: ComplexScalar, v: f64, config: &EvalConfig) -> Result<ComplexScalar> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::domain(format!("v must be positive, got {v}")));
    }
    hurwitz_weighted_sum(s, &[(ComplexScalar::new(1.0, 0.0), v)], config)
}

/// `Σ_{n≥0} (a+n)^{-s}` for `Re s > 1`, `a > 0`.
pub fn hurwitz_tail(s: ComplexScalar, a: f64, config: &EvalConfig) -> Result<ComplexScalar> {
    if s.re <= 1.0 {
        return Err(Error::domain(format!("tail sum needs Re s > 1, got {}", s.re)));
    }
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::domain(format!("offset must be positive, got {a}")));
    }
    hurwitz_weighted_sum(s, &[(ComplexScalar::new(1.0, 0.0), a)], config)
}

/// `Σ_r w_r ζ(s, a_r)` by Euler-Maclaurin with a common shift.
///
/// When the weights sum to zero the pole at `s = 1` cancels, and the pole
/// terms are combined without cancellation so the result is smooth through
/// `s = 1`. Otherwise `s` must keep `pole_guard` away from 1.
pub fn hurwitz_weighted_sum(
    s: ComplexScalar,
    terms: &[(ComplexScalar, f64)],
    config: &EvalConfig,
) -> Result<ComplexScalar> {
    if s.re <= CONTINUATION_FLOOR {
        return Err(Error::domain(format!(
            "Euler-Maclaurin continuation needs Re s > {CONTINUATION_FLOOR}, got {}",
            s.re
        )));
    }
    if terms.iter().any(|&(_, a)| !(a > 0.0 && a.is_finite())) {
        return Err(Error::domain("Hurwitz offsets must be positive"));
    }
    let weight_total: ComplexScalar = terms.iter().map(|&(w, _)| w).sum();
    let weight_scale: f64 = terms.iter().map(|&(w, _)| w.norm()).sum();
    let pole_free = weight_total.norm() <= 1e-14 * weight_scale;
    let one = ComplexScalar::new(1.0, 0.0);
    if !pole_free && (s - one).norm() < config.pole_guard {
        return Err(Error::PoleProximity { re: s.re, im: s.im });
    }

    let shift_floor = 20f64.max(s.im.abs() + 10.0).max(0.8 * (s.norm() + 20.0));
    let mut acc = CompensatedSum::new();
    for &(w, a) in terms {
        if w == ComplexScalar::new(0.0, 0.0) {
            continue;
        }
        let direct = (shift_floor - a).ceil().max(0.0) as usize;
        for n in 0..direct {
            acc.add(w * rpow(a + n as f64, -s));
        }
        let big_a = a + direct as f64;
        let ln_a = big_a.ln();
        let pow = (-s * ln_a).exp();
        // A^{1-s}/(s-1); near s = 1 the cancelling constant 1/(s-1) is removed
        // first, elsewhere removing it would itself cancel
        let pole = if pole_free && (s - one).norm() < 0.5 {
            -ln_a * exprel_c((one - s) * ln_a)
        } else {
            pow * big_a / (s - one)
        };
        acc.add(w * pole);
        let mut corr = CompensatedSum::new();
        corr.add(pow * 0.5);
        let mut poch = s;
        let mut power = pow / big_a;
        let inv_sq = 1.0 / (big_a * big_a);
        for (i, &b) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
            corr.add(poch * power * b);
            let m = 2.0 * (i + 1) as f64;
            poch = poch * (s + (m - 1.0)) * (s + m);
            power *= inv_sq;
        }
        acc.add(w * corr.value());
    }
    Ok(acc.value())
}

/// Riemann zeta for `Re s > 0`.
///
/// `η(s) / (1 - 2^{1-s})` with the alternating series accelerated for
/// `Re s ≤ 1.5`, Euler-Maclaurin above.
pub fn riemann_zeta(s: ComplexScalar, config: &EvalConfig) -> Result<ComplexScalar> {
    if s.re <= 0.0 {
        return Err(Error::domain(format!("riemann_zeta needs Re s > 0, got {}", s.re)));
    }
    let one = ComplexScalar::new(1.0, 0.0);
    if (s - one).norm() < config.pole_guard {
        return Err(Error::PoleProximity { re: s.re, im: s.im });
    }
    if s.re > 1.5 {
        return hurwitz_zeta(s, 1.0, config);
    }
    // 1 - 2^{1-s} = -expm1((1-s) ln 2)
    let factor = -expm1_c((one - s) * LN_2);
    if factor.norm() < config.pole_guard {
        return Err(Error::PoleProximity { re: s.re, im: s.im });
    }
    let eta = alternating_sum_accelerated(|n| signed(n) * rpow(n as f64 + 1.0, -s), config)?;
    Ok(eta / factor)
}

/// Dirichlet beta `Σ (-1)^n (2n+1)^{-s}` for `Re s > 0`.
pub fn dirichlet_beta(s: ComplexScalar, config: &EvalConfig) -> Result<ComplexScalar> {
    if s.re <= 0.0 {
        return Err(Error::domain(format!("dirichlet_beta needs Re s > 0, got {}", s.re)));
    }
    alternating_sum_accelerated(|n| signed(n) * rpow(2.0 * n as f64 + 1.0, -s), config)
}

fn signed(n: usize) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> ComplexScalar {
        ComplexScalar::new(re, im)
    }

    fn rel(a: ComplexScalar, b: ComplexScalar) -> f64 {
        (a - b).norm() / b.norm()
    }

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    #[test]
    fn zeta_two() {
        let z = riemann_zeta(c(2.0, 0.0), &cfg()).unwrap();
        assert!(rel(z, c(PI * PI / 6.0, 0.0)) < 1e-14);
        let phi = lerch_phi(PhiArgs::new(1, c(2.0, 0.0), 1.0).unwrap(), &cfg()).unwrap();
        assert!(rel(phi, c(PI * PI / 6.0, 0.0)) < 1e-14);
    }

    #[test]
    fn zeta_on_both_sides_of_the_switch() {
        let lo = riemann_zeta(c(1.5, 0.0), &cfg()).unwrap();
        let hi = hurwitz_zeta(c(1.5, 0.0), 1.0, &cfg()).unwrap();
        assert!(rel(lo, hi) < 1e-12);
        let s = c(1.2, 7.0);
        assert!(rel(riemann_zeta(s, &cfg()).unwrap(), hurwitz_zeta(s, 1.0, &cfg()).unwrap()) < 1e-11);
    }

    #[test]
    fn alternating_lerch() {
        let v = lerch_phi(PhiArgs::new(-1, c(1.0, 0.0), 1.0).unwrap(), &cfg()).unwrap();
        assert!((v - c(LN_2, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn beta_values() {
        assert!((dirichlet_beta(c(1.0, 0.0), &cfg()).unwrap() - c(PI / 4.0, 0.0)).norm() < 1e-14);
        let catalan = 0.915_965_594_177_219;
        assert!((dirichlet_beta(c(2.0, 0.0), &cfg()).unwrap().re - catalan).abs() < 1e-14);
    }

    #[test]
    fn continuation_special_values() {
        // ζ(0, a) = 1/2 - a and ζ(-1, 1) = -1/12
        for a in [0.3, 1.0, 2.7] {
            let z = hurwitz_zeta(c(0.0, 0.0), a, &cfg()).unwrap();
            assert!((z - c(0.5 - a, 0.0)).norm() < 1e-13, "a = {a}");
        }
        let z = hurwitz_zeta(c(-1.0, 0.0), 1.0, &cfg()).unwrap();
        assert!((z - c(-1.0 / 12.0, 0.0)).norm() < 1e-13);
        assert!(hurwitz_zeta(c(-19.5, 0.0), 1.0, &cfg()).is_err());
    }

    #[test]
    fn pole_free_combination_through_one() {
        // 4^{-s}(ζ(s,1/4) - ζ(s,3/4)) = β(s), also at s = 1
        let terms = [(c(1.0, 0.0), 0.25), (c(-1.0, 0.0), 0.75)];
        for s in [c(1.0, 0.0), c(1.0 + 1e-9, 0.0), c(0.6, 2.0), c(2.5, -1.0)] {
            let l = hurwitz_weighted_sum(s, &terms, &cfg()).unwrap() * rpow(4.0, -s);
            assert!(rel(l, dirichlet_beta(s, &cfg()).unwrap()) < 1e-12, "s = {s}");
        }
    }

    #[test]
    fn balanced_combination_away_from_one() {
        let terms = [(c(-1.0, 0.0), 37.5), (c(1.0, 0.0), 38.0)];
        for s in [c(2.0, 0.0), c(4.0, 0.0), c(6.0, 1.0)] {
            let combined = hurwitz_weighted_sum(s, &terms, &cfg()).unwrap();
            let separate = hurwitz_zeta(s, 38.0, &cfg()).unwrap() - hurwitz_zeta(s, 37.5, &cfg()).unwrap();
            assert!(rel(combined, separate) < 1e-12, "s = {s}");
        }
    }

    #[test]
    fn pole_guard() {
        assert!(matches!(hurwitz_zeta(c(1.0, 0.0), 0.5, &cfg()), Err(Error::PoleProximity { .. })));
        assert!(matches!(riemann_zeta(c(1.0 + 1e-10, 0.0), &cfg()), Err(Error::PoleProximity { .. })));
        let s = c(1.0, 2.0 * PI / LN_2);
        assert!(matches!(riemann_zeta(s, &cfg()), Err(Error::PoleProximity { .. })));
    }

    #[test]
    fn domains() {
        assert!(PhiArgs::new(1, c(1.0, 3.0), 0.5).is_err());
        assert!(PhiArgs::new(-1, c(0.0, 3.0), 0.5).is_err());
        assert!(PhiArgs::new(2, c(2.0, 0.0), 0.5).is_err());
        assert!(PhiArgs::new(1, c(2.0, 0.0), 0.0).is_err());
        assert!(riemann_zeta(c(-0.5, 0.0), &cfg()).is_err());
        assert!(dirichlet_beta(c(0.0, 1.0), &cfg()).is_err());
        assert!(hurwitz_tail(c(1.0, 0.0), 1.0, &cfg()).is_err());
    }

    #[test]
    fn tail_recurrence() {
        let s = c(3.0, 0.0);
        let lhs = hurwitz_tail(s, 2.5, &cfg()).unwrap();
        let rhs = rpow(2.5, -s) + hurwitz_tail(s, 3.5, &cfg()).unwrap();
        assert!(rel(lhs, rhs) < 1e-14);
    }

    #[test]
    fn integral_path_matches_series() {
        let cross = EvalConfig { cross_check: true, ..cfg() };
        for (z, s, v) in [(1, c(2.5, 1.0), 0.3), (-1, c(0.4, 3.0), 1.0), (-1, c(1.7, -2.0), 0.5), (1, c(1.3, 0.0), 1.0)] {
            lerch_phi(PhiArgs::new(z, s, v).unwrap(), &cross).unwrap();
        }
    }

    #[test]
    fn large_offset_large_exponent() {
        // the interpolation tails call this with Re s up to ~80
        let s = c(61.5, 0.0);
        let a = 40.25;
        let direct: f64 = (0..200).map(|n| (a + n as f64).powf(-61.5)).sum();
        assert!(rel(hurwitz_tail(s, a, &cfg()).unwrap(), c(direct, 0.0)) < 1e-13);
    }
}
