//! Shared numerical kernels.

mod gamma;
mod quadrature;
mod richardson;
mod series;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use gamma::complex_gamma;
pub use quadrature::{gauss_kronrod_21, integrate_semi_infinite, SemiInfinite};
pub use richardson::{richardson_limit, RichardsonEstimate};
pub use series::{alternating_sum_accelerated, CompensatedSum};

/// Complex scalar used for every `s`, character value and function value.
pub type ComplexScalar = Complex64;

/// Tolerances and truncation policies shared by all evaluators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvalConfig {
    /// Relative tolerance of the adaptive quadrature.
    pub quad_rel_tol: f64,
    /// Absolute tolerance of the adaptive quadrature; also the level at which
    /// the exponential tail is cut off.
    pub quad_abs_tol: f64,
    /// Relative tolerance of accelerated and Euler-Maclaurin series.
    pub series_rel_tol: f64,
    /// Number of layers `J` of the analytic series tail.
    pub tail_expansion_depth: usize,
    /// Minimum admissible distance to a pole.
    pub pole_guard: f64,
    /// Hard cap on the number of terms of any series.
    pub max_terms: usize,
    /// When set, [`crate::special::lerch_phi`] also evaluates the integral
    /// representation and fails with [`Error::PathMismatch`] on disagreement.
    pub cross_check: bool,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            quad_rel_tol: 1e-12,
            quad_abs_tol: 1e-17,
            series_rel_tol: 1e-12,
            tail_expansion_depth: 40,
            pole_guard: 1e-8,
            max_terms: 1 << 20,
            cross_check: false,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("quad_rel_tol", self.quad_rel_tol),
            ("quad_abs_tol", self.quad_abs_tol),
            ("series_rel_tol", self.series_rel_tol),
            ("pole_guard", self.pole_guard),
        ];
        for (name, value) in positive {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::InvalidConfig(format!("{name} must be positive, got {value}")));
            }
        }
        if self.tail_expansion_depth < 1 {
            return Err(Error::InvalidConfig("tail_expansion_depth must be >= 1".into()));
        }
        if self.max_terms < 16 {
            return Err(Error::InvalidConfig("max_terms must be >= 16".into()));
        }
        Ok(())
    }

    /// Same configuration with every tolerance halved.
    pub fn tightened(&self) -> Self {
        Self {
            quad_rel_tol: self.quad_rel_tol / 2.0,
            quad_abs_tol: self.quad_abs_tol / 2.0,
            series_rel_tol: self.series_rel_tol / 2.0,
            ..self.clone()
        }
    }
}

/// `x^s` for real `x > 0`.
#[inline]
pub fn rpow(x: f64, s: ComplexScalar) -> ComplexScalar {
    (s * x.ln()).exp()
}

/// `e^z - 1` without cancellation for small `|z|`.
pub fn expm1_c(z: ComplexScalar) -> ComplexScalar {
    let (x, y) = (z.re, z.im);
    let half_sin = (0.5 * y).sin();
    ComplexScalar::new(x.exp_m1() * y.cos() - 2.0 * half_sin * half_sin, x.exp() * y.sin())
}

/// `(e^z - 1) / z`, continuous at `z = 0`.
pub fn exprel_c(z: ComplexScalar) -> ComplexScalar {
    if z.norm() < 1e-3 {
        // 1 + z/2 + z^2/6 + z^3/24 + z^4/120
        let mut term = ComplexScalar::new(1.0, 0.0);
        let mut sum = term;
        for n in 2..=6 {
            term = term * z / n as f64;
            sum += term;
        }
        sum
    } else {
        expm1_c(z) / z
    }
}

/// Fails with [`Error::PoleProximity`] if `s` is within `guard` of
/// `{0, -1, -2, ...}`.
pub(crate) fn guard_nonpositive_integer(s: ComplexScalar, guard: f64) -> Result<()> {
    if s.re < 0.5 {
        let nearest = s.re.round();
        if nearest <= 0.0 && (s - ComplexScalar::new(nearest, 0.0)).norm() < guard {
            return Err(Error::PoleProximity { re: s.re, im: s.im });
        }
    }
    Ok(())
}

/// Distance from `s` to the nearest integer point of the real axis.
pub(crate) fn distance_to_integer(s: ComplexScalar) -> f64 {
    (s - ComplexScalar::new(s.re.round(), 0.0)).norm()
}

pub(crate) fn is_finite(z: ComplexScalar) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        EvalConfig::default().validate().unwrap();
    }

    #[test]
    fn config_rejects_bad_values() {
        let bad = EvalConfig { max_terms: 8, ..EvalConfig::default() };
        assert!(bad.validate().is_err());
        let bad = EvalConfig { series_rel_tol: 0.0, ..EvalConfig::default() };
        assert!(bad.validate().is_err());
        let bad = EvalConfig { tail_expansion_depth: 0, ..EvalConfig::default() };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn exprel_is_continuous() {
        let tiny = exprel_c(ComplexScalar::new(1e-4, -2e-4));
        let direct = ComplexScalar::new(1e-4, -2e-4);
        let reference = (direct.exp() - 1.0) / direct;
        assert!((tiny - reference).norm() < 1e-11);
        assert!((exprel_c(ComplexScalar::new(0.0, 0.0)) - 1.0).norm() < 1e-16);
        let z = ComplexScalar::new(0.3, 1.2);
        assert!((exprel_c(z) - (z.exp() - 1.0) / z).norm() < 1e-15);
    }

    #[test]
    fn expm1_matches_exp() {
        let z = ComplexScalar::new(0.7, -3.1);
        assert!((expm1_c(z) - (z.exp() - 1.0)).norm() < 1e-15);
    }
}
