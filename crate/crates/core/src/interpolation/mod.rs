//! Interpolation of `f_{k,s,v}` by the entire function `g_{k,s,v}` at the
//! nodes `π(n + k/2)`, and the integral `F_{k,s,v}` linking the two.

mod kernel;
pub(crate) mod pole_series;
mod series;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::numerics::{distance_to_integer, ComplexScalar, EvalConfig};
use crate::{Error, Result};

pub use kernel::{delta, f_ksv, g_via_identity, integral_f_ksv, node_value, recurrence_f};
pub use series::{g_series, g_series_at_node};

/// The shift `v`. Rational values enable the series path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shift {
    Rational { num: u64, den: u64 },
    Real(f64),
}

impl Shift {
    /// `num/den` in lowest terms.
    pub fn rational(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::domain("zero denominator in v"));
        }
        let g = crate::characters::gcd(num, den).max(1);
        Ok(Shift::Rational { num: num / g, den: den / g })
    }

    pub fn value(&self) -> f64 {
        match *self {
            Shift::Rational { num, den } => num as f64 / den as f64,
            Shift::Real(v) => v,
        }
    }

    /// `(a, b)` with `v = a/b`, if rational.
    pub fn as_fraction(&self) -> Option<(u64, u64)> {
        match *self {
            Shift::Rational { num, den } => Some((num, den)),
            Shift::Real(_) => None,
        }
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shift::Rational { num, den } if *den == 1 => write!(f, "{num}"),
            Shift::Rational { num, den } => write!(f, "{num}/{den}"),
            Shift::Real(v) => write!(f, "{v}"),
        }
    }
}

impl FromStr for Shift {
    type Err = Error;

    /// Accepts `a/b` or a decimal. Decimals that equal a fraction with
    /// denominator at most 64 are stored as that fraction.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if let Some((a, b)) = text.split_once('/') {
            let parse = |t: &str| t.trim().parse::<u64>().map_err(|_| Error::domain(format!("bad fraction '{text}'")));
            return Shift::rational(parse(a)?, parse(b)?);
        }
        let v: f64 = text.parse().map_err(|_| Error::domain(format!("bad value for v: '{text}'")))?;
        if !v.is_finite() || v < 0.0 {
            return Err(Error::domain(format!("bad value for v: '{text}'")));
        }
        for den in 1..=64u64 {
            let num = (v * den as f64).round();
            if (num / den as f64 - v).abs() <= 1e-14 * v.max(1.0) {
                return Shift::rational(num as u64, den);
            }
        }
        Ok(Shift::Real(v))
    }
}

/// The triple `(k, s, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InterpParams {
    pub k: u8,
    pub s: ComplexScalar,
    pub v: Shift,
}

impl InterpParams {
    /// Validated parameters using the default pole guard.
    pub fn new(k: u8, s: ComplexScalar, v: Shift) -> Result<Self> {
        let params = Self { k, s, v };
        validate_params(&params, &EvalConfig::default())?;
        Ok(params)
    }

    pub(crate) fn v_value(&self) -> f64 {
        self.v.value()
    }

    /// `(-1)^k`, the `z` argument of the matching Lerch function.
    pub fn lerch_z(&self) -> i32 {
        if self.k == 0 {
            1
        } else {
            -1
        }
    }

    /// `sin(y + πk/2)`, i.e. `sin y` or `cos y`, without rounding the shift.
    pub fn sin_factor(&self, y: f64) -> f64 {
        if self.k == 0 {
            y.sin()
        } else {
            y.cos()
        }
    }
}

/// Checks the admissibility conditions on `(k, s, v)` and the pole guards.
pub fn validate_params(params: &InterpParams, config: &EvalConfig) -> Result<()> {
    let InterpParams { k, s, .. } = *params;
    let v = params.v_value();
    let guard = config.pole_guard;
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::domain("s must be finite"));
    }
    if !(v > 0.0 && v <= 1.0) {
        return Err(Error::domain(format!("v must lie in (0, 1], got {v}")));
    }
    if distance_to_integer(s) < guard {
        return Err(Error::domain(format!(
            "s = {s} is within {guard:e} of an integer (s must avoid N and the poles of 1/sin(πs))"
        )));
    }
    let near = |target: f64| (s.re - target).abs() < guard;
    match k {
        0 if v < 1.0 => {
            if s.re <= 1.0 {
                return Err(Error::domain(format!("k = 0, v < 1 requires Re s > 1, got {}", s.re)));
            }
            let nearest_odd = 2.0 * ((s.re - 1.0) / 2.0).round() + 1.0;
            if nearest_odd >= 3.0 && near(nearest_odd) {
                return Err(Error::domain(format!("k = 0, v < 1 requires Re s not in {{3, 5, ...}}, got {}", s.re)));
            }
        }
        0 => {
            let d = ((s.re - 1.0) / 2.0).floor();
            let inside = d >= 0.0 && s.re > 1.0 + 2.0 * d + guard && s.re < 2.0 + 2.0 * d - guard;
            if !inside {
                return Err(Error::domain(format!(
                    "k = 0, v = 1 requires Re s in (1+2d, 2+2d) for some d >= 0, got {}",
                    s.re
                )));
            }
        }
        1 => {
            if s.re <= 0.0 {
                return Err(Error::domain(format!("k = 1 requires Re s > 0, got {}", s.re)));
            }
            let nearest_even = 2.0 * (s.re / 2.0).round();
            if nearest_even >= 2.0 && near(nearest_even) {
                return Err(Error::domain(format!("k = 1 requires Re s not in {{2, 4, ...}}, got {}", s.re)));
            }
        }
        _ => return Err(Error::domain(format!("k must be 0 or 1, got {k}"))),
    }
    Ok(())
}

/// `m_k = ⌊(Re s - 1)/2⌋` for `k = 0`, `⌊Re s / 2⌋` for `k = 1`.
pub fn m_k(params: &InterpParams) -> usize {
    let m = if params.k == 0 { ((params.s.re - 1.0) / 2.0).floor() } else { (params.s.re / 2.0).floor() };
    m.max(0.0) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexScalar {
        ComplexScalar::new(re, im)
    }

    fn half() -> Shift {
        Shift::rational(1, 2).unwrap()
    }

    #[test]
    fn m_k_values() {
        let p = InterpParams { k: 0, s: c(2.5, 0.0), v: half() };
        assert_eq!(m_k(&p), 0);
        let p = InterpParams { k: 1, s: c(1.5, 0.0), v: half() };
        assert_eq!(m_k(&p), 0);
        let p = InterpParams { k: 1, s: c(4.5, 2.0), v: half() };
        assert_eq!(m_k(&p), 2);
    }

    #[test]
    fn admissibility() {
        let one = Shift::rational(1, 1).unwrap();
        assert!(InterpParams::new(0, c(1.5, 0.0), one).is_ok());
        assert!(InterpParams::new(0, c(2.5, 0.0), one).is_err());
        assert!(InterpParams::new(1, c(2.0, 0.0), half()).is_err());
        assert!(InterpParams::new(1, c(2.0, 1.0), half()).is_err());
        assert!(InterpParams::new(1, c(0.5, 14.0), one).is_ok());
        assert!(InterpParams::new(0, c(3.0, 1.0), half()).is_err());
        assert!(InterpParams::new(0, c(0.9, 1.0), half()).is_err());
        assert!(InterpParams::new(2, c(1.5, 0.0), half()).is_err());
        assert!(InterpParams::new(1, c(1.5, 0.0), Shift::Real(1.2)).is_err());
        assert!(InterpParams::new(1, c(1.0 + 1e-10, 0.0), half()).is_err());
    }

    #[test]
    fn shift_parsing() {
        assert_eq!("1/2".parse::<Shift>().unwrap(), Shift::Rational { num: 1, den: 2 });
        assert_eq!("2/4".parse::<Shift>().unwrap(), Shift::Rational { num: 1, den: 2 });
        assert_eq!("0.5".parse::<Shift>().unwrap(), Shift::Rational { num: 1, den: 2 });
        assert_eq!("1".parse::<Shift>().unwrap(), Shift::Rational { num: 1, den: 1 });
        assert!(matches!("0.70710678".parse::<Shift>().unwrap(), Shift::Real(_)));
        assert!("1/0".parse::<Shift>().is_err());
        assert!("x".parse::<Shift>().is_err());
    }
}
