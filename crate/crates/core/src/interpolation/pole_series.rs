//! `S(y) = Σ_{n≥n0} w(n) x_n^e / (y² - x_n²)` with `x_n = h(n + c)` and
//! `b`-periodic weights, summed directly up to `x_n ≈ 2|y|` and in closed form
//! beyond via Hurwitz zeta layers.

use crate::numerics::{rpow, CompensatedSum, ComplexScalar, EvalConfig};
use crate::special::hurwitz_weighted_sum;
use crate::{Error, Result};

/// Distance to a node below which the series is not evaluated.
pub const NEAR_NODE_TOL: f64 = 1e-6;
/// `π - PI`, the rounding error of the double nearest to `π`.
pub(crate) const PI_LO: f64 = 1.2246467991473532e-16;

const EXTRA_PERIODS: i64 = 32;
const LAYER_CUTOFF: f64 = 1e-17;

pub(crate) struct PoleSeries<'a> {
    pub spacing: f64,
    /// Low part of the spacing (`h = spacing + spacing_lo` exactly enough
    /// that `|y| - x_n` keeps full relative accuracy near a node).
    pub spacing_lo: f64,
    pub offset: f64,
    pub first: i64,
    pub weights: &'a [ComplexScalar],
    pub exponent: ComplexScalar,
    /// Sum consecutive terms in pairs (series not absolutely convergent).
    pub paired: bool,
}

impl PoleSeries<'_> {
    fn weight(&self, n: i64) -> ComplexScalar {
        self.weights[n.rem_euclid(self.weights.len() as i64) as usize]
    }

    fn node(&self, n: i64) -> f64 {
        self.spacing * (n as f64 + self.offset)
    }

    /// `ay - x_n` without the rounding error of `x_n`.
    fn gap(&self, ay: f64, n: i64) -> f64 {
        let m = n as f64 + self.offset;
        (-m).mul_add(self.spacing, ay) - m * self.spacing_lo
    }

    pub fn eval(&self, y: f64, config: &EvalConfig) -> Result<ComplexScalar> {
        let b = self.weights.len() as i64;
        let ay = y.abs();
        let reach = ((2.0 * ay / self.spacing - self.offset).ceil() as i64).max(self.first);
        let mut end = reach + EXTRA_PERIODS * b;
        if self.paired && (end - self.first) % 2 == 1 {
            end += 1;
        }

        let zero = ComplexScalar::new(0.0, 0.0);
        let mut acc = CompensatedSum::new();
        let mut pending = zero;
        for n in self.first..end {
            let w = self.weight(n);
            let term = if w == zero {
                zero
            } else {
                let x = self.node(n);
                let gap = self.gap(ay, n);
                if gap.abs() < NEAR_NODE_TOL {
                    return Err(Error::NearNode { y, node: x.copysign(y) });
                }
                w * rpow(x, self.exponent) / (gap * (ay + x))
            };
            if self.paired {
                if (n - self.first) % 2 == 0 {
                    pending = term;
                } else {
                    acc.add(pending + term);
                }
            } else {
                acc.add(term);
            }
        }

        // 1/(y² - x²) = -Σ_j y^{2j} x^{-2j-2} for x > |y|
        let ratio_sq = (ay / self.node(end)).powi(2);
        let layers = if ratio_sq == 0.0 {
            1
        } else {
            ((LAYER_CUTOFF.ln() / ratio_sq.ln()).ceil() as usize + 1).min(config.tail_expansion_depth)
        };
        let residues: Vec<(ComplexScalar, f64)> = (0..b)
            .map(|r| (self.weight(end + r), (end as f64 + r as f64 + self.offset) / b as f64))
            .filter(|&(w, _)| w != zero)
            .collect();
        if residues.is_empty() {
            return Ok(acc.value());
        }
        let balanced = {
            let total: ComplexScalar = residues.iter().map(|&(w, _)| w).sum();
            let scale: f64 = residues.iter().map(|&(w, _)| w.norm()).sum();
            total.norm() <= 1e-14 * scale
        };
        let period = self.spacing * b as f64;
        let mut y_power = 1.0;
        for j in 0..layers {
            let p = self.exponent - (2 * j + 2) as f64;
            if -p.re <= 1.0 && !balanced {
                return Err(Error::domain(format!("pole series with exponent {} diverges", self.exponent)));
            }
            let combo = hurwitz_weighted_sum(-p, &residues, config)?;
            acc.add(-(combo * rpow(period, p) * y_power));
            y_power *= ay * ay;
        }
        Ok(acc.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64) -> ComplexScalar {
        ComplexScalar::new(re, 0.0)
    }

    // Σ_{n≥1} 1/(y² - n²) = (πy cot(πy) - 1) / (2y²)
    #[test]
    fn cotangent_partial_fractions() {
        let w = [c(1.0)];
        let series = PoleSeries { spacing: 1.0, spacing_lo: 0.0, offset: 0.0, first: 1, weights: &w, exponent: c(0.0), paired: false };
        for y in [0.3, 2.7, 17.4, 250.25] {
            let exact = (PI * y / (PI * y).tan() - 1.0) / (2.0 * y * y);
            let got = series.eval(y, &EvalConfig::default()).unwrap();
            assert!((got.re - exact).abs() < 1e-13 * exact.abs().max(1e-3), "y = {y}: {got} vs {exact}");
        }
    }

    // π/sin(πy) = 1/y + Σ_{n≥1} (-1)^n 2y / (y² - n²)
    #[test]
    fn cosecant_partial_fractions() {
        let w = [c(1.0), c(-1.0)];
        let series = PoleSeries { spacing: 1.0, spacing_lo: 0.0, offset: 0.0, first: 1, weights: &w, exponent: c(0.0), paired: true };
        for y in [0.4, 5.5, 63.3] {
            let got = series.eval(y, &EvalConfig::default()).unwrap();
            let exact = (PI / (PI * y).sin() - 1.0 / y) / (2.0 * y);
            assert!((got.re - exact).abs() < 1e-13 * exact.abs().max(1e-3), "y = {y}: {got} vs {exact}");
        }
    }

    #[test]
    fn near_node_is_reported() {
        let w = [c(1.0)];
        let series = PoleSeries { spacing: PI, spacing_lo: PI_LO, offset: 0.5, first: 0, weights: &w, exponent: c(0.5), paired: false };
        let r = series.eval(-PI * 3.5 + 1e-8, &EvalConfig::default());
        assert!(matches!(r, Err(Error::NearNode { node, .. }) if (node + PI * 3.5).abs() < 1e-12));
    }

    #[test]
    fn zero_weight_nodes_are_regular() {
        let w = [c(0.0), c(1.0)];
        let series = PoleSeries { spacing: 1.0, spacing_lo: 0.0, offset: 0.0, first: 1, weights: &w, exponent: c(0.0), paired: false };
        assert!(series.eval(2.0, &EvalConfig::default()).is_ok());
    }
}
