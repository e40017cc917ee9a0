use std::f64::consts::PI;

use super::kernel::polynomial_part;
use super::pole_series::{PoleSeries, PI_LO};
use super::{m_k, InterpParams};
use crate::numerics::{rpow, ComplexScalar, EvalConfig};
use crate::{Error, Result};

/// Offsets of the symmetric samples used at a node.
const NODE_OFFSETS: [f64; 2] = [1e-3, 5e-4];

/// `g_{k,s,v}(y)` from its explicit series; `v` must be rational.
pub fn g_series(params: &InterpParams, y: f64, config: &EvalConfig) -> Result<ComplexScalar> {
    let (a, b) = params.v.as_fraction().ok_or(Error::IrrationalV)?;
    let (k, s) = (params.k, params.s);
    let m = m_k(params);
    let exponent = s - (2 * m + 1) as f64;
    let weights: Vec<ComplexScalar> = (0..b)
        .map(|r| (s * (PI / 2.0) + PI * (2.0 * r as f64 + k as f64) * a as f64 / b as f64).sin())
        .collect();
    let series = PoleSeries {
        spacing: PI,
        spacing_lo: PI_LO,
        offset: k as f64 / 2.0,
        first: 1 - k as i64,
        weights: &weights,
        exponent,
        paired: k == 0 && exponent.re >= 1.0,
    }
    .eval(y, config)?;
    let poly = polynomial_part(k, s, params.v_value(), y, m, config)?;
    let bracket = poly + series * (PI * rpow(2.0, s) * y.powi(2 * (m as i32 + 1))) / (s * PI).sin();
    Ok(-bracket * params.sin_factor(y))
}

/// `g` at the node `π(n + k/2)` from series values at symmetric offsets,
/// extrapolated to zero offset.
pub fn g_series_at_node(params: &InterpParams, n: i64, config: &EvalConfig) -> Result<ComplexScalar> {
    let node = PI * (n as f64 + params.k as f64 / 2.0);
    if node == 0.0 {
        return g_series(params, 0.0, config);
    }
    let mut averages = [ComplexScalar::new(0.0, 0.0); 2];
    for (avg, h) in averages.iter_mut().zip(NODE_OFFSETS) {
        *avg = (g_series(params, node + h, config)? + g_series(params, node - h, config)?) * 0.5;
    }
    // the symmetric average has an even error expansion in h
    let ratio = (NODE_OFFSETS[0] / NODE_OFFSETS[1]).powi(2);
    Ok((averages[1] * ratio - averages[0]) / (ratio - 1.0))
}
