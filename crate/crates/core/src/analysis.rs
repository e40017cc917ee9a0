//! Limit extraction, decay rates and the L_p criterion for zeros.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::chi_4;
use crate::interpolation::{f_ksv, g_series, InterpParams};
use crate::lfunctions::{gamma_sq_series, gamma_star_q3_series, gamma_star_q4_series, l_value, phi_sq, phi_star_q3, LInterpParams};
use crate::numerics::{complex_gamma, gauss_kronrod_21, richardson_limit, rpow, ComplexScalar, EvalConfig};
use crate::special::{lerch_phi, PhiArgs};
use crate::{Error, Result};

/// First sampling abscissa and excluded core radius.
pub const DEFAULT_Y0: f64 = 20.0;
/// Largest abscissa of the default dyadic sampling `20·2^j`, `j ≤ 4`.
pub const DEFAULT_Y_MAX: f64 = 320.0;
pub const MASK_FLOOR: f64 = 0.5;
/// Amplitude threshold on the scale of `Φ` (amplitudes are divided by `|Γ(s)|`).
pub const AMP_TOL: f64 = 5e-3;
const RICHARDSON_ORDER: usize = 2;
const AMPLITUDE_POINTS: usize = 64;

/// Which interpolation difference to sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitSource {
    /// `(f - g) / sin(y + πk/2) → Γ(s) Φ((-1)^k, s, v)`.
    Interpolation(InterpParams),
    /// `(φ - γ) / sin y → q^s Γ(s) L(s, χ)`.
    LFunction(LInterpParams),
    /// `(φ* - γ*) / (1 + 2cos y) → 3^s Γ(s) L(s, χ_3)`.
    StarredQ3(ComplexScalar),
    /// `(φ* - γ*) / cos y → 4^s Γ(s) L(s, χ_4)`.
    StarredQ4(ComplexScalar),
}

impl LimitSource {
    pub fn s(&self) -> ComplexScalar {
        match self {
            LimitSource::Interpolation(p) => p.s,
            LimitSource::LFunction(p) => p.s,
            LimitSource::StarredQ3(s) | LimitSource::StarredQ4(s) => *s,
        }
    }

    /// The divisor `d(y)` with `D = Δ / d`.
    pub fn divisor(&self, y: f64) -> f64 {
        match self {
            LimitSource::Interpolation(p) => p.sin_factor(y),
            LimitSource::LFunction(_) => y.sin(),
            LimitSource::StarredQ3(_) => 1.0 + 2.0 * y.cos(),
            LimitSource::StarredQ4(_) => y.cos(),
        }
    }

    pub fn is_masked(&self, y: f64) -> bool {
        self.divisor(y).abs() >= MASK_FLOOR
    }

    /// Arcs of `[0, period)` on which `|d| ≥ 1/2`.
    fn arcs(&self) -> (f64, Vec<(f64, f64)>) {
        let sine_arcs = |shift: f64| (PI, vec![(PI / 6.0 - shift, 5.0 * PI / 6.0 - shift)]);
        match self {
            LimitSource::Interpolation(p) => sine_arcs(FRAC_PI_2 * p.k as f64),
            LimitSource::LFunction(_) => sine_arcs(0.0),
            LimitSource::StarredQ4(_) => sine_arcs(FRAC_PI_2),
            LimitSource::StarredQ3(_) => {
                // cos y ≥ -1/4 or cos y ≤ -3/4
                let (a, b) = ((-0.25f64).acos(), (-0.75f64).acos());
                (2.0 * PI, vec![(-a, a), (b, 2.0 * PI - b)])
            }
        }
    }

    /// `Δ(y)` with the entire function taken from its series.
    pub fn delta_series(&self, y: f64, config: &EvalConfig) -> Result<ComplexScalar> {
        match self {
            LimitSource::Interpolation(p) => Ok(f_ksv(p, y) - g_series(p, y, config)?),
            LimitSource::LFunction(p) => Ok(phi_sq(p, y) - gamma_sq_series(p, y, config)?),
            LimitSource::StarredQ3(s) => Ok(phi_star_q3(*s, y) - gamma_star_q3_series(*s, y, config)?),
            LimitSource::StarredQ4(s) => {
                let p = InterpParams::new(1, *s, crate::interpolation::Shift::rational(1, 2)?)?;
                Ok(f_ksv(&p, y) * rpow(2.0, *s) - gamma_star_q4_series(*s, y, config)?)
            }
        }
    }

    /// `D(y) = Δ(y) / d(y)` on the masked set.
    pub fn sample(&self, y: f64, config: &EvalConfig) -> Result<ComplexScalar> {
        if !self.is_masked(y) {
            return Err(Error::domain(format!("y = {y} lies outside the masked set")));
        }
        Ok(self.delta_series(y, config)? / self.divisor(y))
    }

    /// The limit of `D`, from the special-function evaluators.
    pub fn target(&self, config: &EvalConfig) -> Result<ComplexScalar> {
        let s = self.s();
        let gamma = complex_gamma(s, config.pole_guard)?;
        match self {
            LimitSource::Interpolation(p) => {
                Ok(gamma * lerch_phi(PhiArgs::new(p.lerch_z(), s, p.v.value())?, config)?)
            }
            LimitSource::LFunction(p) => Ok(gamma * rpow(p.q() as f64, s) * l_value(s, &p.chi, config)?),
            LimitSource::StarredQ3(_) => Ok(gamma * rpow(3.0, s) * l_value(s, &crate::characters::chi_3(), config)?),
            LimitSource::StarredQ4(_) => Ok(gamma * rpow(4.0, s) * l_value(s, &chi_4(), config)?),
        }
    }

    /// Masked point nearest to `y` (`y` itself when masked).
    pub fn nearest_masked(&self, y: f64) -> f64 {
        if self.is_masked(y) {
            return y;
        }
        let (period, arcs) = self.arcs();
        let base = (y / period).floor() * period;
        let mut best = f64::INFINITY;
        for shift in [-period, 0.0, period] {
            for &(lo, hi) in &arcs {
                // step inside so rounding cannot leave the mask
                for edge in [base + shift + lo + 1e-9, base + shift + hi - 1e-9] {
                    if (edge - y).abs() < (best - y).abs() && edge > 0.0 {
                        best = edge;
                    }
                }
            }
        }
        best
    }

    /// Masked subintervals of `[a, b]`, `0 ≤ a < b`.
    pub fn masked_intervals(&self, a: f64, b: f64) -> Vec<(f64, f64)> {
        let (period, arcs) = self.arcs();
        let first = (a / period).floor() as i64 - 1;
        let last = (b / period).ceil() as i64;
        let mut out = Vec::new();
        for cycle in first..=last {
            for &(lo, hi) in &arcs {
                let (lo, hi) = (cycle as f64 * period + lo, cycle as f64 * period + hi);
                let (lo, hi) = (lo.max(a), hi.min(b));
                if hi > lo {
                    out.push((lo, hi));
                }
            }
        }
        out.sort_by(|x, y| x.0.total_cmp(&y.0));
        out
    }
}

/// Masked samples `(y, D(y))` with increasing `y`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitSample {
    pub entries: Vec<(f64, ComplexScalar)>,
    pub mask_floor: f64,
}

/// Extrapolated limit, its error estimate and the samples it came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitEstimate {
    pub limit: ComplexScalar,
    pub error_estimate: f64,
    pub samples: LimitSample,
}

/// Masked points nearest to `y0·2^j` up to `y_max`.
pub fn dyadic_grid(source: &LimitSource, y0: f64, y_max: f64) -> Vec<f64> {
    let mut ys = Vec::new();
    let mut target = y0;
    while target <= y_max * (1.0 + 1e-12) {
        ys.push(source.nearest_masked(target));
        target *= 2.0;
    }
    ys
}

/// `lim D(y)` by two-stage Richardson extrapolation over dyadic masked
/// samples, with `D` built from the series representation.
pub fn extract_limit(source: &LimitSource, y0: f64, y_max: f64, config: &EvalConfig) -> Result<LimitEstimate> {
    if !(y0 > 0.0 && y_max > y0) {
        return Err(Error::domain(format!("need 0 < y0 < y_max, got {y0}, {y_max}")));
    }
    let ys = dyadic_grid(source, y0, y_max);
    let needed = RICHARDSON_ORDER + 1;
    if ys.len() < needed {
        return Err(Error::InsufficientSamples { needed, got: ys.len() });
    }
    let values: Vec<Result<ComplexScalar>> = ys.par_iter().map(|&y| source.sample(y, config)).collect();
    let entries = ys.iter().copied().zip(values).map(|(y, v)| v.map(|v| (y, v))).collect::<Result<Vec<_>>>()?;
    let estimate = richardson_limit(&entries, RICHARDSON_ORDER)?;
    // D is a difference of terms of size ~|f|, so rounding sets a floor
    let scale = entries.iter().map(|&(y, _)| rpow(y, source.s()).norm()).fold(0.0, f64::max);
    let floor = 1e3 * f64::EPSILON * scale;
    Ok(LimitEstimate {
        limit: estimate.limit,
        error_estimate: estimate.error_estimate.max(floor),
        samples: LimitSample { entries, mask_floor: MASK_FLOOR },
    })
}

/// Least-squares slope of `ln e` against `ln y`.
pub fn fit_log_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::DegenerateFit(format!("{} points", points.len())));
    }
    if let Some(&(y, e)) = points.iter().find(|&&(y, e)| !(y > 0.0 && e > 0.0 && e.is_finite())) {
        return Err(Error::DegenerateFit(format!("cannot take logarithms of ({y}, {e})")));
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let zs: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let (mx, mz) = (xs.iter().sum::<f64>() / n, zs.iter().sum::<f64>() / n);
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit("all abscissae coincide".into()));
    }
    let sxz: f64 = xs.iter().zip(&zs).map(|(x, z)| (x - mx) * (z - mz)).sum();
    Ok(sxz / sxx)
}

/// Log-log slope of `|D(y) - target|` over masked points of a geometric grid
/// in `[y_min, y_max]`.
pub fn decay_slope(source: &LimitSource, y_min: f64, y_max: f64, config: &EvalConfig) -> Result<f64> {
    let target = source.target(config)?;
    decay_slope_against(source, target, y_min, y_max, config)
}

/// [`decay_slope`] against a caller-supplied limit.
pub fn decay_slope_against(
    source: &LimitSource,
    target: ComplexScalar,
    y_min: f64,
    y_max: f64,
    config: &EvalConfig,
) -> Result<f64> {
    const POINTS: usize = 12;
    let ratio = (y_max / y_min).powf(1.0 / (POINTS - 1) as f64);
    let ys: Vec<f64> = (0..POINTS).map(|i| source.nearest_masked(y_min * ratio.powi(i as i32))).collect();
    let values = ys.par_iter().map(|&y| source.sample(y, config)).collect::<Vec<_>>();
    let mut points = Vec::with_capacity(POINTS);
    for (&y, value) in ys.iter().zip(values) {
        let value = value?;
        let noise = 1e3 * f64::EPSILON * rpow(y, source.s()).norm().max(target.norm());
        let err = (value - target).norm();
        if err <= noise {
            return Err(Error::DegenerateFit(format!("|D - L| = {err:e} at y = {y} is at rounding level")));
        }
        points.push((y, err));
    }
    fit_log_slope(&points)
}

/// `∫ |Δ(y)|^p dy` over `{y0 < |y| ≤ n : |d(y)| ≥ 1/2}`, using that `|Δ|` is
/// even and one 21-point Kronrod panel per masked arc.
pub fn lp_window_norm(source: &LimitSource, p: f64, n: f64, y0: f64, config: &EvalConfig) -> Result<f64> {
    lp_window_norm_with(source, |y| source.delta_series(y, config), p, n, y0)
}

/// [`lp_window_norm`] for a caller-supplied even `Δ` on the mask of `source`.
pub fn lp_window_norm_with<F>(source: &LimitSource, delta: F, p: f64, n: f64, y0: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<ComplexScalar> + Sync,
{
    if !(p > 0.5) {
        return Err(Error::domain(format!("p must exceed 1/2, got {p}")));
    }
    if !(n > y0 && y0 > 0.0) {
        return Err(Error::domain(format!("need N > y0 > 0, got N = {n}, y0 = {y0}")));
    }
    let arcs = source.masked_intervals(y0, n);
    let pieces: Vec<Result<f64>> = arcs
        .par_iter()
        .map(|&(a, b)| {
            let failure = std::cell::Cell::new(None);
            let panel = gauss_kronrod_21(
                &|y: f64| match delta(y) {
                    Ok(d) => ComplexScalar::new(d.norm().powf(p), 0.0),
                    Err(e) => {
                        failure.set(Some(e));
                        ComplexScalar::new(0.0, 0.0)
                    }
                },
                a,
                b,
            );
            match failure.into_inner() {
                Some(e) => Err(e),
                None => Ok(panel.value.re),
            }
        })
        .collect();
    let mut total = 0.0;
    for piece in pieces {
        total += piece?;
    }
    Ok(2.0 * total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    ZeroConsistent,
    Nonzero,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroProbeReport {
    /// `max |D(y)| / |Γ(s)|` over the masked part of `[0.8 y_max, y_max]`.
    pub amplitude_estimate: f64,
    /// `log2(I(2N) / I(N))` for the window norm `I` at `N = y_max`.
    pub lp_growth_exponent: f64,
    pub p: f64,
    pub classification: Classification,
}

/// Settings of [`zero_probe`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeSettings {
    pub y_max: f64,
    pub y0: f64,
    pub amp_tol: f64,
}

impl Default for ProbeSettings {
    fn default() -> Self {
        Self { y_max: DEFAULT_Y_MAX, y0: DEFAULT_Y0, amp_tol: AMP_TOL }
    }
}

/// Thresholded evidence for or against `Φ = 0` (or `L = 0`) at `s` in the
/// critical strip.
pub fn zero_probe(source: &LimitSource, p: f64, settings: ProbeSettings, config: &EvalConfig) -> Result<ZeroProbeReport> {
    let s = source.s();
    if !(s.re > 0.0 && s.re < 1.0) {
        return Err(Error::domain(format!("the zero criterion needs 0 < Re s < 1, got {}", s.re)));
    }
    if !(p > 0.5) {
        return Err(Error::domain(format!("p must exceed 1/2, got {p}")));
    }
    let ProbeSettings { y_max, y0, amp_tol } = settings;
    let gamma = complex_gamma(s, config.pole_guard)?.norm();

    let lo = 0.8 * y_max;
    let ys: Vec<f64> = (0..AMPLITUDE_POINTS)
        .map(|i| lo + (y_max - lo) * i as f64 / (AMPLITUDE_POINTS - 1) as f64)
        .filter(|&y| source.is_masked(y))
        .collect();
    let amplitudes = ys.par_iter().map(|&y| source.sample(y, config).map(|d| d.norm())).collect::<Vec<_>>();
    let mut amplitude: f64 = 0.0;
    for a in amplitudes {
        amplitude = amplitude.max(a?);
    }
    let amplitude = amplitude / gamma;

    let near = lp_window_norm(source, p, y_max, y0, config)?;
    let far = lp_window_norm(source, p, 2.0 * y_max, y0, config)?;
    let growth = (far / near).log2();

    let classification = if amplitude < amp_tol && growth < 0.2 {
        Classification::ZeroConsistent
    } else if amplitude > 10.0 * amp_tol && growth > 0.8 {
        Classification::Nonzero
    } else {
        Classification::Inconclusive
    };
    Ok(ZeroProbeReport { amplitude_estimate: amplitude, lp_growth_exponent: growth, p, classification })
}
