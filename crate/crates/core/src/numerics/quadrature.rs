use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{is_finite, ComplexScalar, EvalConfig};
use crate::{Error, Result};

// Kronrod abscissae (descending) and weights of the 21-point rule; the odd
// entries are the 10-point Gauss abscissae.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_805_052_035,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

const MAX_SUBDIVISIONS: usize = 4000;

/// Shape information for [`integrate_semi_infinite`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemiInfinite {
    /// `α` such that the integrand behaves like `t^α` times an analytic factor
    /// near the origin.
    pub endpoint_exponent: f64,
    /// `c > 0` such that the integrand is `O(t^A e^{-ct})` at infinity.
    pub decay_rate: f64,
}

/// One 21-point Gauss-Kronrod panel.
#[derive(Debug, Clone, Copy)]
pub struct Panel {
    pub a: f64,
    pub b: f64,
    pub value: ComplexScalar,
    pub error: f64,
    /// Integral of `|f|` over the panel.
    pub abs_value: f64,
}

/// Applies the 21-point Gauss-Kronrod rule on `[a, b]` with the QUADPACK
/// error rescaling.
pub fn gauss_kronrod_21<F>(f: &F, a: f64, b: f64) -> Panel
where
    F: Fn(f64) -> ComplexScalar,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);
    let mut kronrod = f_center * WGK[10];
    let mut gauss = ComplexScalar::new(0.0, 0.0);
    let mut abs_sum = f_center.norm() * WGK[10];
    let mut samples = [(ComplexScalar::new(0.0, 0.0), ComplexScalar::new(0.0, 0.0)); 10];
    for (j, sample) in samples.iter_mut().enumerate() {
        let dx = half * XGK[j];
        let lo = f(center - dx);
        let hi = f(center + dx);
        *sample = (lo, hi);
        kronrod += (lo + hi) * WGK[j];
        abs_sum += (lo.norm() + hi.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (lo + hi) * WG[j / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut asc = (f_center - mean).norm() * WGK[10];
    for (j, (lo, hi)) in samples.iter().enumerate() {
        asc += ((lo - mean).norm() + (hi - mean).norm()) * WGK[j];
    }
    let scale = half.abs();
    let abs_value = abs_sum * scale;
    let asc = asc * scale;
    let mut error = ((kronrod - gauss) * half).norm();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    if abs_value > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * abs_value);
    }
    Panel { a, b, value: kronrod * half, error, abs_value }
}

struct Queued(Panel);

impl PartialEq for Queued {
    fn eq(&self, other: &Self) -> bool {
        self.0.error == other.0.error
    }
}
impl Eq for Queued {}
impl PartialOrd for Queued {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Queued {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.error.total_cmp(&other.0.error)
    }
}

/// Globally adaptive Gauss-Kronrod over the union of `breaks` intervals.
///
/// Stops when the summed error estimate falls below
/// `max(abs_tol, rel_tol |I|)` or below the round-off floor
/// `100 ε ∫|f|`.
pub(crate) fn adaptive_gk<F>(f: &F, breaks: &[f64], abs_tol: f64, rel_tol: f64) -> Result<ComplexScalar>
where
    F: Fn(f64) -> ComplexScalar,
{
    let mut heap = BinaryHeap::new();
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            heap.push(Queued(gauss_kronrod_21(f, w[0], w[1])));
        }
    }
    for iteration in 0..MAX_SUBDIVISIONS {
        let (mut total, mut error, mut abs_total) = (ComplexScalar::new(0.0, 0.0), 0.0, 0.0);
        for Queued(p) in heap.iter() {
            total += p.value;
            error += p.error;
            abs_total += p.abs_value;
        }
        if !is_finite(total) {
            return Err(Error::domain("integrand produced a non-finite value"));
        }
        let roundoff = 100.0 * f64::EPSILON * abs_total;
        if error <= abs_tol.max(rel_tol * total.norm()) || error <= roundoff {
            return Ok(total);
        }
        let Some(Queued(worst)) = heap.pop() else {
            return Ok(total);
        };
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // interval exhausted at machine resolution
            return Err(Error::ToleranceNotMet { iterations: iteration, estimate: error });
        }
        heap.push(Queued(gauss_kronrod_21(f, worst.a, mid)));
        heap.push(Queued(gauss_kronrod_21(f, mid, worst.b)));
    }
    let error: f64 = heap.iter().map(|q| q.0.error).sum();
    Err(Error::ToleranceNotMet { iterations: MAX_SUBDIVISIONS, estimate: error })
}

/// `∫_0^∞ f(t) dt` for integrands with an algebraic origin singularity and an
/// exponentially decaying tail.
///
/// The range is split at `t = 1`. On `(0, 1]` a singular endpoint
/// (`α < 0`) is removed by `t = u^{1/(1+α)}`. The tail is truncated at the
/// point `T` where the envelope fitted through samples at `t = 1, 2, 4`
/// integrates to less than `quad_abs_tol`, and `[1, T]` is integrated
/// adaptively.
pub fn integrate_semi_infinite<F>(f: F, shape: SemiInfinite, config: &EvalConfig) -> Result<ComplexScalar>
where
    F: Fn(f64) -> ComplexScalar,
{
    let alpha = shape.endpoint_exponent;
    if alpha <= -1.0 {
        return Err(Error::NonConvergent(alpha));
    }
    let decay = shape.decay_rate;
    if !(decay > 0.0 && decay.is_finite()) {
        return Err(Error::domain(format!("decay rate must be positive, got {decay}")));
    }

    let cutoff = tail_cutoff(&f, alpha.max(0.0), decay, config.quad_abs_tol);

    // x in [0, 1] is the substituted head variable u, x in [1, T] is t itself.
    let exponent = if alpha < 0.0 { 1.0 / (1.0 + alpha) } else { 1.0 };
    let integrand = |x: f64| -> ComplexScalar {
        if x <= 1.0 {
            if exponent == 1.0 {
                f(x)
            } else {
                let t = x.powf(exponent);
                if t == 0.0 {
                    return ComplexScalar::new(0.0, 0.0);
                }
                f(t) * (exponent * t / x)
            }
        } else {
            f(x)
        }
    };

    let mut breaks = vec![0.0, 0.5, 1.0];
    let mut edge = 2.0;
    while edge < cutoff {
        breaks.push(edge);
        edge *= 2.0;
    }
    breaks.push(cutoff);
    adaptive_gk(&integrand, &breaks, config.quad_abs_tol, config.quad_rel_tol)
}

fn tail_cutoff<F>(f: &F, growth: f64, decay: f64, abs_tol: f64) -> f64
where
    F: Fn(f64) -> ComplexScalar,
{
    let mut amplitude: f64 = 1e-300;
    for t in [1.0_f64, 2.0, 4.0] {
        let v = f(t).norm();
        if v.is_finite() {
            amplitude = amplitude.max(v * (decay * t).exp() / t.powf(growth));
        }
    }
    let target = 1e-2 * abs_tol;
    let mut cutoff = 4.0_f64;
    for _ in 0..60 {
        let next = ((amplitude / (decay * target)).ln() + growth * cutoff.ln()) / decay;
        let next = next.max(4.0);
        if (next - cutoff).abs() < 1e-6 * cutoff {
            cutoff = next;
            break;
        }
        cutoff = next;
    }
    cutoff.max(4.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64) -> ComplexScalar {
        ComplexScalar::new(re, 0.0)
    }

    #[test]
    fn exponential() {
        let cfg = EvalConfig::default();
        let shape = SemiInfinite { endpoint_exponent: 0.0, decay_rate: 1.0 };
        let v = integrate_semi_infinite(|t| c((-t).exp()), shape, &cfg).unwrap();
        assert!((v - 1.0).norm() < 1e-13);
    }

    #[test]
    fn inverse_square_root_singularity() {
        let cfg = EvalConfig::default();
        let shape = SemiInfinite { endpoint_exponent: -0.5, decay_rate: 1.0 };
        let v = integrate_semi_infinite(|t| c((-t).exp() / t.sqrt()), shape, &cfg).unwrap();
        assert!((v - PI.sqrt()).norm() < 1e-12);
    }

    #[test]
    fn strong_singularity() {
        // ∫ t^{-0.9} e^{-t} = Γ(0.1)
        let cfg = EvalConfig::default();
        let shape = SemiInfinite { endpoint_exponent: -0.9, decay_rate: 1.0 };
        let v = integrate_semi_infinite(|t| c(t.powf(-0.9) * (-t).exp()), shape, &cfg).unwrap();
        let gamma_tenth = 9.513_507_698_668_731_8;
        assert!((v.re - gamma_tenth).abs() / gamma_tenth < 1e-11);
    }

    #[test]
    fn rejects_nonintegrable_endpoint() {
        let cfg = EvalConfig::default();
        let shape = SemiInfinite { endpoint_exponent: -1.0, decay_rate: 1.0 };
        assert!(matches!(
            integrate_semi_infinite(|t| c(1.0 / t), shape, &cfg),
            Err(Error::NonConvergent(_))
        ));
    }

    #[test]
    fn linearity() {
        let cfg = EvalConfig::default();
        let shape = SemiInfinite { endpoint_exponent: -0.25, decay_rate: 0.5 };
        let f = |t: f64| c(t.powf(-0.25) * (-0.5 * t).exp());
        let g = |t: f64| ComplexScalar::new(0.0, t.powf(0.75) * (-t).exp() * t.cos());
        let (a, b) = (ComplexScalar::new(2.0, -1.0), ComplexScalar::new(-0.5, 3.0));
        let combined = integrate_semi_infinite(|t| a * f(t) + b * g(t), shape, &cfg).unwrap();
        let separate = a * integrate_semi_infinite(f, shape, &cfg).unwrap()
            + b * integrate_semi_infinite(g, shape, &cfg).unwrap();
        assert!((combined - separate).norm() < 1e-11 * separate.norm());
    }
}
