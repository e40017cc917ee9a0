use super::{is_finite, ComplexScalar, EvalConfig};
use crate::{Error, Result};

// (3 + √8)^n overflows past n ≈ 400.
const MAX_CVZ_TERMS: usize = 300;
const CVZ_START: usize = 16;
const CVZ_STEP: usize = 8;

/// Neumaier-compensated complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: ComplexScalar,
    carry: ComplexScalar,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: ComplexScalar) {
        let (re, cre) = two_sum(self.sum.re, x.re);
        let (im, cim) = two_sum(self.sum.im, x.im);
        self.sum = ComplexScalar::new(re, im);
        self.carry += ComplexScalar::new(cre, cim);
    }

    pub fn value(&self) -> ComplexScalar {
        self.sum + self.carry
    }
}

impl std::iter::FromIterator<ComplexScalar> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = ComplexScalar>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = if a.abs() >= b.abs() { (a - s) + b } else { (b - s) + a };
    (s, err)
}

/// Cohen-Rodriguez Villegas-Zagier weighted sum of `Σ (-1)^k a_k` using the
/// first `n` magnitudes.
fn cvz_sum(magnitudes: &[ComplexScalar], n: usize) -> ComplexScalar {
    let nf = n as f64;
    let mut d = (3.0 + 8.0_f64.sqrt()).powf(nf);
    d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0;
    let mut c = -d;
    let mut acc = CompensatedSum::new();
    for (k, &a) in magnitudes.iter().take(n).enumerate() {
        let kf = k as f64;
        c = b - c;
        acc.add(a * c);
        b *= (kf + nf) * (kf - nf) / ((kf + 0.5) * (kf + 1.0));
    }
    acc.value() / d
}

/// Sums `Σ_{n≥0} term(n)` where `term(n) = (-1)^n a_n` with `a_n` a slowly
/// varying envelope, using the Cohen-Rodriguez Villegas-Zagier acceleration.
///
/// The number of weights grows in steps of eight until two successive sums
/// differ by at most `series_rel_tol` relative to the larger of the sum and
/// `|term(0)|` (the latter keeps the test meaningful near a zero of the sum).
pub fn alternating_sum_accelerated<F>(term: F, config: &EvalConfig) -> Result<ComplexScalar>
where
    F: Fn(usize) -> ComplexScalar,
{
    let cap = config.max_terms.min(MAX_CVZ_TERMS);
    let mut magnitudes: Vec<ComplexScalar> = Vec::with_capacity(64);
    let extend = |upto: usize, mags: &mut Vec<ComplexScalar>| {
        while mags.len() < upto {
            let k = mags.len();
            let t = term(k);
            mags.push(if k % 2 == 0 { t } else { -t });
        }
    };

    let mut n = CVZ_START.min(cap);
    extend(n, &mut magnitudes);
    let mut previous = cvz_sum(&magnitudes, n);
    let scale = magnitudes[0].norm();
    let mut last_diff = f64::INFINITY;
    loop {
        let next_n = n + CVZ_STEP;
        if next_n > cap {
            return Err(Error::ToleranceNotMet { iterations: n, estimate: last_diff });
        }
        extend(next_n, &mut magnitudes);
        let current = cvz_sum(&magnitudes, next_n);
        if !is_finite(current) {
            return Err(Error::domain("alternating series produced a non-finite value"));
        }
        let diff = (current - previous).norm();
        if diff <= config.series_rel_tol * current.norm().max(scale) {
            return Ok(current);
        }
        last_diff = diff;
        previous = current;
        n = next_n;
    }
}
