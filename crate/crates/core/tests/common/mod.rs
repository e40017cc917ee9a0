//! Independent reference implementations used as oracles by the integration
//! tests. Nothing here calls into the library's special functions.

#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64 as C;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / b.norm()
}

/// `Γ(s)` for `Re s > 0` by the trapezoid rule on `∫ exp(s u - e^u) du`
/// (the substitution `t = e^u` makes the integrand doubly exponentially
/// decaying at both ends).
pub fn gamma_trapezoid(s: C) -> C {
    assert!(s.re > 0.0);
    let lo = -745.0 / s.re.max(1e-3);
    let lo = lo.max(-800.0);
    let hi = 6.7;
    let h = 2e-3;
    let n = ((hi - lo) / h).ceil() as usize;
    let mut sum = C::new(0.0, 0.0);
    for i in 0..=n {
        let u = lo + i as f64 * h;
        let w = if i == 0 || i == n { 0.5 } else { 1.0 };
        sum += (s * u - u.exp()).exp() * w;
    }
    sum * h
}

/// `Σ_{n≥1} a(n) n^{-s}` for a `q`-periodic `a` (given on residues `0..q`),
/// by direct summation over `d < cutoff` periods and an Euler-Maclaurin tail
/// applied to `x ↦ Σ_l a(l) (qx + l)^{-s}`. The tail is analytic in `s`, so
/// the result is the continued value wherever the Dirichlet series has one.
pub fn periodic_dirichlet(s: C, coeffs: &[C], cutoff: usize) -> C {
    let q = coeffs.len();
    let terms: Vec<(C, f64)> =
        (1..=q).map(|l| (coeffs[l % q], l as f64)).filter(|&(a, _)| a != C::new(0.0, 0.0)).collect();
    let pow = |x: f64, e: C| (e * x.ln()).exp();
    let qf = q as f64;
    let mut direct = C::new(0.0, 0.0);
    for d in 0..cutoff {
        for &(a, l) in &terms {
            direct += a * pow(qf * d as f64 + l, -s);
        }
    }
    let big = cutoff as f64;
    // f^{(k)}(D) = Σ a q^k (-s)_k (qD + l)^{-s-k}
    let derivative = |k: usize| -> C {
        let mut falling = C::new(1.0, 0.0);
        for j in 0..k {
            falling *= -s - j as f64;
        }
        let mut sum = C::new(0.0, 0.0);
        for &(a, l) in &terms {
            sum += a * pow(qf * big + l, -s - k as f64);
        }
        sum * falling * qf.powi(k as i32)
    };
    let mut integral = C::new(0.0, 0.0);
    for &(a, l) in &terms {
        integral += a * pow(qf * big + l, C::new(1.0, 0.0) - s);
    }
    integral = integral / ((s - 1.0) * qf);
    // B_2/2!, B_4/4!, B_6/6!, B_8/8!, B_10/10!
    let bernoulli = [1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0, 1.0 / 47900160.0];
    let mut tail = integral + derivative(0) * 0.5;
    for (j, b) in bernoulli.iter().enumerate() {
        tail -= derivative(2 * j + 1) * *b;
    }
    direct + tail
}

pub fn zeta(s: C) -> C {
    periodic_dirichlet(s, &[c(1.0, 0.0)], 2000)
}

/// `Σ_{n≥0} (n + 1/3)^{-s}` style Hurwitz values for rational `v = a/b`.
pub fn hurwitz_rational(s: C, a: usize, b: usize) -> C {
    let mut coeffs = vec![c(0.0, 0.0); b];
    coeffs[a % b] = c(1.0, 0.0);
    periodic_dirichlet(s, &coeffs, 2000) * (s * (b as f64).ln()).exp()
}

/// `Σ_{n≥0} term(n)` for an alternating series by repeated averaging of the
/// partial sums (the Euler transform in its simplest form).
pub fn alternating_by_averaging(term: impl Fn(usize) -> C, start: usize, rounds: usize) -> C {
    let mut partial = C::new(0.0, 0.0);
    for n in 0..start {
        partial += term(n);
    }
    let mut sums = Vec::with_capacity(rounds + 1);
    for n in start..=start + rounds {
        sums.push(partial);
        partial += term(n);
    }
    while sums.len() > 1 {
        sums = sums.windows(2).map(|w| (w[0] + w[1]) * 0.5).collect();
    }
    sums[0]
}

/// `η(s) = Σ (-1)^n (n+1)^{-s}`.
pub fn eta(s: C) -> C {
    alternating_by_averaging(|n| sign(n) * (-s * ((n + 1) as f64).ln()).exp(), 400, 60)
}

/// `β(s) = Σ (-1)^n (2n+1)^{-s}`.
pub fn beta(s: C) -> C {
    alternating_by_averaging(|n| sign(n) * (-s * ((2 * n + 1) as f64).ln()).exp(), 400, 60)
}

fn sign(n: usize) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `ζ(s)` through `η(s) / (1 - 2^{1-s})`.
pub fn zeta_via_eta(s: C) -> C {
    eta(s) / (C::new(1.0, 0.0) - (C::new(1.0, 0.0) - s).scale(2f64.ln()).exp())
}

/// Hardy's `Z(t) = e^{iθ(t)} ζ(1/2 + it)`, real for real `t`.
pub fn hardy_z(t: f64) -> f64 {
    let theta = 0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0 + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t.powi(3));
    (C::from_polar(1.0, theta) * zeta_via_eta(c(0.5, t))).re
}

/// The zero of `Z` in `[lo, hi]` by bisection.
pub fn bisect_hardy_zero(mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = hardy_z(lo);
    assert!(f_lo * hardy_z(hi) < 0.0, "no sign change in [{lo}, {hi}]");
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        let f_mid = hardy_z(mid);
        if f_mid * f_lo <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    0.5 * (lo + hi)
}

/// `∫_0^∞ t^{s-1} e^{(1-v)t} / ((e^t - (-1)^k)(1 + (t/2y)²)) dt` by the
/// midpoint rule after `t = u²`, on `u ∈ [0, 9]` with `points` nodes.
pub fn f_integral_midpoint(k: u8, s: C, v: f64, y: f64, points: usize) -> C {
    let upper = 9.0;
    let h = upper / points as f64;
    let mut sum = C::new(0.0, 0.0);
    for i in 0..points {
        let u = (i as f64 + 0.5) * h;
        let t = u * u;
        let kernel = if k == 0 { (-v * t).exp() / -(-t).exp_m1() } else { (-v * t).exp() / (1.0 + (-t).exp()) };
        // t^{s-1} dt = 2 u^{2s-1} du
        let power = ((s * 2.0 - 1.0) * u.ln()).exp() * 2.0;
        sum += power * kernel / (1.0 + (t / (2.0 * y)).powi(2));
    }
    sum * h
}

/// The display defining `f_{k,s,v}`, written out independently.
pub fn f_display(k: u8, s: C, v: f64, y: f64) -> C {
    if y == 0.0 {
        return c(0.0, 0.0);
    }
    let arg = (2.0 * v - 1.0) * y - PI * k as f64 / 2.0;
    let ys = (s * y.abs().ln()).exp();
    let two = ((s - 2.0) * 2f64.ln()).exp();
    -(ys * two * PI) * (C::new(arg.sin(), 0.0) / (s * PI / 2.0).sin() + y.signum() * arg.cos() / (s * PI / 2.0).cos())
}

/// `Σ_{l=1}^{q-1} values[l] e^{2πinl/q}` by direct summation.
pub fn exponential_sum(values: &[C], n: i64) -> C {
    let q = values.len() as i64;
    (1..q).map(|l| values[l as usize] * C::from_polar(1.0, 2.0 * PI * (n * l) as f64 / q as f64)).sum()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Seeded generator so every run draws the same "random" cases.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
