mod common;

use std::f64::consts::PI;

use common::{c, exponential_sum, gcd, rel};
use num_complex::Complex64 as C;
use proptest::prelude::*;
use zeta_interp::analysis::{lp_window_norm, LimitSource};
use zeta_interp::characters::{
    chi_3, chi_4, cyclic_characters, eval_pq, eval_tq, exceptional_set, gauss_sum, is_primitive, make_character,
    DirichletCharacter,
};
use zeta_interp::interpolation::{delta, f_ksv, InterpParams, Shift};
use zeta_interp::lfunctions::LInterpParams;
use zeta_interp::numerics::{complex_gamma, integrate_semi_infinite, richardson_limit, SemiInfinite};
use zeta_interp::special::{hurwitz_tail, lerch_phi, PhiArgs};
use zeta_interp::EvalConfig;

fn away_from_integers(s: C) -> bool {
    (s.re - s.re.round()).abs() > 1e-3 || s.im.abs() > 1e-3
}

fn complex_in(re: std::ops::Range<f64>, im: std::ops::Range<f64>) -> impl Strategy<Value = C> {
    (re, im).prop_map(|(a, b)| c(a, b))
}

/// Every primitive character with modulus in `3..=13`. Moduli with a cyclic
/// unit group come from a generator; 8 and 12 have only real characters, so
/// all sign patterns on the units are tried.
fn primitive_characters() -> Vec<DirichletCharacter> {
    let mut out = Vec::new();
    for q in 3..=13u64 {
        let candidates = match cyclic_characters(q) {
            Ok(chars) => chars,
            Err(_) => {
                let units: Vec<u64> = (1..q).filter(|&l| gcd(l, q) == 1).collect();
                (0..1u32 << units.len())
                    .filter_map(|mask| {
                        let mut values = vec![c(0.0, 0.0); q as usize];
                        for (i, &u) in units.iter().enumerate() {
                            values[u as usize] = c(if mask >> i & 1 == 1 { -1.0 } else { 1.0 }, 0.0);
                        }
                        make_character(q, values).ok()
                    })
                    .collect()
            }
        };
        out.extend(candidates.into_iter().filter(|chi| !chi.is_principal() && is_primitive(chi).unwrap()));
    }
    out
}

#[test]
fn primitive_character_census() {
    // number of primitive characters for q = 3..13
    let mut counts = [0usize; 14];
    for chi in primitive_characters() {
        counts[chi.modulus() as usize] += 1;
    }
    assert_eq!(&counts[3..], &[1, 1, 3, 0, 5, 2, 4, 0, 9, 1, 11]);
}

#[test]
fn gauss_sums_of_primitive_characters() {
    for chi in primitive_characters() {
        let q = chi.modulus();
        let g = gauss_sum(&chi).unwrap();
        assert!((g.norm() - (q as f64).sqrt()).abs() < 1e-11, "q = {q}: {}", g.norm());
        for n in -20i64..=20 {
            let twisted = chi.value(n).conj() * g;
            assert!((exponential_sum(chi.values(), n) - twisted).norm() < 1e-11, "q = {q}, n = {n}");
        }
        let set = exceptional_set(&chi, 40).unwrap();
        for n in -40i64..=40 {
            assert_eq!(set.contains(n), n == 0 || gcd(n.unsigned_abs(), q) > 1, "q = {q}, n = {n}");
            assert_eq!(set.contains(n), set.contains(-n));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn gamma_recurrence(s in complex_in(-20.0..20.0, -20.0..20.0)) {
        prop_assume!(s.norm() >= 0.5 && s.norm() <= 20.0 && away_from_integers(s));
        let g = complex_gamma(s, 1e-8).unwrap();
        let g1 = complex_gamma(s + 1.0, 1e-8).unwrap();
        prop_assert!(rel(g1, s * g) < 1e-12, "{}", rel(g1, s * g));
    }

    #[test]
    fn gamma_reflection(s in complex_in(-6.0..6.0, -6.0..6.0)) {
        prop_assume!(away_from_integers(s));
        let one = c(1.0, 0.0);
        let product = complex_gamma(s, 1e-8).unwrap() * complex_gamma(one - s, 1e-8).unwrap() * (s * PI).sin() / PI;
        prop_assert!((product - one).norm() < 1e-11, "{product}");
    }

    #[test]
    fn quadrature_is_linear(a in -3.0..3.0f64, b in -3.0..3.0f64, alpha in -0.9..2.0f64) {
        let cfg = EvalConfig::default();
        let shape = SemiInfinite { endpoint_exponent: alpha, decay_rate: 1.0 };
        let f = |t: f64| c(t.powf(alpha) * (-t).exp(), 0.0);
        let g = |t: f64| c(0.0, t.powf(alpha) * (-2.0 * t).exp() * (1.0 + t).ln_1p());
        let lhs = integrate_semi_infinite(|t| f(t) * a + g(t) * b, shape, &cfg).unwrap();
        let rhs = integrate_semi_infinite(f, shape, &cfg).unwrap() * a + integrate_semi_infinite(g, shape, &cfg).unwrap() * b;
        prop_assert!((lhs - rhs).norm() < 1e-11 * (1.0 + rhs.norm()));
    }

    #[test]
    fn richardson_is_exact_on_the_model(limit in -5.0..5.0f64, a in -10.0..10.0f64, b in -50.0..50.0f64, y0 in 5.0..40.0f64) {
        let samples: Vec<(f64, C)> = (0..3)
            .map(|j| {
                let y = y0 * 2f64.powi(j);
                (y, c(limit + a / (y * y) + b / y.powi(4), 0.0))
            })
            .collect();
        let est = richardson_limit(&samples, 2).unwrap();
        prop_assert!((est.limit.re - limit).abs() < 1e-12 * (1.0 + limit.abs()) + 1e-13 * (a.abs() + b.abs()));
    }

    #[test]
    fn hurwitz_recurrence(s in complex_in(1.1..8.0, -30.0..30.0), a in 0.05..5.0f64) {
        let cfg = EvalConfig::default();
        let lhs = hurwitz_tail(s, a, &cfg).unwrap();
        let rhs = (-s * a.ln()).exp() + hurwitz_tail(s, a + 1.0, &cfg).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-12, "{}", rel(lhs, rhs));
    }

    #[test]
    fn lerch_paths_agree(minus in any::<bool>(), s in complex_in(0.3..5.0, -8.0..8.0), v in 0.05..1.0f64) {
        let z = if minus { -1 } else { 1 };
        prop_assume!(z == -1 || s.re > 1.1);
        let cfg = EvalConfig { cross_check: true, ..EvalConfig::default() };
        prop_assert!(lerch_phi(PhiArgs::new(z, s, v).unwrap(), &cfg).is_ok());
    }

    #[test]
    fn t_times_p(y in -12.0..12.0f64, which in 0usize..4) {
        let chars5 = cyclic_characters(5).unwrap();
        let chi = [chi_3(), chi_4(), chars5[1].clone(), chars5[2].clone()][which].clone();
        let q = chi.modulus() as f64;
        let w = c(y, 0.0);
        if let Ok(t) = eval_tq(&chi, w) {
            let expected = c(0.0, -2.0) * (w * (q / 2.0)).sin();
            prop_assert!((t * eval_pq(&chi, w) - expected).norm() < 1e-12 * (1.0 + expected.norm()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn half_shift_is_even(s in complex_in(0.2..3.8, -4.0..4.0), y in 0.1..40.0f64) {
        prop_assume!((s.re - 2.0).abs() > 0.05 && away_from_integers(s));
        let p = InterpParams::new(1, s, Shift::rational(1, 2).unwrap()).unwrap();
        let cfg = EvalConfig::default();
        prop_assert!((f_ksv(&p, y) - f_ksv(&p, -y)).norm() <= 1e-15 * f_ksv(&p, y).norm());
        let (a, b) = (delta(&p, y, &cfg).unwrap(), delta(&p, -y, &cfg).unwrap());
        prop_assert!((a - b).norm() <= 1e-15 * a.norm());
    }

    #[test]
    fn window_norm_is_monotone(n in 25.0..80.0f64, extra in 0.0..40.0f64, p in 0.6..3.0f64) {
        let cfg = EvalConfig::default();
        let source = LimitSource::LFunction(LInterpParams::new(c(0.7, 2.0), chi_3()).unwrap());
        let a = lp_window_norm(&source, p, n, 20.0, &cfg).unwrap();
        let b = lp_window_norm(&source, p, n + extra, 20.0, &cfg).unwrap();
        prop_assert!(b >= a);
    }
}
