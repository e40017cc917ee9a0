//! Self-check suites behind `verify`. Each returns a machine-readable report;
//! any failure makes the process exit with status 1.

use std::f64::consts::PI;

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use zeta_interp::analysis::{decay_slope, extract_limit, LimitSource};
use zeta_interp::characters::{
    chi_3, chi_4, cyclic_characters, eval_pq, eval_tq, exceptional_set, gauss_sum, is_primitive, make_character,
    CharacterFile, DirichletCharacter,
};
use zeta_interp::interpolation::{f_ksv, g_series_at_node, integral_f_ksv, node_value, recurrence_f, InterpParams, Shift};
use zeta_interp::lfunctions::{fstar, fstar_recurrence, gamma_sq_at_node, gamma_sq_node_value, l_value, LInterpParams};
use zeta_interp::numerics::{complex_gamma, rpow};
use zeta_interp::special::{dirichlet_beta, hurwitz_zeta, lerch_phi, riemann_zeta, PhiArgs};
use zeta_interp::{EvalConfig, Result};

use crate::config::CliConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Nodes,
    Recurrence,
    Identities,
    Gauss,
    Limits,
    Slopes,
    All,
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub case: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub cases: usize,
    pub failures: Vec<Failure>,
}

impl Report {
    fn new(suite: Suite) -> Self {
        Self { suite, cases: 0, failures: Vec::new() }
    }

    fn check(&mut self, case: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(Failure { case: case.into(), detail: detail() });
        }
    }

    /// Records a check whose evaluation may itself fail.
    fn check_result(&mut self, case: impl Into<String>, outcome: Result<(bool, String)>) {
        match outcome {
            Ok((ok, detail)) => self.check(case, ok, || detail),
            Err(e) => self.check(case, false, || format!("evaluation failed: {e}")),
        }
    }

    fn absorb(&mut self, other: Report) {
        let prefix = format!("{:?}", other.suite).to_lowercase();
        self.cases += other.cases;
        self.failures.extend(other.failures.into_iter().map(|f| Failure { case: format!("{prefix}/{}", f.case), ..f }));
    }
}

/// Options that change what a suite checks.
#[derive(Debug, Default)]
pub struct SuiteInput {
    /// Character table for the identities suite, unvalidated.
    pub character: Option<CharacterFile>,
}

pub fn run(suite: Suite, input: &SuiteInput, config: &CliConfig) -> Report {
    let cfg = &config.eval;
    match suite {
        Suite::Nodes => nodes(cfg),
        Suite::Recurrence => recurrence(cfg),
        Suite::Identities => identities(input, cfg),
        Suite::Gauss => gauss(),
        Suite::Limits => limits(config),
        Suite::Slopes => slopes(cfg),
        Suite::All => {
            let mut all = Report::new(Suite::All);
            for s in [Suite::Nodes, Suite::Recurrence, Suite::Identities, Suite::Gauss, Suite::Limits, Suite::Slopes] {
                all.absorb(run(s, input, config));
            }
            all
        }
    }
}

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / b.norm()
}

fn interp(k: u8, s: C, num: u64, den: u64) -> InterpParams {
    InterpParams { k, s, v: Shift::Rational { num, den } }
}

fn nodes(cfg: &EvalConfig) -> Report {
    let mut report = Report::new(Suite::Nodes);
    let grid = [
        interp(1, c(1.5, 0.0), 1, 1),
        interp(1, c(1.5, 0.0), 1, 2),
        interp(1, c(0.5, 3.0), 1, 2),
        interp(1, c(0.7, -2.0), 2, 3),
        interp(1, c(4.5, 1.0), 1, 3),
        interp(1, c(2.5, 0.0), 1, 1),
        interp(0, c(1.5, 0.0), 1, 1),
        interp(0, c(1.5, 2.0), 1, 1),
        interp(0, c(2.5, 0.0), 1, 2),
        interp(0, c(3.5, -1.0), 1, 3),
        interp(0, c(5.5, 0.0), 2, 3),
        interp(0, c(1.3, 0.5), 1, 4),
    ];
    for p in grid {
        for n in -8..=8i64 {
            let case = format!("k={} s={} v={} n={n}", p.k, p.s, p.v);
            let f = f_ksv(&p, PI * (n as f64 + p.k as f64 / 2.0));
            let closed = node_value(&p, n);
            let scale = 1.0 + f.norm();
            report.check_result(
                case,
                g_series_at_node(&p, n, cfg).map(|g| {
                    let ok = (g - f).norm() <= 1e-9 * scale && (closed - f).norm() <= 1e-9 * scale;
                    (ok, format!("g = {g}, node value = {closed}, f = {f}"))
                }),
            );
        }
    }
    for (s, chi) in [(c(0.7, 0.0), chi_3()), (c(1.5, 2.0), chi_4()), (c(2.5, -1.0), chi_3())] {
        let params = LInterpParams { s, chi };
        for n in -6..=6i64 {
            let case = format!("gamma q={} s={s} n={n}", params.q());
            let expected = gamma_sq_node_value(&params, n);
            report.check_result(
                case,
                gamma_sq_at_node(&params, n, cfg).map(|g| {
                    let ok = (g - expected).norm() <= 1e-9 * (1.0 + expected.norm());
                    (ok, format!("gamma = {g}, node value = {expected}"))
                }),
            );
        }
    }
    report
}

fn recurrence(cfg: &EvalConfig) -> Report {
    let mut report = Report::new(Suite::Recurrence);
    for (p, m) in [(interp(1, c(4.5, 0.0), 1, 1), 2), (interp(0, c(3.5, 0.0), 1, 2), 1), (interp(1, c(4.5, 2.0), 1, 3), 2)] {
        for y in [0.5, 2.0, 3.0, 10.0] {
            let case = format!("k={} s={} v={} m={m} y={y}", p.k, p.s, p.v);
            let outcome = (|| {
                let direct = integral_f_ksv(&p, y, cfg)?;
                let rec = recurrence_f(&p, y, m, cfg)?;
                Ok((rel(rec, direct) < 1e-8, format!("recurrence {rec} vs direct {direct}")))
            })();
            report.check_result(case, outcome);
        }
    }
    for (s, chi) in [(c(4.5, 1.0), chi_3()), (c(3.3, 0.0), chi_4())] {
        let params = LInterpParams { s, chi };
        for y in [1.0, 4.0] {
            let case = format!("F* q={} s={s} y={y}", params.q());
            let outcome = (|| {
                let direct = fstar(&params, y, cfg)?;
                let rec = fstar_recurrence(&params, y, cfg)?;
                Ok((rel(rec, direct) < 1e-8, format!("recurrence {rec} vs direct {direct}")))
            })();
            report.check_result(case, outcome);
        }
    }
    report
}

fn identities(input: &SuiteInput, cfg: &EvalConfig) -> Report {
    let mut report = Report::new(Suite::Identities);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let phi = |z: i32, s: C, v: f64| lerch_phi(PhiArgs::new(z, s, v)?, cfg);
    let one = c(1.0, 0.0);
    for _ in 0..20 {
        let s = c(rng.gen_range(1.05..6.0), rng.gen_range(-20.0..20.0));
        let outcome = (|| {
            let zeta = riemann_zeta(s, cfg)?;
            let a = phi(1, s, 1.0)?;
            let b = phi(1, s, 0.5)? / (rpow(2.0, s) - 1.0);
            let d = phi(-1, s, 1.0)? / (one - rpow(2.0, one - s));
            let worst = rel(a, zeta).max(rel(b, zeta)).max(rel(d, zeta));
            Ok((worst < 1e-10, format!("worst relative deviation {worst:e}")))
        })();
        report.check_result(format!("zeta representations s={s}"), outcome);
    }
    for _ in 0..20 {
        let s = c(rng.gen_range(0.05..6.0), rng.gen_range(-20.0..20.0));
        let outcome = (|| {
            let beta = dirichlet_beta(s, cfg)?;
            let a = phi(-1, s, 0.5)? / rpow(2.0, s);
            // the same value from Hurwitz zeta at quarter offsets
            let b = (hurwitz_zeta(s, 0.25, cfg)? - hurwitz_zeta(s, 0.75, cfg)?) * rpow(4.0, -s);
            let worst = rel(a, beta).max(rel(b, beta));
            Ok((worst < 1e-10, format!("worst relative deviation {worst:e}")))
        })();
        report.check_result(format!("beta representation s={s}"), outcome);
    }

    let tables: Vec<CharacterFile> = match &input.character {
        Some(table) => vec![table.clone()],
        None => vec![chi_3().into(), chi_4().into()],
    };
    for table in tables {
        let q = table.q;
        let values = table.values.iter().map(|&[re, im]| c(re, im)).collect();
        match make_character(q, values) {
            Ok(chi) => character_identities(&mut report, &chi, cfg),
            Err(e) => report.check(format!("character axioms q={q}"), false, || e.to_string()),
        }
    }
    report
}

/// `L(3, χ)` against a direct partial sum, and the Gauss sum modulus.
fn character_identities(report: &mut Report, chi: &DirichletCharacter, cfg: &EvalConfig) {
    let q = chi.modulus();
    report.check(format!("character axioms q={q}"), true, String::new);
    let s = c(3.0, 0.0);
    let terms = 200_000;
    let direct: C = (1..=terms).rev().map(|n| chi.value(n) * (n as f64).powi(-3)).sum();
    // tail bound Σ_{n>N} n^{-3} < 1/(2N²)
    let tail = 0.5 / (terms as f64 * terms as f64);
    let outcome = l_value(s, chi, cfg).map(|l| ((l - direct).norm() <= tail + 1e-13, format!("L = {l}, direct = {direct}")));
    report.check_result(format!("L(3, chi) q={q}"), outcome);
    if !chi.is_principal() && is_primitive(chi).unwrap_or(false) {
        let outcome = gauss_sum(chi).map(|g| {
            let dev = (g.norm() - (q as f64).sqrt()).abs();
            (dev < 1e-11, format!("|gauss sum| = {}", g.norm()))
        });
        report.check_result(format!("gauss modulus q={q}"), outcome);
    }
}

fn gauss() -> Report {
    let mut report = Report::new(Suite::Gauss);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for q in [3u64, 4, 5, 7] {
        let characters = cyclic_characters(q).unwrap_or_default();
        for (j, chi) in characters.iter().enumerate() {
            if chi.is_principal() || !is_primitive(chi).unwrap_or(false) {
                continue;
            }
            let case = format!("q={q} index={j}");
            let outcome = gauss_sum(chi).map(|g| {
                let dev = (g.norm() - (q as f64).sqrt()).abs();
                (dev < 1e-11, format!("|gauss sum| = {}", g.norm()))
            });
            report.check_result(format!("{case} gauss modulus"), outcome);

            let outcome = exceptional_set(chi, 30).map(|set| {
                let wrong: Vec<i64> =
                    (-30..=30).filter(|&n| set.contains(n) != (n == 0 || gcd(n.unsigned_abs(), q) > 1)).collect();
                (wrong.is_empty(), format!("membership differs from the gcd rule at {wrong:?}"))
            });
            report.check_result(format!("{case} exceptional set"), outcome);

            let half_q = q as f64 / 2.0;
            for _ in 0..20 {
                let w = c(rng.gen_range(-10.0..10.0), 0.0);
                let expected = c(0.0, -2.0) * (w * half_q).sin();
                if let Ok(t) = eval_tq(chi, w) {
                    let product = t * eval_pq(chi, w);
                    let ok = (product - expected).norm() <= 1e-12 * (1.0 + expected.norm());
                    report.check(format!("{case} T*P at y={}", w.re), ok, || format!("{product} vs {expected}"));
                }
            }
        }
    }
    report
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn limits(config: &CliConfig) -> Report {
    let cfg = &config.eval;
    let (y0, y_max) = (config.analysis.y0, config.analysis.y_max);
    let mut report = Report::new(Suite::Limits);
    let limit_of = |source: &LimitSource| extract_limit(source, y0, y_max, cfg).map(|e| e.limit);
    let gamma = |s: C| complex_gamma(s, cfg.pole_guard);
    let one = c(1.0, 0.0);

    let s = c(1.5, 0.0);
    let outcome = (|| {
        let raw = limit_of(&LimitSource::Interpolation(interp(1, s, 1, 1)))?;
        let zeta = raw / (gamma(s)? * (one - rpow(2.0, one - s)));
        Ok(((zeta.re - 2.6123753486).abs() < 1e-6 * 2.6123753486 && rel(zeta, riemann_zeta(s, cfg)?) < 1e-6, format!("{zeta}")))
    })();
    report.check_result("zeta(1.5) from k=1 v=1", outcome);

    for s in [c(1.5, 0.0), c(0.5, 3.0)] {
        let outcome = (|| {
            let raw = limit_of(&LimitSource::Interpolation(interp(1, s, 1, 2)))?;
            let beta = raw / (gamma(s)? * rpow(2.0, s));
            let oracle = dirichlet_beta(s, cfg)?;
            Ok((rel(beta, oracle) < 1e-6, format!("{beta} vs {oracle}")))
        })();
        report.check_result(format!("beta({s}) from k=1 v=1/2"), outcome);
    }

    let s = c(0.7, 0.0);
    for (name, source, q) in [
        ("L(0.7, chi_3)", LimitSource::LFunction(LInterpParams { s, chi: chi_3() }), 3.0),
        ("starred L(0.7, chi_3)", LimitSource::StarredQ3(s), 3.0),
        ("starred L(0.7, chi_4)", LimitSource::StarredQ4(s), 4.0),
    ] {
        let chi = if q == 3.0 { chi_3() } else { chi_4() };
        let outcome = (|| {
            let l = limit_of(&source)? / (gamma(s)? * rpow(q, s));
            let oracle = l_value(s, &chi, cfg)?;
            Ok((rel(l, oracle) < 1e-6, format!("{l} vs {oracle}")))
        })();
        report.check_result(name, outcome);
    }
    report
}

fn slopes(cfg: &EvalConfig) -> Report {
    let mut report = Report::new(Suite::Slopes);
    let sources = [
        LimitSource::Interpolation(interp(1, c(1.5, 0.0), 1, 1)),
        LimitSource::Interpolation(interp(1, c(0.5, 3.0), 1, 2)),
        LimitSource::Interpolation(interp(0, c(1.5, 0.0), 1, 1)),
        LimitSource::Interpolation(interp(0, c(2.5, 1.0), 1, 3)),
    ];
    for source in sources {
        let case = match &source {
            LimitSource::Interpolation(p) => format!("k={} s={} v={}", p.k, p.s, p.v),
            other => format!("{other:?}"),
        };
        let outcome = decay_slope(&source, 20.0, 256.0, cfg).map(|slope| ((-2.3..=-1.7).contains(&slope), format!("slope {slope}")));
        report.check_result(case, outcome);
    }
    report
}
