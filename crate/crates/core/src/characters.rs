//! Dirichlet characters stored as value tables.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::numerics::ComplexScalar;
use crate::{Error, Result};

const AXIOM_TOL: f64 = 1e-12;
/// Threshold below which a character exponential sum counts as zero.
pub const EXCEPTIONAL_THRESHOLD: f64 = 1e-10;

/// A Dirichlet character modulo `q`, `values[l] = χ(l)` for `0 <= l < q`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CharacterFile", into = "CharacterFile")]
pub struct DirichletCharacter {
    q: u64,
    values: Vec<ComplexScalar>,
}

/// On-disk form: `{"q": 4, "values": [[0,0],[1,0],[0,0],[-1,0]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharacterFile {
    pub q: u64,
    pub values: Vec<[f64; 2]>,
}

impl TryFrom<CharacterFile> for DirichletCharacter {
    type Error = Error;

    fn try_from(file: CharacterFile) -> Result<Self> {
        let values = file.values.iter().map(|&[re, im]| ComplexScalar::new(re, im)).collect();
        make_character(file.q, values)
    }
}

impl From<DirichletCharacter> for CharacterFile {
    fn from(chi: DirichletCharacter) -> Self {
        Self { q: chi.q, values: chi.values.iter().map(|z| [z.re, z.im]).collect() }
    }
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn values(&self) -> &[ComplexScalar] {
        &self.values
    }

    /// `χ(n)` for any integer `n`.
    pub fn value(&self, n: i64) -> ComplexScalar {
        self.values[n.rem_euclid(self.q as i64) as usize]
    }

    pub fn is_principal(&self) -> bool {
        self.values
            .iter()
            .enumerate()
            .all(|(l, &x)| gcd(l as u64, self.q) != 1 || (x - 1.0).norm() < AXIOM_TOL)
    }

    /// `χ(-1) = -1`.
    pub fn is_odd(&self) -> bool {
        (self.value(-1) + 1.0).norm() < AXIOM_TOL
    }

    /// `Σ_{l=1}^{q-1} χ(l) e^{2πinl/q}`.
    pub fn exponential_sum(&self, n: i64) -> ComplexScalar {
        let q = self.q as i64;
        (1..q)
            .map(|l| {
                let phase = 2.0 * PI * ((n * l).rem_euclid(q) as f64) / q as f64;
                self.values[l as usize] * ComplexScalar::from_polar(1.0, phase)
            })
            .sum()
    }

    /// `Σ_l χ(l) e^{i(2l - q) w / 2}`, the trigonometric polynomial behind
    /// `P_q` and `T_q`.
    fn shifted_sum(&self, w: ComplexScalar) -> ComplexScalar {
        let q = self.q as f64;
        let i = ComplexScalar::i();
        (1..self.q)
            .map(|l| self.values[l as usize] * (i * w * (0.5 * (2.0 * l as f64 - q))).exp())
            .sum()
    }
}

/// Validates a value table against the character axioms.
pub fn make_character(q: u64, values: Vec<ComplexScalar>) -> Result<DirichletCharacter> {
    if q == 0 {
        return Err(Error::NotACharacter("modulus must be at least 1".into()));
    }
    if values.len() as u64 != q {
        return Err(Error::NotACharacter(format!("expected {q} values, got {}", values.len())));
    }
    for (l, &x) in values.iter().enumerate() {
        if !(x.re.is_finite() && x.im.is_finite()) {
            return Err(Error::NotACharacter(format!("chi({l}) is not finite")));
        }
        let unit = gcd(l as u64, q) == 1;
        if !unit && x.norm() > AXIOM_TOL {
            return Err(Error::NotACharacter(format!("chi({l}) must vanish since gcd({l}, {q}) > 1")));
        }
        if unit && (x.norm() - 1.0).abs() > AXIOM_TOL {
            return Err(Error::NotACharacter(format!("|chi({l})| = {} is not 1", x.norm())));
        }
    }
    for a in 0..q as usize {
        for b in a..q as usize {
            let ab = (a * b) % q as usize;
            if (values[ab] - values[a] * values[b]).norm() > AXIOM_TOL {
                return Err(Error::NotACharacter(format!("chi({a}*{b}) != chi({a}) chi({b})")));
            }
        }
    }
    Ok(DirichletCharacter { q, values })
}

/// `χ_0(l) = 1` if `gcd(l, q) = 1`, else 0.
pub fn principal_character(q: u64) -> Result<DirichletCharacter> {
    if q == 0 {
        return Err(Error::domain("modulus must be at least 1"));
    }
    let values = (0..q).map(|l| ComplexScalar::new(if gcd(l, q) == 1 { 1.0 } else { 0.0 }, 0.0)).collect();
    Ok(DirichletCharacter { q, values })
}

/// Whether `χ` is not induced by a character of a proper divisor of `q`.
pub fn is_primitive(chi: &DirichletCharacter) -> Result<bool> {
    let q = chi.q;
    if q == 1 || chi.is_principal() {
        return Err(Error::domain("primitivity is defined for nonprincipal characters with q > 1"));
    }
    for d in (1..q).filter(|d| q % d == 0) {
        let witness = (1..q)
            .filter(|&a| a % d == 1 % d && gcd(a, q) == 1)
            .any(|a| (chi.values[a as usize] - 1.0).norm() > AXIOM_TOL);
        if !witness {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Σ_{l=1}^{q-1} χ(l) e^{2πil/q}`.
pub fn gauss_sum(chi: &DirichletCharacter) -> Result<ComplexScalar> {
    if chi.q < 2 {
        return Err(Error::domain("Gauss sum needs q > 1"));
    }
    Ok(chi.exponential_sum(1))
}

/// Integers `n` in `[-n_max, n_max]` at which the character exponential sum
/// vanishes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalSet {
    pub q: u64,
    pub members: Vec<i64>,
}

impl ExceptionalSet {
    pub fn contains(&self, n: i64) -> bool {
        self.members.binary_search(&n).is_ok()
    }
}

/// Numerically determined exceptional set. For a primitive character the
/// result must coincide with `{n : gcd(n, q) > 1}`.
pub fn exceptional_set(chi: &DirichletCharacter, n_max: i64) -> Result<ExceptionalSet> {
    if chi.q < 2 || chi.is_principal() {
        return Err(Error::domain("exceptional set needs a nonprincipal character with q > 1"));
    }
    let primitive = is_primitive(chi)?;
    let n_max = n_max.abs();
    let mut members = Vec::new();
    for n in -n_max..=n_max {
        let vanishes = chi.exponential_sum(n).norm() < EXCEPTIONAL_THRESHOLD;
        if primitive && vanishes != (gcd(n.unsigned_abs(), chi.q) > 1) {
            return Err(Error::PrimitiveMismatch(n));
        }
        if vanishes {
            members.push(n);
        }
    }
    Ok(ExceptionalSet { q: chi.q, members })
}

/// `P_q(w) = (2/i) Σ χ(l) e^{i(2l-q)w/2}`.
pub fn eval_pq(chi: &DirichletCharacter, w: ComplexScalar) -> ComplexScalar {
    chi.shifted_sum(w) * ComplexScalar::new(0.0, -2.0)
}

/// `T_q(w) = sin(qw/2) / Σ χ(l) e^{i(2l-q)w/2}`.
///
/// For the nonprincipal characters modulo 3 and 4 the quotient is entire and
/// the closed forms `(i/2)(1 + 2 cos w)` and `i cos w` are returned.
pub fn eval_tq(chi: &DirichletCharacter, w: ComplexScalar) -> Result<ComplexScalar> {
    let i = ComplexScalar::i();
    if !chi.is_principal() {
        match chi.q {
            3 => return Ok(i * 0.5 * (1.0 + 2.0 * w.cos())),
            4 => return Ok(i * w.cos()),
            _ => {}
        }
    }
    let denominator = chi.shifted_sum(w);
    let scale: f64 = chi.values.iter().map(|x| x.norm()).sum::<f64>() * (0.5 * chi.q as f64 * w.im.abs()).exp();
    if denominator.norm() < 1e-10 * scale.max(1.0) {
        return Err(Error::DivisionNearZero { re: w.re, im: w.im });
    }
    Ok((w * (0.5 * chi.q as f64)).sin() / denominator)
}

pub fn euler_totient(q: u64) -> u64 {
    (1..=q).filter(|&l| gcd(l, q) == 1).count() as u64
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The character modulo 1, identically 1.
pub fn trivial_character() -> DirichletCharacter {
    DirichletCharacter { q: 1, values: vec![ComplexScalar::new(1.0, 0.0)] }
}

/// The nonprincipal character modulo 3: `[0, 1, -1]`.
pub fn chi_3() -> DirichletCharacter {
    real_table(3, &[0.0, 1.0, -1.0])
}

/// The nonprincipal character modulo 4: `[0, 1, 0, -1]`.
pub fn chi_4() -> DirichletCharacter {
    real_table(4, &[0.0, 1.0, 0.0, -1.0])
}

fn real_table(q: u64, values: &[f64]) -> DirichletCharacter {
    DirichletCharacter { q, values: values.iter().map(|&x| ComplexScalar::new(x, 0.0)).collect() }
}

/// All `φ(q)` characters of a modulus with cyclic unit group (`q` = 2, 4,
/// `p^k`, `2p^k`), indexed by `j`: `χ_j(g^m) = e^{2πijm/φ(q)}` for the
/// smallest generator `g`. Index 0 is the principal character.
pub fn cyclic_characters(q: u64) -> Result<Vec<DirichletCharacter>> {
    if q < 2 {
        return Err(Error::domain("cyclic_characters needs q >= 2"));
    }
    let order = euler_totient(q);
    let generator = (1..q)
        .find(|&g| gcd(g, q) == 1 && multiplicative_order(g, q) == order)
        .ok_or_else(|| Error::domain(format!("the unit group modulo {q} is not cyclic")))?;
    let mut log = vec![None; q as usize];
    let mut x = 1u64;
    for m in 0..order {
        log[x as usize] = Some(m);
        x = x * generator % q;
    }
    let characters = (0..order)
        .map(|j| {
            let values = log
                .iter()
                .map(|entry| match entry {
                    Some(m) => {
                        let k = (j * m) % order;
                        exact_root_of_unity(k, order)
                    }
                    None => ComplexScalar::new(0.0, 0.0),
                })
                .collect();
            DirichletCharacter { q, values }
        })
        .collect();
    Ok(characters)
}

fn multiplicative_order(g: u64, q: u64) -> u64 {
    let mut x = g % q;
    let mut k = 1;
    while x != 1 % q {
        x = x * g % q;
        k += 1;
    }
    k
}

// e^{2πik/n} with the real roots and ±i produced exactly.
fn exact_root_of_unity(k: u64, n: u64) -> ComplexScalar {
    if 4 * k % n == 0 {
        match 4 * k / n {
            0 => return ComplexScalar::new(1.0, 0.0),
            1 => return ComplexScalar::new(0.0, 1.0),
            2 => return ComplexScalar::new(-1.0, 0.0),
            _ => return ComplexScalar::new(0.0, -1.0),
        }
    }
    ComplexScalar::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)
}
