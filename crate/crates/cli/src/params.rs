//! Turning flags into library parameter types.

use std::path::{Path, PathBuf};

use clap::Args;
use num_complex::Complex64 as C;
use zeta_interp::analysis::LimitSource;
use zeta_interp::characters::{chi_3, chi_4, cyclic_characters, CharacterFile, DirichletCharacter};
use zeta_interp::interpolation::{validate_params, InterpParams, Shift};
use zeta_interp::lfunctions::LInterpParams;
use zeta_interp::EvalConfig;

use crate::complex::parse_complex;
use crate::error::{usage, CliError};

#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    /// Parity index k
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub k: Option<u8>,
    /// Complex exponent, e.g. 0.5+14.134725141734695i
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
    /// Shift v, as a/b or a decimal
    #[arg(long)]
    pub v: Option<String>,
    /// Lerch argument, 1 or -1
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<i32>,
    /// Character modulus (cyclic unit groups only; use --char otherwise)
    #[arg(long)]
    pub q: Option<u64>,
    /// Character table file {"q": .., "values": [[re, im], ..]}
    #[arg(long = "char")]
    pub char_file: Option<PathBuf>,
    /// Index of the character among those modulo q (0 is principal)
    #[arg(long)]
    pub index: Option<usize>,
    /// Use the starred pair for q = 3 or 4
    #[arg(long)]
    pub starred: bool,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GridArgs {
    /// Single abscissa
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub ymin: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub ymax: Option<f64>,
    /// Number of grid points from ymin to ymax
    #[arg(long)]
    pub count: Option<usize>,
}

impl ParamArgs {
    pub fn s(&self) -> Result<C, CliError> {
        let text = self.s.as_deref().ok_or_else(|| usage("--s is required"))?;
        parse_complex(text)
    }

    pub fn shift(&self) -> Result<Shift, CliError> {
        Ok(self.v.as_deref().unwrap_or("1").parse::<Shift>()?)
    }

    pub fn interp(&self, config: &EvalConfig) -> Result<InterpParams, CliError> {
        let params = InterpParams { k: self.k.unwrap_or(1), s: self.s()?, v: self.shift()? };
        validate_params(&params, config)?;
        Ok(params)
    }

    pub fn wants_character(&self) -> bool {
        self.q.is_some() || self.char_file.is_some()
    }

    pub fn character(&self) -> Result<DirichletCharacter, CliError> {
        if let Some(path) = &self.char_file {
            return Ok(DirichletCharacter::try_from(read_character_file(path)?)?);
        }
        let q = self.q.ok_or_else(|| usage("--q or --char is required"))?;
        let index = self.index.unwrap_or(1);
        match q {
            3 if index == 1 => return Ok(chi_3()),
            4 if index == 1 => return Ok(chi_4()),
            _ => {}
        }
        let all = cyclic_characters(q).map_err(|_| usage(format!("characters modulo {q} need --char")))?;
        let count = all.len();
        all.into_iter().nth(index).ok_or_else(|| usage(format!("--index must be below {count} for q = {q}")))
    }

    pub fn l_params(&self, config: &EvalConfig) -> Result<LInterpParams, CliError> {
        let params = LInterpParams { s: self.s()?, chi: self.character()? };
        params.validate(config)?;
        Ok(params)
    }

    /// The difference whose limit is studied: starred pair, L pair, or the
    /// `(k, s, v)` interpolation (k and v default to 1).
    pub fn source(&self, config: &EvalConfig) -> Result<LimitSource, CliError> {
        if self.starred {
            let params = self.l_params(config)?;
            let chi = &params.chi;
            return match chi.modulus() {
                3 if *chi == chi_3() => Ok(LimitSource::StarredQ3(params.s)),
                4 if *chi == chi_4() => Ok(LimitSource::StarredQ4(params.s)),
                _ => Err(usage("--starred needs the nonprincipal character modulo 3 or 4")),
            };
        }
        if self.wants_character() {
            return Ok(LimitSource::LFunction(self.l_params(config)?));
        }
        Ok(LimitSource::Interpolation(self.interp(config)?))
    }
}

pub fn read_character_file(path: &Path) -> Result<CharacterFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::BadJson { path: path.into(), source })
}

impl GridArgs {
    /// `--y` alone, or `count` evenly spaced points on `[ymin, ymax]`.
    pub fn points(&self, default_range: Option<(f64, f64)>) -> Result<Vec<f64>, CliError> {
        if let Some(y) = self.y {
            if self.ymin.is_some() || self.ymax.is_some() || self.count.is_some() {
                return Err(usage("--y cannot be combined with --ymin/--ymax/--count"));
            }
            return Ok(vec![y]);
        }
        let (lo, hi) = match (self.ymin, self.ymax, default_range) {
            (Some(a), Some(b), _) => (a, b),
            (a, b, Some((da, db))) => (a.unwrap_or(da), b.unwrap_or(db)),
            _ => return Err(usage("give --y, or --ymin, --ymax and --count")),
        };
        let count = self.count.ok_or_else(|| usage("--count is required with a y range"))?;
        if count == 0 {
            return Err(usage("--count must be at least 1"));
        }
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(usage(format!("need ymin <= ymax, got {lo}, {hi}")));
        }
        if count == 1 {
            return Ok(vec![lo]);
        }
        Ok((0..count).map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64).collect())
    }
}
