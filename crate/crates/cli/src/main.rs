//! `zeta-interp`: batch front end for evaluating the interpolation
//! differences, recovering their limits and probing for zeros.

mod complex;
mod config;
mod error;
mod params;
mod table;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C;
use serde_json::{json, Value};
use zeta_interp::analysis::{extract_limit, zero_probe, LimitSource, ProbeSettings};
use zeta_interp::characters::{eval_pq, eval_tq, exceptional_set, gauss_sum, is_primitive};
use zeta_interp::interpolation::{delta, f_ksv, g_series, g_via_identity};
use zeta_interp::lfunctions::l_value;
use zeta_interp::numerics::{complex_gamma, rpow};
use zeta_interp::special::{dirichlet_beta, lerch_phi, riemann_zeta, PhiArgs};
use zeta_interp::{Error, EvalConfig};

use crate::config::CliConfig;
use crate::error::{usage, CliError};
use crate::params::{read_character_file, GridArgs, ParamArgs};
use crate::table::{complex_json, Cell, Kind, Table};
use crate::verify::{Suite, SuiteInput};

#[derive(Debug, Parser)]
#[command(name = "zeta-interp", version, about = "Interpolation differences, zeta-type limits and zero probes")]
struct Cli {
    /// JSON configuration file; flags override it
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Print the effective configuration and exit
    #[arg(long, global = true)]
    show_config: bool,
    /// Output format of tables (reports are always JSON)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a function at one point or on a y grid
    Eval {
        #[arg(value_enum)]
        function: Function,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Run a self-check suite and print a JSON report
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Character table checked by the identities suite
        #[arg(long = "char")]
        char_file: Option<PathBuf>,
    },
    /// Extrapolate lim D(y) from dyadic masked samples
    Limit {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Classify s by the amplitude and L_p growth of D
    ZeroProbe {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Exponent of the window norm, > 1/2
        #[arg(long)]
        p: Option<f64>,
    },
    /// Masked samples of D(y) and the distance to its limit
    Plotdata {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Character data: Gauss sum, exceptional set, P_q and T_q
    Char {
        #[arg(value_enum)]
        what: CharQuery,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Largest |n| examined for the exceptional set
        #[arg(long, default_value_t = 10)]
        nmax: i64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Function {
    Phi,
    Zeta,
    Beta,
    Lfunc,
    F,
    G,
    Delta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CharQuery {
    Gauss,
    Eset,
    Pq,
}

/// What a command produces before it is written out.
enum Output {
    Table(Table),
    Json(Value),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::VerifyFailed { .. }) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let mut config = CliConfig::load(cli.config.as_deref())?;
    apply_overrides(cli, &mut config);
    config.validate()?;
    if cli.show_config {
        let text = serde_json::to_string_pretty(&config).map_err(|e| CliError::Output(e.to_string()))?;
        return emit(cli, &format!("{text}\n"));
    }
    let command = cli.command.as_ref().ok_or_else(|| usage("a subcommand is required (see --help)"))?;

    let mut verify_outcome = Ok(());
    let output = match command {
        Command::Eval { function, params, grid } => eval(*function, params, grid, &config.eval)?,
        Command::Verify { suite, char_file } => {
            let input = SuiteInput { character: char_file.as_deref().map(read_character_file).transpose()? };
            let report = verify::run(*suite, &input, &config);
            if !report.failures.is_empty() {
                verify_outcome = Err(CliError::VerifyFailed { cases: report.cases, failures: report.failures.len() });
            }
            Output::Json(serde_json::to_value(&report).map_err(|e| CliError::Output(e.to_string()))?)
        }
        Command::Limit { params, .. } => limit(params, &config)?,
        Command::ZeroProbe { params, .. } => probe(params, &config)?,
        Command::Plotdata { params, grid } => plotdata(params, grid, &config)?,
        Command::Char { what, params, grid, nmax } => char_query(*what, params, grid, *nmax)?,
    };
    let text = match output {
        Output::Table(table) => match cli.format.unwrap_or(Format::Csv) {
            Format::Csv => table.to_csv()?,
            Format::Json => pretty(&table.to_json())?,
        },
        Output::Json(value) => pretty(&value)?,
    };
    emit(cli, &text)?;
    verify_outcome
}

/// Flags that shadow configuration entries.
fn apply_overrides(cli: &Cli, config: &mut CliConfig) {
    let a = &mut config.analysis;
    match &cli.command {
        Some(Command::Limit { grid, .. }) => {
            a.y0 = grid.ymin.unwrap_or(a.y0);
            a.y_max = grid.ymax.unwrap_or(a.y_max);
        }
        Some(Command::ZeroProbe { grid, p, .. }) => {
            a.y0 = grid.ymin.unwrap_or(a.y0);
            a.y_max = grid.ymax.unwrap_or(a.y_max);
            a.p = p.unwrap_or(a.p);
        }
        _ => {}
    }
}

fn pretty(value: &Value) -> Result<String, CliError> {
    serde_json::to_string_pretty(value).map(|t| t + "\n").map_err(|e| CliError::Output(e.to_string()))
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source }),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Output(e.to_string())),
    }
}

fn eval(function: Function, params: &ParamArgs, grid: &GridArgs, cfg: &EvalConfig) -> Result<Output, CliError> {
    let scalar = |value: C, s: C| {
        let mut table = Table::new(&[("s", Kind::Complex), ("value", Kind::Complex)]);
        table.push(vec![Cell::Complex(s), Cell::Complex(value)]);
        Ok(Output::Table(table))
    };
    match function {
        Function::Phi => {
            let s = params.s()?;
            let z = params.z.unwrap_or(1);
            let v = params.shift()?.value();
            scalar(lerch_phi(PhiArgs::new(z, s, v)?, cfg)?, s)
        }
        Function::Zeta => {
            let s = params.s()?;
            scalar(riemann_zeta(s, cfg)?, s)
        }
        Function::Beta => {
            let s = params.s()?;
            scalar(dirichlet_beta(s, cfg)?, s)
        }
        Function::Lfunc => {
            let s = params.s()?;
            scalar(l_value(s, &params.character()?, cfg)?, s)
        }
        Function::F | Function::G | Function::Delta => {
            let p = params.interp(cfg)?;
            let ys = grid.points(None)?;
            let columns: &[(&str, Kind)] = match function {
                Function::F => &[("y", Kind::Real), ("f", Kind::Complex)],
                Function::G => &[("y", Kind::Real), ("g_identity", Kind::Complex), ("g_series", Kind::Complex)],
                _ => &[
                    ("y", Kind::Real),
                    ("f", Kind::Complex),
                    ("g_identity", Kind::Complex),
                    ("g_series", Kind::Complex),
                    ("delta", Kind::Complex),
                    ("d", Kind::Complex),
                ],
            };
            let mut table = Table::new(columns);
            for y in ys {
                let f = f_ksv(&p, y);
                if function == Function::F {
                    table.push(vec![Cell::Real(y), Cell::Complex(f)]);
                    continue;
                }
                let identity = g_via_identity(&p, y, cfg)?;
                // the series needs a rational shift and fails within the node guard
                let series = match g_series(&p, y, cfg) {
                    Ok(g) => Cell::Complex(g),
                    Err(Error::IrrationalV | Error::NearNode { .. }) => Cell::Missing,
                    Err(e) => return Err(e.into()),
                };
                if function == Function::G {
                    table.push(vec![Cell::Real(y), Cell::Complex(identity), series]);
                    continue;
                }
                let diff = delta(&p, y, cfg)?;
                let divisor = p.sin_factor(y);
                let d = if divisor.abs() > 1e-12 { Cell::Complex(diff / divisor) } else { Cell::Missing };
                table.push(vec![
                    Cell::Real(y),
                    Cell::Complex(f),
                    Cell::Complex(identity),
                    series,
                    Cell::Complex(diff),
                    d,
                ]);
            }
            Ok(Output::Table(table))
        }
    }
}

fn source_name(source: &LimitSource) -> &'static str {
    match source {
        LimitSource::Interpolation(_) => "interpolation",
        LimitSource::LFunction(_) => "lfunction",
        LimitSource::StarredQ3(_) => "starred_q3",
        LimitSource::StarredQ4(_) => "starred_q4",
    }
}

/// `Γ(s)` times the power of `q` that separates the limit from `Φ` or `L`.
fn normalization(source: &LimitSource, cfg: &EvalConfig) -> Result<C, CliError> {
    let s = source.s();
    let q = match source {
        LimitSource::Interpolation(_) => 1.0,
        LimitSource::LFunction(p) => p.q() as f64,
        LimitSource::StarredQ3(_) => 3.0,
        LimitSource::StarredQ4(_) => 4.0,
    };
    Ok(complex_gamma(s, cfg.pole_guard)? * rpow(q, s))
}

fn limit(params: &ParamArgs, config: &CliConfig) -> Result<Output, CliError> {
    let cfg = &config.eval;
    let source = params.source(cfg)?;
    let est = extract_limit(&source, config.analysis.y0, config.analysis.y_max, cfg)?;
    let target = source.target(cfg)?;
    let norm = normalization(&source, cfg)?;
    let samples: Vec<Value> = est.samples.entries.iter().map(|&(y, d)| json!({ "y": y, "d": complex_json(d) })).collect();
    Ok(Output::Json(json!({
        "source": source_name(&source),
        "s": complex_json(source.s()),
        "estimate": complex_json(est.limit),
        "error": est.error_estimate,
        "target": complex_json(target),
        "relative_deviation": (est.limit - target).norm() / target.norm(),
        "normalized_estimate": complex_json(est.limit / norm),
        "samples": samples,
    })))
}

fn probe(params: &ParamArgs, config: &CliConfig) -> Result<Output, CliError> {
    let cfg = &config.eval;
    let source = params.source(cfg)?;
    let a = &config.analysis;
    let settings = ProbeSettings { y_max: a.y_max, y0: a.y0, amp_tol: a.amp_tol };
    let report = zero_probe(&source, a.p, settings, cfg)?;
    let mut value = serde_json::to_value(&report).map_err(|e| CliError::Output(e.to_string()))?;
    if let Value::Object(map) = &mut value {
        map.insert("source".into(), json!(source_name(&source)));
        map.insert("s".into(), complex_json(source.s()));
        map.insert("y_max".into(), json!(a.y_max));
    }
    Ok(Output::Json(value))
}

fn plotdata(params: &ParamArgs, grid: &GridArgs, config: &CliConfig) -> Result<Output, CliError> {
    let cfg = &config.eval;
    let source = params.source(cfg)?;
    let ys = grid.points(Some((config.analysis.y0, config.analysis.y_max)))?;
    let target = source.target(cfg)?;
    let mut table = Table::new(&[("y", Kind::Real), ("d", Kind::Complex), ("abs_error", Kind::Real)]);
    // D is only sampled where the divisor is at least the mask floor
    for y in ys.into_iter().filter(|&y| source.is_masked(y)) {
        let d = source.sample(y, cfg)?;
        table.push(vec![Cell::Real(y), Cell::Complex(d), Cell::Real((d - target).norm())]);
    }
    if table.len() == 0 {
        return Err(usage("no grid point lies in the masked set"));
    }
    Ok(Output::Table(table))
}

fn char_query(what: CharQuery, params: &ParamArgs, grid: &GridArgs, nmax: i64) -> Result<Output, CliError> {
    let chi = params.character()?;
    let q = chi.modulus();
    let table = match what {
        CharQuery::Gauss => {
            let g = gauss_sum(&chi)?;
            let mut table = Table::new(&[
                ("q", Kind::Real),
                ("primitive", Kind::Real),
                ("gauss", Kind::Complex),
                ("abs", Kind::Real),
                ("sqrt_q", Kind::Real),
            ]);
            table.push(vec![
                Cell::Int(q as i64),
                Cell::Bool(is_primitive(&chi)?),
                Cell::Complex(g),
                Cell::Real(g.norm()),
                Cell::Real((q as f64).sqrt()),
            ]);
            table
        }
        CharQuery::Eset => {
            if nmax < 0 {
                return Err(usage("--nmax must be non-negative"));
            }
            let set = exceptional_set(&chi, nmax)?;
            let mut table = Table::new(&[("n", Kind::Real)]);
            for n in -nmax..=nmax {
                if set.contains(n) {
                    table.push(vec![Cell::Int(n)]);
                }
            }
            table
        }
        CharQuery::Pq => {
            let mut table = Table::new(&[("y", Kind::Real), ("p", Kind::Complex), ("t", Kind::Complex)]);
            for y in grid.points(None)? {
                let w = C::new(y, 0.0);
                let t = match eval_tq(&chi, w) {
                    Ok(t) => Cell::Complex(t),
                    Err(Error::DivisionNearZero { .. }) => Cell::Missing,
                    Err(e) => return Err(e.into()),
                };
                table.push(vec![Cell::Real(y), Cell::Complex(eval_pq(&chi, w)), t]);
            }
            table
        }
    };
    Ok(Output::Table(table))
}
