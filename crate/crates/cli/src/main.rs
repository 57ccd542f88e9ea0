//! `modcurve`: generate the quartic systems of `X(p)` and run the
//! verification suites from the command line.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for
//! usage errors, 3 when a computation cannot be carried out.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;

use modcurve::locus;
use modcurve::qtheta;
use modcurve::rep;
use modcurve::report::{self, Status, VerificationReport};
use modcurve::suite::{self, SuiteConfig, SuiteError};

#[derive(Parser, Debug)]
#[command(name = "modcurve", version, about = "Defining ideals of the modular curves X(p) and their symmetry")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Options shared by the commands.
#[derive(clap::Args, Debug, Clone)]
struct Common {
    /// The prime.
    #[arg(long, default_value_t = 7)]
    p: u32,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Write output to a file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Numeric and series options.
#[derive(clap::Args, Debug, Clone)]
struct Tuning {
    /// Order through which q-series identities are checked.
    #[arg(long, default_value_t = 30)]
    order: i64,
    /// Membership tolerance for sampled points.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Sampling parameter in the upper half-plane, e.g. `0.5+1.5i`; may repeat.
    #[arg(long, value_parser = parse_tau_arg)]
    tau: Vec<Complex64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the distinct quartics cutting out X(p).
    Gen {
        #[command(flatten)]
        common: Common,
    },
    /// Run one suite, or all of them.
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        tuning: Tuning,
        /// Suite name: group, locus, rep, invariants, qtheta or sample.
        #[arg(long)]
        suite: Option<String>,
    },
    /// Decompose the quartic span under PSL(2, p).
    Decompose {
        #[command(flatten)]
        common: Common,
    },
    /// Check the q-expansion identities.
    Qcheck {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Evaluate theta coordinates at parameters (default 2i) and test membership.
    Sample {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Run every suite, for one prime or for p = 7, 11 and 13.
    ReportAll {
        /// Restrict the report to this prime.
        #[arg(long)]
        p: Option<u32>,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Write output to a file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        tuning: Tuning,
    },
}

fn parse_tau_arg(s: &str) -> Result<Complex64, String> {
    qtheta::parse_tau(s).ok_or_else(|| format!("cannot parse `{s}` as a complex number like 0.5+1.5i"))
}

/// A failure that maps onto an exit code.
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<SuiteError> for Failure {
    fn from(e: SuiteError) -> Self {
        match e {
            SuiteError::UnknownSuite(_) | SuiteError::Unsupported { .. } => Failure::Usage(e.to_string()),
            SuiteError::Internal(_) => Failure::Internal(e.to_string()),
        }
    }
}

fn internal<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Internal(e.to_string())
}

fn config(t: &Tuning) -> SuiteConfig {
    let mut cfg = SuiteConfig { order: t.order, tol: t.tol, ..SuiteConfig::default() };
    if !t.tau.is_empty() {
        cfg.taus = t.tau.clone();
    }
    cfg
}

fn emit(text: String, out: &Option<PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Internal(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Emits report rows and returns the exit code they imply.
fn emit_rows(mut rows: Vec<VerificationReport>, json: bool, out: &Option<PathBuf>) -> Result<u8, Failure> {
    report::sort_rows(&mut rows);
    let text = if json { report::to_json(&rows) + "\n" } else { report::to_text(&rows) };
    emit(text, out)?;
    Ok(if rows.iter().any(|r| r.status == Status::Fail) { 1 } else { 0 })
}

fn require_locus_prime(p: u32) -> Result<(), Failure> {
    if matches!(p, 7 | 11 | 13) {
        Ok(())
    } else {
        Err(Failure::Usage(format!("p = {p} is not supported; use 7, 11 or 13")))
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Gen { common } => {
            let sys = locus::generate_ideal(common.p).map_err(|e| Failure::Usage(e.to_string()))?;
            let text = if common.json {
                serde_json::to_string_pretty(&locus::system_to_json(&sys)).map_err(internal)? + "\n"
            } else {
                let mut s = format!("# X({}): {} distinct quartics in E1..E{}\n", sys.p, sys.distinct_count(), sys.nvars);
                for q in &sys.quartics {
                    let l = q.label;
                    s.push_str(&format!("[{},{},{},{}]  {}\n", l[0], l[1], l[2], l[3], locus::poly_text(&q.poly)));
                }
                s
            };
            emit(text, &common.out)?;
            Ok(0)
        }
        Command::Verify { common, tuning, suite } => {
            let cfg = config(&tuning);
            let rows = match suite {
                Some(s) => suite::run_suite(&s, common.p, &cfg)?,
                None => suite::run_all(common.p, &cfg)?,
            };
            emit_rows(rows, common.json, &common.out)
        }
        Command::Decompose { common } => {
            require_locus_prime(common.p)?;
            let (summary, dec, tbl) = rep::decompose_preferred(common.p).map_err(internal)?;
            let text = if common.json {
                let v = serde_json::json!({ "summary": summary, "decomposition": dec, "degrees": tbl.degrees });
                serde_json::to_string_pretty(&v).map_err(internal)? + "\n"
            } else {
                format!(
                    "p = {}\nspan dimension: {}\nTr S = {}\nTr T = {}\nirreducible degrees: {:?}\nmultiplicities: {:?} over degrees {:?}\n{}\n",
                    summary.p, summary.dim, summary.traces.0, summary.traces.1, summary.dims, summary.multiplicities, tbl.degrees, summary.identification
                )
            };
            emit(text, &common.out)?;
            Ok(0)
        }
        Command::Qcheck { common, tuning } => {
            let rows = suite::run_suite("qtheta", common.p, &config(&tuning))?;
            emit_rows(rows, common.json, &common.out)
        }
        Command::Sample { common, tuning } => {
            require_locus_prime(common.p)?;
            let mut cfg = config(&tuning);
            if tuning.tau.is_empty() {
                cfg.taus = vec![cfg.s_tau];
            }
            let sys = locus::generate_ideal(common.p).map_err(internal)?;
            let (points, bad) = suite::sample_points(&sys, &cfg);
            let text = if common.json {
                serde_json::to_string_pretty(&points).map_err(internal)? + "\n"
            } else {
                let mut s = String::new();
                for pt in &points {
                    s.push_str(&format!("tau = {}  residual = {:.3e}  J = {:.6}\n", pt.tau, pt.residual, pt.klein_j()));
                    for (i, c) in pt.coords.iter().enumerate() {
                        s.push_str(&format!("  E{} = {:+.12e} {:+.12e}i\n", i + 1, c.re, c.im));
                    }
                }
                for (tau, e) in &bad {
                    s.push_str(&format!("tau = {tau}: {e}\n"));
                }
                s
            };
            emit(text, &common.out)?;
            Ok(if bad.is_empty() { 0 } else { 1 })
        }
        Command::ReportAll { p, json, out, tuning } => {
            let cfg = config(&tuning);
            let mut rows = Vec::new();
            match p {
                Some(p) if matches!(p, 2 | 3 | 5) => rows.extend(suite::run_suite("qtheta", p, &cfg)?),
                Some(p) => rows.extend(suite::run_all(p, &cfg)?),
                None => {
                    for p in [7, 11, 13] {
                        rows.extend(suite::run_all(p, &cfg)?);
                    }
                    for p in [2, 3, 5] {
                        rows.extend(suite::run_suite("qtheta", p, &cfg)?);
                    }
                }
            }
            emit_rows(rows, json, &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
