//! `qframe`: frame and K-frame checks over quaternionic spaces, reported as
//! JSON.
//!
//! Exit status: 0 when the checked property holds (or the command
//! succeeded), 1 when it fails, 2 on usage or input errors.

mod commands;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qframe_core::json::{self, LoadError};

const DEFAULT_TOL: f64 = 1e-8;

#[derive(Parser, Debug)]
#[command(name = "qframe", version, about = "Frame and K-frame checks over the quaternions")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,

    /// Tolerance; falls back to QFRAME_TOL, then 1e-8.
    #[arg(long, global = true, env = "QFRAME_TOL", value_parser = parse_tol)]
    tol: Option<f64>,

    /// Output path (a directory for `gen`); standard output otherwise.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FrameOp {
    /// Frame file `{"dim", "vectors"}`.
    #[arg(long)]
    frame: PathBuf,
    /// Operator file: a matrix, or `{"K1", "K2"}` blocks.
    #[arg(long)]
    op: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Optimal frame bounds of a sequence.
    Bounds {
        #[arg(long)]
        frame: PathBuf,
    },
    /// K-frame test with certified lower bound.
    CheckKframe(FrameOp),
    /// Range inclusion, majorization and factorization of L (--op) by M (--op2).
    Douglas {
        #[arg(long)]
        op: PathBuf,
        #[arg(long)]
        op2: PathBuf,
    },
    /// Canonical K-dual of a K-frame.
    Kdual(FrameOp),
    /// Checks that --dual is a K-dual of --frame.
    KdualVerify {
        #[command(flatten)]
        input: FrameOp,
        /// Frame file, or a `kdual` report.
        #[arg(long)]
        dual: PathBuf,
    },
    /// K-minimality and uniqueness of the K-dual.
    Minimal(FrameOp),
    /// K-orthonormal basis test and its unique dual.
    Konb(FrameOp),
    /// K-frame tests for a frame on a direct sum.
    SuperCheck {
        /// Super frame file, or the left component when --frame2 is given.
        #[arg(long)]
        frame: PathBuf,
        /// Right component.
        #[arg(long)]
        frame2: Option<PathBuf>,
        #[arg(long)]
        op: PathBuf,
    },
    /// Duality of super frames against the block operator K1⊕K2.
    SuperDual {
        #[arg(long)]
        frame: PathBuf,
        #[arg(long)]
        frame2: Option<PathBuf>,
        /// Super frame file, or a `super-dual` report; the canonical dual
        /// is computed when absent.
        #[arg(long)]
        dual: Option<PathBuf>,
        /// Operator file with `{"K1", "K2"}` blocks.
        #[arg(long)]
        op: PathBuf,
    },
    /// Runs the randomized statement suite.
    VerifyAll {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Writes seeded sample inputs into the --out directory.
    Gen {
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if t > 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err("tolerance must be positive and finite".into())
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error("{0}")]
    Core(#[from] qframe_core::Error),
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

/// A rendered JSON report and whether the checked property holds.
struct Outcome {
    report: String,
    holds: bool,
}

impl Outcome {
    fn new<T: serde::Serialize + ?Sized>(report: &T, holds: bool) -> Self {
        let mut report = json::to_string(report).expect("reports serialize");
        report.push('\n');
        Self { report, holds }
    }
}

fn emit(report: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, report),
        None => std::io::stdout().write_all(report.as_bytes()),
    }
    .map_err(|source| CliError::Write { path: out.unwrap_or(Path::new("<stdout>")).into(), source })
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let tol = cli.tol.unwrap_or(DEFAULT_TOL);
    let out = cli.out.as_deref();
    let outcome = match &cli.verb {
        Verb::Bounds { frame } => commands::bounds(frame, tol)?,
        Verb::CheckKframe(a) => commands::check_kframe(&a.frame, &a.op, tol)?,
        Verb::Douglas { op, op2 } => commands::douglas(op, op2, tol)?,
        Verb::Kdual(a) => commands::kdual(&a.frame, &a.op, tol)?,
        Verb::KdualVerify { input, dual } => commands::kdual_verify(&input.frame, dual, &input.op, tol)?,
        Verb::Minimal(a) => commands::minimal(&a.frame, &a.op, tol)?,
        Verb::Konb(a) => commands::konb(&a.frame, &a.op, tol)?,
        Verb::SuperCheck { frame, frame2, op } => commands::super_check(frame, frame2.as_deref(), op, tol)?,
        Verb::SuperDual { frame, frame2, dual, op } => {
            commands::super_dual(frame, frame2.as_deref(), dual.as_deref(), op, tol)?
        }
        Verb::VerifyAll { seed, trials } => commands::verify_all(*seed, *trials, tol)?,
        Verb::Gen { seed } => {
            let dir = out.ok_or_else(|| CliError::Usage("gen requires --out <directory>".into()))?;
            let outcome = commands::gen(*seed, dir)?;
            emit(&outcome.report, None)?;
            return Ok(outcome.holds);
        }
    };
    emit(&outcome.report, out)?;
    Ok(outcome.holds)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("qframe: {e}");
            ExitCode::from(2)
        }
    }
}
