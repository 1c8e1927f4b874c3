//! The `sea` command line: algebra files in, verdicts and JSON reports out.
//!
//! [`run`] does all the work and returns the exit code, so tests can drive
//! it without spawning a process. Exit codes: 0 when every verdict passes,
//! 1 on a semantic failure, 2 on a usage or parse error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use sea_core::format::ParseError;
use sea_core::solver::DEFAULT_MAX_SIZE;

mod finite;
pub mod report;
mod suites;

pub use report::{Inputs, Report, VerdictLine};

#[derive(Debug, Parser)]
#[command(name = "sea", version, about = "Effect algebras and sequential products")]
pub struct Cli {
    /// Write the JSON report to PATH.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Seed for every sampled suite.
    #[arg(long, global = true, env = "SEA_SEED", default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check (A1)–(A4), and (S1)–(S5) if the file has a product table.
    Check { file: PathBuf },
    /// Enumerate every sequential product on a finite effect algebra.
    Solve {
        file: PathBuf,
        /// Keep at most this many tables.
        #[arg(long, default_value_t = 64)]
        limit: usize,
        /// Refuse carriers larger than this.
        #[arg(long, default_value_t = DEFAULT_MAX_SIZE)]
        max_size: usize,
        /// Fail unless the verdict is this one.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Conditions (1) and (2), quotients and identity suites on a model.
    Order {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long, value_enum)]
        suite: OrderSuite,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Matrix dimension for `hilbert` and `hs`.
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// Atoms for `boolean`, points for `fuzzy`.
        #[arg(long, default_value_t = 3)]
        size: usize,
        /// Window radius for `omega`.
        #[arg(long, default_value_t = 20)]
        window: u64,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Sharp elements and least sharp dominators.
    Sharp { file: PathBuf },
    /// The sequential quotient a/b in a finite SEA.
    Quotient { file: PathBuf, a: String, b: String },
    /// Build an algebra and print it in the file format.
    Construct {
        #[command(subcommand)]
        what: Construction,
        /// Write the algebra file here instead of stdout.
        #[arg(long, short, global = true)]
        out: Option<PathBuf>,
    },
    /// Sampled suites on the effects of a finite-dimensional Hilbert space.
    Hilbert {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// Defaults to 1e-9, or 1e-8 for `thm51` and `quotient`.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum)]
        suite: HilbertSuite,
    },
    /// Exact arithmetic on fuzzy sets written as `x=p/q` pairs.
    Fuzzy {
        #[command(subcommand)]
        op: FuzzyOp,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    None,
    Unique,
    Multiple,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Boolean,
    Fuzzy,
    Hilbert,
    Omega,
    Hs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderSuite {
    Cond1,
    Cond2,
    Quotient,
    Identities,
    Interval,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HilbertSuite {
    /// (S1)–(S5) for A∘B = A^{1/2} B A^{1/2}.
    Axioms,
    /// Additivity, homogeneity and the rank-one formula that pin down ∘.
    #[value(name = "thm48")]
    Characterization,
    /// Conditions (1) and (2).
    #[value(name = "thm51")]
    SequentialOrder,
    /// B∘(A/B) = A and recovery of a planted factor.
    Quotient,
    /// (S1)–(S5) for the mixed scalar and matrix model.
    Hs,
}

/// Operands are catalog names like `chain(3)` or paths to algebra files.
#[derive(Debug, Subcommand)]
pub enum Construction {
    /// chain(n), boolean(k) or diamond.
    Catalog { name: String },
    /// Cartesian product.
    Product {
        #[arg(required = true)]
        factors: Vec<String>,
    },
    /// Horizontal sum.
    Hsum {
        #[arg(required = true)]
        summands: Vec<String>,
    },
    /// The interval [0, b] with unit b.
    Interval { algebra: String, b: String },
}

#[derive(Debug, Subcommand)]
pub enum FuzzyOp {
    /// Pointwise product f∘g.
    Product { f: String, g: String },
    /// f/g, defined when f ≤ g.
    Quotient { f: String, g: String },
    /// Least characteristic function above f.
    Hat { f: String },
    /// SEA axioms, Conditions (1), (2) and the identities on samples.
    Check {
        #[arg(long, default_value_t = 3)]
        points: usize,
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
}

/// Problems that stop a command before it can reach a verdict. All exit 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: Box<ParseError> },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn usage(msg: impl ToString) -> Self {
        CliError::Usage(msg.to_string())
    }
}

pub(crate) fn read(path: &Path, inputs: &mut Inputs) -> Result<String, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    inputs.file(&path.display().to_string(), &text);
    Ok(text)
}

/// What a finished command produced.
#[derive(Debug)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<Report>,
}

/// Parses `argv` (program name first), runs the command and writes the JSON
/// report if asked to.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Outcome { code, stdout, stderr, report: None };
        }
    };
    match dispatch(&cli) {
        Ok((report, stdout)) => {
            let mut out = Outcome {
                code: if report.passed { 0 } else { 1 },
                stdout,
                stderr: String::new(),
                report: None,
            };
            if let Some(path) = &cli.json {
                if let Err(e) = std::fs::write(path, report.to_json()) {
                    out.code = 2;
                    out.stderr = format!("{}: {e}\n", path.display());
                }
            }
            out.report = Some(report);
            out
        }
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            report: None,
        },
    }
}

fn dispatch(cli: &Cli) -> Result<(Report, String), CliError> {
    let seed = cli.seed;
    match &cli.command {
        Command::Check { file } => finite::check(file, seed),
        Command::Solve { file, limit, max_size, expect } => finite::solve(file, *limit, *max_size, *expect, seed),
        Command::Sharp { file } => finite::sharp(file, seed),
        Command::Quotient { file, a, b } => finite::quotient(file, a, b, seed),
        Command::Construct { what, out } => finite::construct(what, out.as_deref(), seed),
        Command::Order { model, suite, samples, dim, size, window, tol } => {
            let opts = suites::OrderOpts {
                model: *model,
                suite: *suite,
                samples: *samples,
                dim: *dim,
                size: *size,
                window: *window,
                tol: *tol,
            };
            suites::order(&opts, seed)
        }
        Command::Hilbert { dim, samples, tol, suite } => suites::hilbert(*dim, *samples, *tol, *suite, seed),
        Command::Fuzzy { op } => suites::fuzzy(op, seed),
    }
}

/// One line per verdict, then the outcome.
pub(crate) fn summary(report: &Report) -> String {
    let mut s = String::new();
    for w in &report.witnesses {
        s.push_str(&format!("witness: {w}\n"));
    }
    let failed = report.verdicts.iter().filter(|v| !v.passed).count();
    if failed == 0 {
        s.push_str(&format!("{}: all {} verdicts pass\n", report.command, report.verdicts.len()));
    } else {
        s.push_str(&format!("{}: {failed} of {} verdicts FAIL\n", report.command, report.verdicts.len()));
    }
    s
}
