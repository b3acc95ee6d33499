//! Argument parsing and subcommand dispatch for the `moyal` binary.

use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use moyal_core::expr::{evaluate, ExprError};
use moyal_core::matrix::{phi, phi_inv, psi, psi_inv};
use moyal_core::{EBasisElement, PhasePoly};
use serde::Serialize;

use crate::bench::{run_bench, BenchConfig, BenchError};
use crate::ebasis_format::{parse_ebasis, render_ebasis};
use crate::verify::{run_suite, Suite, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Default visible corner for `--dense` without a value.
pub const DEFAULT_DENSE_N: usize = 6;

#[derive(Debug, Parser)]
#[command(
    name = "moyal",
    version,
    about = "Exact Moyal star products and their infinite-matrix representation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate an expression, e.g. "p <*> x^2"
    Eval {
        /// Expression to evaluate; omit with --batch
        expr: Option<String>,
        /// Number of (x, p) pairs
        #[arg(long = "n", default_value_t = 1)]
        n_pairs: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Evaluate one expression per line of FILE ("-" for stdin)
        #[arg(long, value_name = "FILE", conflicts_with = "expr")]
        batch: Option<PathBuf>,
    },
    /// Image under phi (standard-ordered product -> E-basis)
    Phi(MapArgs),
    /// Image under psi (Moyal product -> E-basis)
    Psi(MapArgs),
    /// Inverse of phi on an E-basis file ("-" for stdin)
    InvPhi(InvArgs),
    /// Inverse of psi on an E-basis file ("-" for stdin)
    InvPsi(InvArgs),
    /// Run verification suites
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 5)]
        max_degree: u32,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        n_pairs: usize,
    },
    /// Compare the formula, E-basis and dense routes for the Moyal product
    Bench {
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Dense size; defaults to the smallest admissible one
        #[arg(long)]
        dense_n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, clap::Args)]
struct MapArgs {
    expr: String,
    /// Also print the dense N x N corner
    #[arg(long, value_name = "N", num_args = 0..=1, default_missing_value = "6")]
    dense: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, clap::Args)]
struct InvArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

#[derive(Debug, Serialize)]
struct JsonOutput {
    input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ebasis: Option<Vec<(u32, u32, String)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dense: Option<Vec<Vec<String>>>,
}

fn ebasis_json(e: &EBasisElement) -> Vec<(u32, u32, String)> {
    e.display_terms()
        .into_iter()
        .map(|((a, b), c)| (a, b, c.to_string()))
        .collect()
}

/// Error carrying the exit status it maps to.
struct Failure {
    status: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Self {
            status: EXIT_USAGE,
            message: message.to_string(),
        }
    }
}

impl From<ExprError> for Failure {
    fn from(e: ExprError) -> Self {
        Failure::usage(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        // a closed downstream pipe (e.g. `| head`) is not worth reporting
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Self {
                status: EXIT_OK,
                message: String::new(),
            };
        }
        Failure::usage(e)
    }
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
    }
}

fn print_json(out: &mut dyn Write, value: &impl Serialize) -> Result<(), Failure> {
    let s = serde_json::to_string(value).map_err(|e| Failure {
        status: EXIT_FAILURE,
        message: e.to_string(),
    })?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn eval_one(out: &mut dyn Write, src: &str, n_pairs: usize, format: Format) -> Result<(), Failure> {
    let value = evaluate(src, n_pairs)?;
    match format {
        Format::Text => writeln!(out, "{value}")?,
        Format::Json => print_json(
            out,
            &JsonOutput {
                input: src.to_string(),
                result: Some(value.to_string()),
                ebasis: None,
                dense: None,
            },
        )?,
    }
    Ok(())
}

fn map_command(out: &mut dyn Write, args: &MapArgs, use_psi: bool) -> Result<(), Failure> {
    let f = evaluate(&args.expr, 1)?;
    let e = if use_psi { psi(&f) } else { phi(&f) }.map_err(Failure::usage)?;
    if args.dense == Some(0) {
        return Err(Failure::usage("--dense must be at least 1"));
    }
    let dense = args.dense.map(|n| e.realize_dense(n));
    match args.format {
        Format::Text => {
            write!(out, "{}", render_ebasis(&e))?;
            if let Some(m) = dense {
                writeln!(out)?;
                writeln!(out, "{m}")?;
            }
        }
        Format::Json => print_json(
            out,
            &JsonOutput {
                input: args.expr.clone(),
                result: Some(f.to_string()),
                ebasis: Some(ebasis_json(&e)),
                dense: dense.map(|m| {
                    m.rows()
                        .map(|r| r.iter().map(ToString::to_string).collect())
                        .collect()
                }),
            },
        )?,
    }
    Ok(())
}

fn inv_command(out: &mut dyn Write, args: &InvArgs, use_psi: bool) -> Result<(), Failure> {
    let text = read_input(&args.file)?;
    let e = parse_ebasis(&text).map_err(Failure::usage)?;
    let f: PhasePoly = if use_psi { psi_inv(&e) } else { phi_inv(&e) };
    match args.format {
        Format::Text => writeln!(out, "{f}")?,
        Format::Json => print_json(
            out,
            &JsonOutput {
                input: args.file.display().to_string(),
                result: Some(f.to_string()),
                ebasis: Some(ebasis_json(&e)),
                dense: None,
            },
        )?,
    }
    Ok(())
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Eval {
            expr,
            n_pairs,
            format,
            batch,
        } => {
            if n_pairs == 0 {
                return Err(Failure::usage("--n must be at least 1"));
            }
            match (expr, batch) {
                (Some(src), None) => eval_one(out, &src, n_pairs, format)?,
                (None, Some(path)) => {
                    let text = read_input(&path)?;
                    for (i, line) in text.lines().enumerate() {
                        let line = line.trim();
                        if line.is_empty() || line.starts_with('#') {
                            continue;
                        }
                        eval_one(out, line, n_pairs, format).map_err(|f| Failure {
                            status: f.status,
                            message: format!("line {}: {}", i + 1, f.message),
                        })?;
                    }
                }
                _ => return Err(Failure::usage("eval needs an expression or --batch FILE")),
            }
            Ok(EXIT_OK)
        }
        Command::Phi(args) => map_command(out, &args, false).map(|_| EXIT_OK),
        Command::Psi(args) => map_command(out, &args, true).map(|_| EXIT_OK),
        Command::InvPhi(args) => inv_command(out, &args, false).map(|_| EXIT_OK),
        Command::InvPsi(args) => inv_command(out, &args, true).map(|_| EXIT_OK),
        Command::Verify {
            suite,
            max_degree,
            trials,
            seed,
            n_pairs,
        } => {
            let cfg = VerifyConfig {
                suite,
                max_degree,
                trials,
                seed,
                n_pairs,
            };
            let report = run_suite(&cfg).map_err(Failure::usage)?;
            writeln!(out, "{report}")?;
            Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_FAILURE
            })
        }
        Command::Bench {
            max_degree,
            trials,
            dense_n,
            seed,
            format,
        } => {
            let cfg = BenchConfig {
                max_degree,
                trials,
                dense_n,
                seed,
            };
            match run_bench(&cfg) {
                Ok(report) => {
                    match format {
                        Format::Text => writeln!(out, "{report}")?,
                        Format::Json => print_json(out, &report)?,
                    }
                    Ok(EXIT_OK)
                }
                Err(e @ BenchError::RouteDisagreement(_)) => Err(Failure {
                    status: EXIT_FAILURE,
                    message: e.to_string(),
                }),
                Err(e) => Err(Failure::usage(e)),
            }
        }
    }
}

/// Runs the CLI on `args` (including the program name), writing normal
/// output to `out` and diagnostics to `err`. Returns the exit status:
/// 0 success, 1 verification failure, 2 usage or input error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return status;
        }
    };
    match dispatch(cli, out) {
        Ok(status) => status,
        Err(f) => {
            if !f.message.is_empty() {
                let _ = writeln!(err, "error: {}", f.message);
            }
            f.status
        }
    }
}
