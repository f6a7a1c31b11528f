//! Command-line harness: exact and asymptotic evaluation, convergence
//! studies, zero-distribution reports, and lemma checks, emitted as CSV or
//! JSON. Exit codes: 0 success, 1 usage/validation error, 2 numeric failure.

mod commands;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "cspoly",
    version,
    about = "Coherent-state orthogonal polynomials: evaluation, asymptotics, zeros",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate phi_n exactly and through every applicable approximation.
    Eval(EvalArgs),
    /// Error-decay table over an increasing degree ladder at fixed t.
    Convergence(ConvergenceArgs),
    /// Zeros as Jacobi eigenvalues, KS distance, and a 64-bin histogram.
    Zeros(ZerosArgs),
    /// Both sides of the Euler-Maclaurin sum identity.
    SumLemma(SumLemmaArgs),
    /// Max deviation between the recurrence and the Hermite reference at
    /// (alpha, beta) = (1/2, 3/2).
    HermiteCheck(HermiteCheckArgs),
    /// Dense t-grid evaluation for plotting.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scale {
    /// Position inputs are t; evaluation abscissa is x = sqrt(N) t.
    NScaled,
    /// Position inputs are x; t = x / sqrt(N).
    Raw,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for independent evaluations (does not affect output).
    #[arg(long, default_value_t = default_threads())]
    threads: usize,
}

fn default_threads() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

#[derive(Args, Debug)]
pub struct ParamArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    beta: f64,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Single degree.
    #[arg(long, conflicts_with = "n_list")]
    n: Option<u32>,
    /// Comma-separated degrees.
    #[arg(long, value_delimiter = ',')]
    n_list: Vec<u32>,
    /// Single position (t in n-scaled mode, x in raw mode).
    #[arg(long, conflicts_with = "t_grid")]
    t: Option<f64>,
    /// Comma-separated positions.
    #[arg(long, value_delimiter = ',')]
    t_grid: Vec<f64>,
    /// Raw-mode position (alias for --t with --scale raw).
    #[arg(long, conflicts_with_all = ["t", "t_grid"])]
    x: Option<f64>,
    #[arg(long, value_enum, default_value_t = Scale::NScaled)]
    scale: Scale,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct ConvergenceArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Strictly increasing degrees, each >= 50.
    #[arg(long, value_delimiter = ',', required = true)]
    n_list: Vec<u32>,
    #[arg(long)]
    t: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct ZerosArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    n: u32,
    /// Limit ratio c = n/m; the rescaling degree is m = round(n/c).
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SumLemmaArgs {
    #[arg(long)]
    beta: f64,
    #[arg(long, conflicts_with = "n_list")]
    n: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    n_list: Vec<u64>,
    /// Summation endpoint: a number, or "K*sqrt(n)" evaluated per n.
    #[arg(long)]
    x: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct HermiteCheckArgs {
    /// Check all degrees up to this bound.
    #[arg(long)]
    n_max: u32,
    /// Comma-separated evaluation abscissas.
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.3, 1.1, 2.7, 5.0])]
    x_grid: Vec<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    t_min: f64,
    #[arg(long)]
    t_max: f64,
    #[arg(long)]
    t_step: f64,
    #[command(flatten)]
    output: OutputArgs,
}

/// Validation failures exit 1; numeric failures inside the library exit 2.
pub enum CmdError {
    Usage(String),
    Numeric(String),
}

impl From<cspoly::Error> for CmdError {
    fn from(e: cspoly::Error) -> Self {
        match e {
            cspoly::Error::Domain(_) => CmdError::Usage(e.to_string()),
            cspoly::Error::IterationCap(_) => CmdError::Numeric(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not errors
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };

    let (out, result) = match &cli.command {
        Command::Eval(args) => (args.output.out.clone(), commands::run_eval(args)),
        Command::Convergence(args) => (args.output.out.clone(), commands::run_convergence(args)),
        Command::Zeros(args) => (args.output.out.clone(), commands::run_zeros(args)),
        Command::SumLemma(args) => (args.output.out.clone(), commands::run_sum_lemma(args)),
        Command::HermiteCheck(args) => (args.output.out.clone(), commands::run_hermite_check(args)),
        Command::Sweep(args) => (args.output.out.clone(), commands::run_sweep(args)),
    };

    match result {
        Ok(text) => match write_output(&out, &text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: cannot write output: {e}");
                ExitCode::from(2)
            }
        },
        Err(CmdError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CmdError::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn write_output(out: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())
        }
    }
}
