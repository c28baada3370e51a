mod cmd;
mod parse;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use krasner_core::{Budget, Error};
use report::RunReport;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "krasner", version, about = "Exact checks for Krasner-type class maps, etale covers and field arithmetic")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Seed for every random draw in the run.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Report destination; `-` is stdout.
    #[arg(long, global = true, default_value = "-")]
    pub out: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count extension classes of degree n.
    Classify(cmd::classify::ClassifyArgs),
    /// The polynomial map G attached to p_a.
    #[command(subcommand)]
    Krasner(cmd::krasner::KrasnerCmd),
    /// Etale-cover images, membership, intersections and transforms.
    #[command(subcommand)]
    Ee(cmd::ee::EeCmd),
    /// Arithmetic corollaries over finite, rational and p-adic fields.
    #[command(subcommand)]
    Arith(cmd::arith::ArithCmd),
    /// p-adic valuations, square roots, Hensel lifts and checked arithmetic.
    #[command(subcommand)]
    Padic(cmd::padic::PadicCmd),
}

pub struct Ctx {
    pub seed: u64,
    pub budget: Budget,
}

fn emit(report: &RunReport, out: &str) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(report).expect("report serializes");
    if out == "-" {
        let mut so = std::io::stdout().lock();
        writeln!(so, "{text}")
    } else {
        std::fs::write(out, text + "\n")
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let ctx = Ctx { seed: cli.common.seed, budget: Budget::from_env() };
    let mut report = RunReport::new(argv, ctx.seed);
    let result = match cli.command {
        Command::Classify(a) => cmd::classify::run(&a, &ctx, &mut report),
        Command::Krasner(c) => cmd::krasner::run(&c, &ctx, &mut report),
        Command::Ee(c) => cmd::ee::run(&c, &ctx, &mut report),
        Command::Arith(c) => cmd::arith::run(&c, &ctx, &mut report),
        Command::Padic(c) => cmd::padic::run(&c, &ctx, &mut report),
    };
    if let Err(e) = result {
        // usage, budget, precision and input-domain errors all exit 2
        eprintln!("krasner: {e}");
        return ExitCode::from(2);
    }
    report.finish();
    if let Err(e) = emit(&report, &cli.common.out) {
        eprintln!("krasner: cannot write report: {e}");
        return ExitCode::from(2);
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
