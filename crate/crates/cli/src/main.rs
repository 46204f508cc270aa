use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pseudochiral::report::{emit, run, unix_now, Format};
use pseudochiral::{Error, RunConfig, Suite};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "pseudochiral", version, about = "Verification suites for pseudo-chiral oscillators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run verification suites and emit a report.
    Run(RunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Classical,
    Brackets,
    Fock,
    Pseudoherm,
    Su11,
    All,
    /// Run nothing (empty report).
    None,
}

impl SuiteArg {
    fn to_suite(self) -> Option<Suite> {
        match self {
            SuiteArg::Classical => Some(Suite::Classical),
            SuiteArg::Brackets => Some(Suite::Brackets),
            SuiteArg::Fock => Some(Suite::Fock),
            SuiteArg::Pseudoherm => Some(Suite::Pseudoherm),
            SuiteArg::Su11 => Some(Suite::Su11),
            SuiteArg::All => Some(Suite::All),
            SuiteArg::None => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, clap::Args)]
struct RunArgs {
    /// Oscillator frequency.
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    /// Fock truncation per mode.
    #[arg(long, default_value_t = 12)]
    dim: usize,
    /// Occupation margin excluded from the interior.
    #[arg(long, default_value_t = 2)]
    margin: usize,
    /// Interior identity tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Suite to run; repeatable.
    #[arg(long = "suite", value_enum, default_values_t = [SuiteArg::All])]
    suites: Vec<SuiteArg>,
    /// Drop the zero-point energy from the Hamiltonians.
    #[arg(long)]
    subtract_zero_point: bool,
    /// Output file (stdout if absent).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Omit the timestamp so identical configs give identical output.
    #[arg(long)]
    no_timestamp: bool,
}

impl RunArgs {
    fn config(&self) -> RunConfig {
        RunConfig {
            omega: self.omega,
            dim: self.dim,
            margin: self.margin,
            tol: self.tol,
            seed: self.seed,
            suites: self.suites.iter().filter_map(|s| s.to_suite()).collect(),
            zero_point_subtracted: self.subtract_zero_point,
        }
    }
}

fn execute(args: &RunArgs) -> ExitCode {
    let config = args.config();
    let mut report = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if !args.no_timestamp {
        report.set_timestamp(Some(unix_now()));
    }
    let format = match args.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    };
    if let Err(e) = emit(&report, format, args.out.as_deref()) {
        eprintln!("error: {e}");
        return ExitCode::from(match e {
            Error::Io(_) => EXIT_IO,
            _ => EXIT_FAILED,
        });
    }
    let s = &report.summary;
    eprintln!(
        "{} checks, {} passed, {} failed, {} documented discrepancies",
        s.total, s.passed, s.failed, s.discrepancies
    );
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        for (suite, check) in report.checks().filter(|(_, c)| !c.pass) {
            eprintln!("FAIL {suite}: {} ({})", check.name, check.details);
        }
        ExitCode::from(EXIT_FAILED)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Run(args) => execute(&args),
    }
}
