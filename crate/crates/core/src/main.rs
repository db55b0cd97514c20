use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use zetalab::cli::{self, AnalyzeArgs, CliError, NfArgs, VerifyArgs, EXIT_USAGE};
use zetalab::par::Execution;

#[derive(Parser)]
#[command(name = "zetalab", version, about = "Zeta functions of curves over finite fields")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count points, fit the zeta function and check its identities.
    Analyze {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        max_degree: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Point-count cache directory; ZETALAB_CACHE takes precedence.
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Count on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Run a randomized verification suite against a curve.
    Verify {
        #[arg(long)]
        curve: PathBuf,
        /// poisson, explicit, diagram, tate-iwasawa or all
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long)]
        sequential: bool,
    },
    /// Imaginary quadratic fields and the completed Riemann zeta function.
    Nf {
        /// |D| of the imaginary quadratic field Q(sqrt(-|D|)).
        #[arg(long, allow_hyphen_values = true)]
        disc: Option<i64>,
        /// Evaluate xi at s, e.g. `2` or `0.5+14.1i`.
        #[arg(long, allow_hyphen_values = true)]
        riemann: Option<String>,
        #[arg(long)]
        battery: bool,
        /// Override the automatic truncation.
        #[arg(long)]
        trunc: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn exec(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::default()
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let (name, out, result) = run(args.command);
    let code = match result {
        Ok(report) => match cli::write_report(&report, out.as_deref()) {
            Ok(()) => cli::exit_code_for(&report),
            Err(e) => fail(name, &e),
        },
        Err(e) => fail(name, &e),
    };
    ExitCode::from(code as u8)
}

fn fail(command: &str, e: &CliError) -> i32 {
    eprint!("{}", cli::render(&e.to_json(command)));
    e.exit_code()
}

fn run(command: Command) -> (&'static str, Option<PathBuf>, Result<serde_json::Value, CliError>) {
    match command {
        Command::Analyze { curve, max_degree, out, cache, sequential } => {
            let args = AnalyzeArgs {
                curve,
                max_degree,
                cache: cli::resolve_cache(cache),
                exec: exec(sequential),
            };
            ("analyze", out, cli::analyze(&args))
        }
        Command::Verify { curve, suite, seed, out, cache, sequential } => {
            let args = VerifyArgs {
                curve,
                suite,
                seed,
                cache: cli::resolve_cache(cache),
                exec: exec(sequential),
            };
            ("verify", out, cli::verify(&args))
        }
        Command::Nf { disc, riemann, battery, trunc, out } => {
            let args = NfArgs { disc, riemann, battery, trunc };
            ("nf", out, cli::number_field(&args))
        }
    }
}
