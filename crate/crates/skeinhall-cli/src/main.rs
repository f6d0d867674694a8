//! Command-line front end: compute cable invariants, specialize them, and
//! run the verification suites.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use skeinhall::coeffring::RatFunc;
use skeinhall::partitions::Partition;
use skeinhall::suites::{self, SuiteReport};
use skeinhall::{hallrep, knots, skeinmod, symfunc, Basis, SymFunc};

const EXIT_OK: u8 = 0;
const EXIT_COMPUTE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "skeinhall",
    about = "Exact torus-skein and elliptic-Hall cable invariants",
    version
)]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Config {
    /// Degree cap guarding the exact pipelines.
    #[arg(long, global = true, default_value_t = 12)]
    degree_cap: u32,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Seed for the randomized verification suites.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Directory for the on-disk table cache (also SKEINHALL_CACHE_DIR).
    #[arg(long, global = true, env = "SKEINHALL_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Colored Homflypt invariant of an iterated cable of the unknot.
    Jh {
        /// Newton pairs, semicolon-separated "m,n" items, e.g. "2,3;1,1".
        #[arg(long)]
        pairs: String,
        /// Color partition, comma-separated parts, e.g. "2,1".
        #[arg(long)]
        lambda: String,
    },
    /// Three-variable invariant of an iterated cable of the unknot.
    Je {
        #[arg(long)]
        pairs: String,
        #[arg(long)]
        lambda: String,
    },
    /// Specialize a three-variable invariant read from a JSON file.
    Specialize {
        /// Target: the skein variables, or a finite rank N.
        #[arg(long, value_enum)]
        target: Target,
        /// The rank for `--target n`.
        #[arg(long)]
        n: Option<u32>,
        /// Input file with a JSON rational function; stdin when omitted.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Quantum dimension: unknot evaluation of the Schur function.
    Qdim {
        #[arg(long)]
        lambda: String,
    },
    /// Run a verification suite and report pass/fail counts.
    Verify {
        /// One of: relations-toral, relations-skein, relations-hall,
        /// macdonald, connection, confluence.
        suite: String,
    },
    /// Compare both pipelines on one cable and report the monomial.
    Compare {
        #[arg(long)]
        pairs: String,
        #[arg(long)]
        lambda: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Skein,
    N,
}

fn parse_partition(text: &str) -> Result<Partition, String> {
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "0" {
        return Ok(Partition::empty());
    }
    let parts: Result<Vec<u32>, _> = trimmed
        .split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|e| e.to_string()))
        .collect();
    Ok(Partition::new(parts?))
}

fn parse_pairs(text: &str) -> Result<knots::NewtonPairs, String> {
    let trimmed = text.trim();
    let mut pairs = Vec::new();
    if !trimmed.is_empty() {
        for item in trimmed.split(';') {
            let nums: Vec<&str> = item.split(',').map(str::trim).collect();
            if nums.len() != 2 {
                return Err(format!("expected \"m,n\", got {item:?}"));
            }
            let m: i64 = nums[0].parse().map_err(|e| format!("{e}"))?;
            let n: i64 = nums[1].parse().map_err(|e| format!("{e}"))?;
            pairs.push((m, n));
        }
    }
    knots::validate_pairs(&pairs).map_err(|e| e.to_string())
}

fn print_ratfunc(f: &RatFunc, output: Output) {
    match output {
        Output::Text => println!("{f}"),
        Output::Json => println!("{}", serde_json::to_string(f).unwrap()),
        Output::Csv => {
            println!("part,coeff,q,t,u,s,v,x");
            for (label, poly) in [("num", f.num()), ("den", f.den())] {
                for (e, c) in poly.terms() {
                    println!(
                        "{label},{c},{},{},{},{},{},{}",
                        e[0], e[1], e[2], e[3], e[4], e[5]
                    );
                }
            }
        }
    }
}

fn print_report(report: &SuiteReport, output: Output) {
    match output {
        Output::Text => {
            println!(
                "suite {}: {} passed, {} failed",
                report.name, report.passed, report.failed
            );
            for f in &report.failures {
                println!("  FAIL {f}");
            }
        }
        Output::Json => {
            let val = serde_json::json!({
                "suite": report.name,
                "passed": report.passed,
                "failed": report.failed,
                "failures": report.failures,
            });
            println!("{val}");
        }
        Output::Csv => {
            println!("suite,passed,failed");
            println!("{},{},{}", report.name, report.passed, report.failed);
        }
    }
}

fn read_input(path: Option<&PathBuf>) -> Result<String, String> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| e.to_string())?;
            Ok(buf)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(dir) = &cli.config.cache_dir {
        skeinhall::symfunc::set_cache_dir(Some(dir.clone()));
    }
    ExitCode::from(dispatch(&cli))
}

fn dispatch(cli: &Cli) -> u8 {
    let cap = cli.config.degree_cap.max(1);
    let output = cli.config.output;
    match &cli.command {
        Command::Jh { pairs, lambda } => {
            let (pairs, lambda) = match (parse_pairs(pairs), parse_partition(lambda)) {
                (Ok(p), Ok(l)) => (p, l),
                (Err(e), _) | (_, Err(e)) => return usage(&e),
            };
            match skeinmod::j_h(&pairs, &lambda, cap) {
                Ok(f) => {
                    print_ratfunc(&f, output);
                    EXIT_OK
                }
                Err(e) => compute_error(&e),
            }
        }
        Command::Je { pairs, lambda } => {
            let (pairs, lambda) = match (parse_pairs(pairs), parse_partition(lambda)) {
                (Ok(p), Ok(l)) => (p, l),
                (Err(e), _) | (_, Err(e)) => return usage(&e),
            };
            match hallrep::j_e(&pairs, &lambda, cap) {
                Ok(f) => {
                    print_ratfunc(&f, output);
                    EXIT_OK
                }
                Err(e) => compute_error(&e),
            }
        }
        Command::Specialize { target, n, input } => {
            let text = match read_input(input.as_ref()) {
                Ok(t) => t,
                Err(e) => return usage(&e),
            };
            let f: RatFunc = match serde_json::from_str(&text) {
                Ok(f) => f,
                Err(e) => return usage(&format!("bad JSON input: {e}")),
            };
            let result = match target {
                Target::Skein => hallrep::spec_to_skein(&f),
                Target::N => match n {
                    Some(n) if *n >= 1 => hallrep::spec_to_n(&f, *n),
                    _ => return usage("--target n requires --n <N> with N >= 1"),
                },
            };
            match result {
                Ok(f) => {
                    print_ratfunc(&f, output);
                    EXIT_OK
                }
                Err(e) => compute_error(&e),
            }
        }
        Command::Qdim { lambda } => {
            let lambda = match parse_partition(lambda) {
                Ok(l) => l,
                Err(e) => return usage(&e),
            };
            match symfunc::ev_H(&SymFunc::basis_element(Basis::Schur, lambda)) {
                Ok(f) => {
                    print_ratfunc(&f, output);
                    EXIT_OK
                }
                Err(e) => compute_error(&e),
            }
        }
        Command::Verify { suite } => match suites::run_suite(suite, cli.config.seed, cap) {
            Ok(report) => {
                print_report(&report, output);
                if report.ok() {
                    EXIT_OK
                } else {
                    EXIT_VERIFY
                }
            }
            Err(e) => usage(&e.to_string()),
        },
        Command::Compare { pairs, lambda } => {
            let (pairs, lambda) = match (parse_pairs(pairs), parse_partition(lambda)) {
                (Ok(p), Ok(l)) => (p, l),
                (Err(e), _) | (_, Err(e)) => return usage(&e),
            };
            match knots::compare_connection(&pairs, &lambda, cap) {
                Ok(report) => {
                    match output {
                        Output::Json => println!("{}", serde_json::to_string(&report).unwrap()),
                        _ => println!(
                            "equal: {}, monomial: v^{} s^{}",
                            report.equal, report.monomial.0, report.monomial.1
                        ),
                    }
                    EXIT_OK
                }
                Err(e) => compute_error(&e),
            }
        }
    }
}

fn usage(message: &str) -> u8 {
    eprintln!("error: {message}");
    EXIT_USAGE
}

fn compute_error(e: &skeinhall::Error) -> u8 {
    eprintln!("computation failed: {e}");
    EXIT_COMPUTE
}
