//! `twreal`: exact verifier for twisted real spectral triples.
//!
//! Exit codes: 0 when every checked instance passes, 1 when any fails (the
//! report is still printed), 2 on input or configuration errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use twreal::suite::{emit_report, replay, run, Format, SuiteConfig, SuiteReport, Target};
use twreal::Error;

#[derive(Parser, Debug)]
#[command(
    name = "twreal",
    version,
    about = "Exact verification of twisted real spectral triples"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    /// Worker threads for the instance checks.
    #[arg(long, global = true, env = "TWREAL_JOBS")]
    jobs: Option<usize>,

    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every axiom on the quantum cone or on a finite triple.
    #[command(subcommand)]
    Verify(Verify),
    /// Fluctuate a (twisted) finite triple by a one-form and verify the result.
    Fluctuate {
        #[command(flatten)]
        finite: Finite,
        /// One-form pairs (JSON).
        #[arg(long)]
        pairs: PathBuf,
    },
    /// Twist a finite triple by `--k`, retwist by `--k2`, and verify.
    Retwist {
        #[command(flatten)]
        finite: Finite,
        /// Second conformal factor (JSON).
        #[arg(long)]
        k2: PathBuf,
    },
    /// Look up the KO-dimension of a sign triple.
    KoDim {
        #[arg(long, allow_hyphen_values = true)]
        epsilon: i64,
        #[arg(long, allow_hyphen_values = true)]
        epsilon_prime: i64,
        /// Present exactly for even triples.
        #[arg(long, allow_hyphen_values = true)]
        epsilon_double_prime: Option<i64>,
    },
    /// Replay the failures of a JSON report and check they reproduce.
    Replay { report: PathBuf },
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// The quantum cone triple for a given N.
    Cone {
        #[arg(long, allow_hyphen_values = true)]
        modulus: i64,
        /// Largest total degree of basis vectors of H.
        #[arg(long, default_value_t = 4)]
        cutoff: u32,
        /// Largest total degree of algebra monomials; defaults to the cutoff.
        #[arg(long)]
        algebra_cutoff: Option<u32>,
    },
    /// A finite triple, conformally twisted by `--k` when given.
    Conformal {
        #[command(flatten)]
        finite: Finite,
    },
}

#[derive(Args, Debug)]
struct Finite {
    /// Finite triple fixture (JSON).
    #[arg(long)]
    fixture: PathBuf,
    /// Conformal factor (JSON); identity when omitted.
    #[arg(long)]
    k: Option<PathBuf>,
}

fn config_for(command: Command) -> SuiteConfig {
    let finite = |target: Target, f: Finite| SuiteConfig {
        fixture: Some(f.fixture),
        factor: f.k,
        ..SuiteConfig::new(target)
    };
    match command {
        Command::Verify(Verify::Cone {
            modulus,
            cutoff,
            algebra_cutoff,
        }) => SuiteConfig::cone(modulus, cutoff, algebra_cutoff.unwrap_or(cutoff)),
        Command::Verify(Verify::Conformal { finite: f }) => finite(Target::Conformal, f),
        Command::Fluctuate { finite: f, pairs } => SuiteConfig {
            pairs: Some(pairs),
            ..finite(Target::Fluctuation, f)
        },
        Command::Retwist { finite: f, k2 } => SuiteConfig {
            second_factor: Some(k2),
            ..finite(Target::Retwist, f)
        },
        Command::KoDim {
            epsilon,
            epsilon_prime,
            epsilon_double_prime,
        } => SuiteConfig {
            signs: Some((epsilon, epsilon_prime, epsilon_double_prime)),
            ..SuiteConfig::new(Target::Ko)
        },
        Command::Replay { .. } => unreachable!("handled before configuration"),
    }
}

fn fail(err: &Error) -> ExitCode {
    eprintln!("error[{}]: {err}", err.code());
    ExitCode::from(2)
}

fn replay_report(path: &Path, jobs: Option<usize>) -> ExitCode {
    let text = match twreal::conformal::read_file(path) {
        Ok(t) => t,
        Err(e) => return fail(&e),
    };
    let report: SuiteReport =
        match twreal::conformal::parse_json(&text, &path.display().to_string()) {
            Ok(r) => r,
            Err(e) => return fail(&e),
        };
    let mut config = report.config.clone();
    config.jobs = jobs;
    let mut missed = 0;
    for r in report.reports.iter().filter(|r| !r.passed()) {
        match replay(&config, r) {
            Ok(again) if again == *r => println!("reproduced {} #{}", r.axiom.name(), r.index),
            Ok(_) => {
                missed += 1;
                println!("NOT reproduced {} #{}", r.axiom.name(), r.index);
            }
            Err(e) => return fail(&e),
        }
    }
    println!(
        "{missed} of {} failures not reproduced",
        report.summary.failures
    );
    if missed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        Command::Replay { report } => return replay_report(&report, cli.jobs),
        other => other,
    };
    let mut config = config_for(command);
    config.format = match cli.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    config.jobs = cli.jobs;
    config.timing = cli.timing;
    match run(&config) {
        Ok(report) => {
            print!("{}", emit_report(&report, config.format));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => fail(&e),
    }
}
