use std::io;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use levelflat::level_ideals::{SubsetPolicy, DEFAULT_SAMPLES, DEFAULT_SEED};
use levelflat::Prime;
use levelflat_cli::dump::{dump_ideal, BasisArg, Format, Which};
use levelflat_cli::{emit_report, run_suite, Report, RunConfig, Suite};

#[derive(Parser)]
#[command(name = "levelflat", version, about = "Verify the full-level-structure ideal of mu_p x mu_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    All,
    Sample,
}

#[derive(Subcommand)]
enum Command {
    /// Run a group of checks and print a table.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// The prime; defaults to 3, or 2 for `kmd`.
        #[arg(long)]
        p: Option<u32>,
        /// Subsets J to enumerate; defaults to all for p <= 3.
        #[arg(long, value_enum)]
        subset_policy: Option<PolicyArg>,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Auxiliary prime for the rational rank; repeatable.
        #[arg(long = "aux-prime")]
        aux_primes: Vec<u64>,
        /// Also run the slow checks.
        #[arg(long)]
        long: bool,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print generators of an ideal over Z.
    Dump {
        #[command(subcommand)]
        what: DumpCommand,
    },
}

#[derive(Subcommand)]
enum DumpCommand {
    Ideal {
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long, value_enum, default_value = "I")]
        which: Which,
        #[arg(long, value_enum, default_value = "group")]
        basis: BasisArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

const USAGE: u8 = 2;

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Verify {
            suite,
            p,
            subset_policy,
            samples,
            seed,
            aux_primes,
            long,
            report,
        } => {
            let p = p.unwrap_or(if suite == Suite::Kmd { 2 } else { 3 });
            let mut config = RunConfig::new(p);
            config.seed = seed;
            config.aux_primes = aux_primes;
            config.long_tests = long;
            config.report_path = report;
            match subset_policy {
                Some(PolicyArg::All) => config.subset_policy = SubsetPolicy::All,
                Some(PolicyArg::Sample) => {
                    config.subset_policy = SubsetPolicy::Sample { per_cardinality: samples, seed }
                }
                None => {
                    if let SubsetPolicy::Sample { .. } = config.subset_policy {
                        config.subset_policy = SubsetPolicy::Sample { per_cardinality: samples, seed };
                    }
                }
            }
            if let Err(e) = config.validate() {
                eprintln!("levelflat: {e}");
                return ExitCode::from(USAGE);
            }
            let start = Instant::now();
            let results = match run_suite(&config, suite) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("levelflat: {e}");
                    return ExitCode::FAILURE;
                }
            };
            let report = Report::new(config, results, start.elapsed().as_millis() as u64);
            if let Err(e) = emit_report(&report, report.config.report_path.as_deref()) {
                eprintln!("levelflat: cannot write report: {e}");
                return ExitCode::FAILURE;
            }
            if report.summary.failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Command::Dump {
            what: DumpCommand::Ideal { p, which, basis, format },
        } => {
            let prime = match Prime::new(p) {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("levelflat: {e}");
                    return ExitCode::from(USAGE);
                }
            };
            match dump_ideal(prime, which, basis, format, &mut io::stdout().lock()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("levelflat: {e}");
                    ExitCode::FAILURE
                }
            }
        }
    }
}
