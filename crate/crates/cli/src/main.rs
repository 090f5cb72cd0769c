mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use totient_core::power_two::FermatStatusTable;

use crate::commands::Failure;
use crate::output::{Format, OutputRecord, Provenance};

/// Environment variable holding the sieve budget in entries.
pub const BUDGET_ENV: &str = "TOTIENT_SIEVE_BUDGET";

#[derive(Parser)]
#[command(name = "totient", version)]
#[command(about = "Euler's totient, its inverse images and multiplicity scans")]
struct Cli {
    /// Emit a JSON record instead of text
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV (tabular commands only)
    #[arg(long, global = true)]
    csv: bool,
    /// Fermat status overrides, one `index prime|composite|unknown` per line
    #[arg(long, global = true, value_name = "FILE")]
    fermat_table: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    #[command(about = "Euler's totient φ(n)")]
    Phi { n: u64 },
    #[command(about = "Gupta's bound A(m) for m = 1 or even m")]
    Bound { m: u64 },
    #[command(about = "All n with φ(n) = m, split by parity")]
    Preimage { m: u64 },
    #[command(about = "m, A(m) and φ(A(m)) for m = 1, 2, 4, …, 14")]
    Table2,
    #[command(about = "Whether 2p is a totient, for prime p")]
    Classify { p: u64 },
    #[command(about = "First members q of S(p): primes with p | 2q+1, so 2q is a nontotient")]
    Sp { p: u64, count: usize },
    #[command(about = "Odd solutions of φ(n) = 2^k and A(2^k)")]
    Pow2 { k: u32 },
    #[command(about = "Build a totient sieve, optionally saving it")]
    Sieve {
        limit: u64,
        #[arg(long, value_name = "FILE")]
        save: Option<PathBuf>,
    },
    #[command(about = "All m ≤ B with exactly one preimage")]
    Carmichael {
        bound: u64,
        /// Reuse a saved sieve instead of building one
        #[arg(long, value_name = "FILE")]
        sieve: Option<PathBuf>,
    },
    #[command(about = "Smallest m ≤ B with exactly k preimages")]
    Ford {
        k: u64,
        bound: u64,
        #[arg(long, value_name = "FILE")]
        sieve: Option<PathBuf>,
    },
    #[command(about = "Check O(2s) = E(2s) for odd s in 3..=s_max")]
    Parity {
        s_max: u64,
        #[arg(long, value_name = "FILE")]
        sieve: Option<PathBuf>,
    },
}

fn budget() -> Result<u64, Failure> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{BUDGET_ENV} must be an integer, got {v:?}"))),
        Err(_) => Ok(totient_core::multiplicity::DEFAULT_BUDGET),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Text
    };
    let table = match &cli.fermat_table {
        Some(path) => FermatStatusTable::load(path)?,
        None => FermatStatusTable::default(),
    };
    let budget = budget()?;

    let start = Instant::now();
    let report = commands::execute(&cli.command, &table, budget)?;
    let record = OutputRecord {
        command: report.command,
        inputs: report.inputs,
        result: report.result,
        provenance: Provenance::new(&table),
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    };

    let rendered = match format {
        Format::Json => output::to_json(&record),
        Format::Text => report.text,
        Format::Csv => match report.csv {
            Some(rows) => output::to_csv(&rows)?,
            None => {
                return Err(Failure::Usage(format!(
                    "`{}` has no CSV form",
                    record.command
                )))
            }
        },
    };
    print!("{rendered}");
    if !rendered.ends_with('\n') {
        println!();
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
