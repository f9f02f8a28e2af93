use clap::{Parser, Subcommand};

use idemring::cli::{
    list_members, render_bench, render_list, render_table, run_bench, run_verify, ListMethod,
    OutputFormat, TableFormat, TableMethod, SCAN_CEILING_ENV,
};
use idemring::oracle::DEFAULT_SCAN_CEILING;
use idemring::{factorize, Error};

/// Enumerate the idempotent elements of Z_n through coprime splits.
#[derive(Parser)]
#[command(name = "idemring", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the idempotents of Z_n
    List {
        n: u64,
        #[arg(long, value_enum, default_value = "prop51")]
        method: ListMethod,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Print the solved splits (p, m, t, r and the idempotent pair)
    Table {
        n: u64,
        #[arg(long, value_enum, default_value = "auto")]
        method: TableMethod,
        #[arg(long, value_enum, default_value = "text")]
        format: TableFormat,
    },
    /// Check every enumeration route and invariant for 2 <= n <= max
    Verify {
        #[arg(long, default_value_t = 1_000)]
        max: u64,
    },
    /// Compare the r-finding strategies over all splits with n <= max
    Bench {
        #[arg(long, default_value_t = 10_000)]
        max: u64,
        #[arg(long, default_value_t = 1)]
        reps: u32,
    },
}

const EXIT_VIOLATION: i32 = 1;
const EXIT_USAGE: i32 = 2;

fn scan_ceiling() -> u64 {
    match std::env::var(SCAN_CEILING_ENV) {
        Err(std::env::VarError::NotPresent) => DEFAULT_SCAN_CEILING,
        Ok(raw) => match raw.trim().parse::<u64>() {
            Ok(v) => v,
            Err(_) => {
                eprintln!("error: {SCAN_CEILING_ENV} must be an unsigned integer, got {raw:?}");
                std::process::exit(EXIT_USAGE);
            }
        },
        Err(std::env::VarError::NotUnicode(_)) => {
            eprintln!("error: {SCAN_CEILING_ENV} is not valid unicode");
            std::process::exit(EXIT_USAGE);
        }
    }
}

fn usage_error(e: Error) -> ! {
    eprintln!("error: {e}");
    std::process::exit(EXIT_USAGE);
}

fn main() {
    let cli = Cli::parse();
    let ceiling = scan_ceiling();
    match cli.command {
        Command::List { n, method, format } => {
            let (fac, members) = match list_members(n, method, ceiling) {
                Ok(v) => v,
                Err(e) => usage_error(e),
            };
            print!("{}", render_list(&fac, &members, method, format));
        }
        Command::Table { n, method, format } => {
            let fac = match factorize(n) {
                Ok(f) => f,
                Err(e) => usage_error(e),
            };
            print!("{}", render_table(&fac, method, format));
            if fac.k() < 2 {
                eprintln!(
                    "n = {n} is a prime power: the only idempotents are 0 and 1, \
                     and there is no coprime split to tabulate"
                );
            }
        }
        Command::Verify { max } => {
            if max > ceiling {
                eprintln!("error: --max {max} exceeds the scan ceiling {ceiling} (set {SCAN_CEILING_ENV} to raise it)");
                std::process::exit(EXIT_USAGE);
            }
            let (report, line) = run_verify(max, ceiling);
            print!("{line}");
            if let Some(v) = report.violation {
                eprintln!("violation: {v}");
                std::process::exit(EXIT_VIOLATION);
            }
        }
        Command::Bench { max, reps } => {
            if reps < 1 {
                eprintln!("error: --reps must be at least 1");
                std::process::exit(EXIT_USAGE);
            }
            let report = run_bench(max, reps);
            print!("{}", render_bench(&report));
            if report.disagreements > 0 || report.ops_bound_violations > 0 {
                eprintln!("the solving routes disagreed or exceeded their bounds");
                std::process::exit(EXIT_VIOLATION);
            }
        }
    }
}
