use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use netcache_cli::bench::cmd_bench;
use netcache_cli::commands::{
    cmd_analyze, cmd_reduce, cmd_solve, cmd_transform, config, load, read, Ell, Output, SourceKind,
};
use netcache_cli::error::CliError;
use netcache_cli::verify::{run_verify, VerifyCaps};
use netcache_core::solvers::{Selector, DEFAULT_MAX_STATES};

/// Exact solvers and hard-instance generators for network content caching.
///
/// INPUT arguments take an instance file or a generator spec such as
/// `gen:C=2,U=40,S=120,cap=60,homogeneous,seed=1`. Exit status: 0 for
/// success or YES, 1 for NO or failed checks, 2 and above for errors.
#[derive(Parser)]
#[command(name = "netcache", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the optimal hit rate, or YES/NO against a threshold.
    Solve {
        input: String,
        /// auto, brute, capdp, typedp or homnc-u.
        #[arg(long, default_value = "auto")]
        algo: Selector,
        /// Decide `CH ≥ ELL` instead; `file` uses the stored threshold.
        #[arg(long)]
        ell: Option<Ell>,
        /// Also print an optimal allocation.
        #[arg(long)]
        witness: bool,
        /// Largest search bound the dynamic programs may take on.
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        budget: u64,
    },
    /// Print structural parameters, the variant and per-solver bounds.
    Analyze {
        input: String,
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        budget: u64,
    },
    /// Build a caching instance from a source problem.
    Reduce {
        #[arg(long, value_enum)]
        from: SourceKind,
        source: PathBuf,
        /// Bin packing and knapsack: one user per item.
        #[arg(long)]
        split_users: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Apply one of the optimum-preserving interreduction cases (1 to 5).
    Transform {
        input: String,
        #[arg(long)]
        case: u8,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Cross-check solvers and reductions on random instances.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 3)]
        max_c: usize,
        #[arg(long, default_value_t = 4)]
        max_u: usize,
        #[arg(long, default_value_t = 5)]
        max_s: usize,
        #[arg(long, default_value_t = 3)]
        max_size: u64,
        #[arg(long, default_value_t = 4)]
        max_cap: u64,
    },
    /// Time every applicable solver; CSV on stdout.
    Bench {
        input: String,
        #[arg(long, default_value_t = 1)]
        repetitions: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        budget: u64,
    },
}

fn write_or_print(out: Output, path: Option<PathBuf>) -> Result<Output, CliError> {
    let Some(path) = path else { return Ok(out) };
    std::fs::write(&path, &out.stdout).map_err(|source| CliError::Io { path, source })?;
    Ok(Output { stdout: String::new(), ..out })
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Solve { input, algo, ell, witness, budget } => {
            cmd_solve(&load(&input)?, algo, ell.as_ref(), witness, budget)
        }
        Command::Analyze { input, budget } => Ok(cmd_analyze(&load(&input)?, budget)),
        Command::Reduce { from, source, split_users, output } => {
            let text = read(&source)?;
            write_or_print(cmd_reduce(from, &text, &source.display().to_string(), split_users)?, output)
        }
        Command::Transform { input, case, output } => write_or_print(cmd_transform(&load(&input)?, case)?, output),
        Command::Verify { seed, trials, max_c, max_u, max_s, max_size, max_cap } => {
            let caps = VerifyCaps { caches: max_c, users: max_u, contents: max_s, size: max_size, capacity: max_cap };
            let report = run_verify(seed, trials, caps)?;
            let code = if report.failed() == 0 { 0 } else { 1 };
            Ok(Output { stdout: report.render(), stderr: String::new(), code })
        }
        Command::Bench { input, repetitions, budget } => {
            cmd_bench(&load(&input)?.instance, repetitions, config(budget))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{}", out.stdout);
            let _ = std::io::stdout().flush();
            eprint!("{}", out.stderr);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
