//! `fibrep` command-line tool.
//!
//! Exit codes: 0 success, 1 a claim failed or a closure hit its cap, 2 usage
//! or input error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fibrep::semigroup::{DEFAULT_ORBIT_CAP, DEFAULT_SEMIGROUP_CAP};

#[derive(Parser)]
#[command(
    name = "fibrep",
    version,
    about = "Fibonacci normalization automata and linear representations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BuildTarget {
    /// Normalization automaton, counting Fibonacci partitions.
    Berstel,
    /// Normalization with an even number of 1s in the first component.
    Even,
    /// Normalization with the number of 1s divisible by 3.
    Mod3,
    /// Normalization with the number of 1s divisible by 4.
    Mod4,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum DeriveTarget {
    /// 2 r_e(n) - r(n), rank 12.
    A,
    /// r_{3,0}(n) - r_{3,1}(n).
    #[value(name = "mod3-0")]
    Mod3Zero,
    /// r_{3,1}(n) - r_{3,2}(n).
    #[value(name = "mod3-1")]
    Mod3One,
    /// r_{3,2}(n) - r_{3,0}(n).
    #[value(name = "mod3-2")]
    Mod3Two,
    /// d(n) = r_{4,0}(n) - r_{4,2}(n).
    D,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FixtureName {
    R,
    Re,
    A,
    D,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ClaimArg {
    Automata,
    Robbins,
    Theorem1,
    Mod3,
    Mod4,
    Stockmeyer,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Build an automaton and write its JSON, DOT and linear representation.
    Build {
        target: BuildTarget,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Write a derived (unminimized) linear representation.
    Derive {
        target: DeriveTarget,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write one of the shipped transcribed representations.
    Fixture {
        name: FixtureName,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate a representation at n, or print `n,value` for 0..=N.
    Eval {
        rep: PathBuf,
        #[arg(required_unless_present = "range", conflicts_with = "range")]
        n: Option<String>,
        #[arg(long, value_name = "N")]
        range: Option<u64>,
    },
    /// Minimize a representation.
    Minimize {
        rep: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build the output automaton from a representation's finite orbit.
    Dfao {
        rep: PathBuf,
        /// JSON output path; the DOT file is written next to it.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Check whether this word synchronizes the automaton.
        #[arg(long, value_name = "WORD")]
        check_sync: Option<String>,
        #[arg(long, default_value_t = DEFAULT_ORBIT_CAP)]
        cap: usize,
    },
    /// Run verification checks and report pass/fail.
    Verify {
        claim: ClaimArg,
        #[arg(long, default_value_t = 10_000)]
        max_n: u64,
        /// Orbit cap.
        #[arg(long, default_value_t = DEFAULT_ORBIT_CAP)]
        cap: usize,
        #[arg(long, default_value_t = DEFAULT_SEMIGROUP_CAP)]
        semigroup_cap: usize,
        /// Print reports as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Write brute-force partition counts as CSV.
    Oracle {
        #[arg(long, default_value_t = 1000)]
        limit: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build { target, out } => commands::build(target, &out),
        Command::Derive { target, out } => commands::derive(target, &out),
        Command::Fixture { name, out } => commands::fixture(name, &out),
        Command::Eval { rep, n, range } => commands::eval(&rep, n.as_deref(), range),
        Command::Minimize { rep, out } => commands::minimize(&rep, &out),
        Command::Dfao {
            rep,
            out,
            check_sync,
            cap,
        } => commands::dfao(&rep, out.as_deref(), check_sync.as_deref(), cap),
        Command::Verify {
            claim,
            max_n,
            cap,
            semigroup_cap,
            json,
        } => commands::verify(claim, max_n, cap, semigroup_cap, json),
        Command::Oracle { limit, out } => commands::oracle(limit, out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fibrep: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
