//! `exactgrp`: command-line front end to the exact group-theory verifiers.
//!
//! Exit codes: 0 success, 1 verified negative result, 2 inconclusive or a
//! resource cap was hit, 3 usage error.

mod cmd;
mod input;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cmd::{amen::AmenCmd, circle::CircleCmd, heis::HeisCmd, order::OrderCmd, quasi::QuasiCmd, reduce::ReduceCmd};
use report::{emit, CliError, Report};

#[derive(Parser)]
#[command(name = "exactgrp", version, about = "Exact verifiers for orders, bounded generation, amenability, quasimorphisms and Euler cocycles")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by every subcommand. String inputs also accept `@path`.
#[derive(Args, Clone, Debug)]
pub struct Global {
    /// Print a JSON report (schema 1).
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Resource limit; its meaning depends on the subcommand.
    #[arg(long, global = true)]
    pub cap: Option<u64>,
    /// Word-ball radius for sampled checks.
    #[arg(long, global = true)]
    pub radius: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Row reduction of SL(2) matrices.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Find a prime q = a + kb with r a primitive root mod q.
    Artin {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
    },
    /// Decide whether r is a primitive root mod the prime q.
    Primroot {
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long)]
        q: u64,
    },
    /// Evaluate the elementary-operation bound (3n² − n)/2 + 36.
    Bound {
        #[arg(long, default_value_t = 3)]
        n: u64,
    },
    /// Homomorphisms and Brooks quasimorphisms on free groups.
    #[command(subcommand)]
    Quasi(QuasiCmd),
    /// The discrete Heisenberg group.
    #[command(subcommand)]
    Heis(HeisCmd),
    /// Left orders: cone search, axioms, the SL(3,Z) derivation.
    #[command(subcommand)]
    Order(OrderCmd),
    /// Følner sets, Ponzi schemes, paradoxical decompositions, growth.
    #[command(subcommand)]
    Amen(AmenCmd),
    /// Piecewise-linear circle maps and the Euler cocycle.
    #[command(subcommand)]
    Circle(CircleCmd),
}

fn name(c: &Command) -> &'static str {
    match c {
        Command::Reduce(_) => "reduce",
        Command::Artin { .. } => "artin",
        Command::Primroot { .. } => "primroot",
        Command::Bound { .. } => "bound",
        Command::Quasi(_) => "quasi",
        Command::Heis(_) => "heis",
        Command::Order(_) => "order",
        Command::Amen(_) => "amen",
        Command::Circle(_) => "circle",
    }
}

fn dispatch(g: &Global, c: &Command) -> Result<Report, CliError> {
    match c {
        Command::Reduce(r) => cmd::reduce::run(g, r),
        Command::Artin { a, b, r } => cmd::reduce::artin(g, a, b, r),
        Command::Primroot { r, q } => cmd::reduce::primroot(r, *q),
        Command::Bound { n } => cmd::reduce::carter_keller(*n),
        Command::Quasi(q) => cmd::quasi::run(g, q),
        Command::Heis(h) => cmd::heis::run(h),
        Command::Order(o) => cmd::order::run(g, o),
        Command::Amen(a) => cmd::amen::run(g, a),
        Command::Circle(c) => cmd::circle::run(g, c),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let command = full_name(&argv, name(&cli.command));
    emit(&command, cli.global.json, dispatch(&cli.global, &cli.command))
}

/// `reduce euclid` from the argv, given the top-level name.
fn full_name(argv: &[String], head: &str) -> String {
    let pos = argv.iter().position(|a| a == head);
    match pos.and_then(|i| argv.get(i + 1)) {
        Some(s) if !s.starts_with('-') && matches!(head, "reduce" | "quasi" | "heis" | "order" | "amen" | "circle") => format!("{head} {s}"),
        _ => head.to_string(),
    }
}
