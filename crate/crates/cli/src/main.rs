// SPDX-License-Identifier: Apache-2.0

//! `collatz-sd`: command-line front end for `collatz-symbolic`.

mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use collatz_symbolic::itinerary::DEFAULT_BUDGET;
use collatz_symbolic::oracle::{self, Check, DEFAULT_ORBIT_BUDGET};
use collatz_symbolic::{exec, ladder, prefix, reports, stability, Nat};
use collatz_symbolic::{classify, primitive_backward, primitive_forward, Error};

use output::Out;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "collatz-sd", version, about = "Symbolic dynamics of the Collatz map")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Node kind, character and hub/pump role of odd values.
    Classify {
        #[arg(required = true, value_parser = parse_nat)]
        values: Vec<Nat>,
    },
    /// The C-ladder above a hub.
    Ladder {
        #[arg(value_parser = parse_nat)]
        hub: Nat,
        #[arg(long, default_value_t = 6)]
        pumps: usize,
        /// Also list this many even preimages above each 0-node rung.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Primitive itinerary forward from a 0-node to its first pump.
    Itinerary {
        #[arg(value_parser = parse_nat)]
        zero_node: Nat,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Backward trace through first odd preimages to a 0-node.
    Traceback {
        #[arg(value_parser = parse_nat)]
        value: Nat,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        depth: u64,
    },
    /// Expansiveness of a 0-node's itinerary, or bounds for a symbol count.
    Stability {
        #[arg(value_parser = parse_nat, required_unless_present = "length", conflicts_with = "length")]
        zero_node: Option<Nat>,
        /// Number of binary symbols after the leading 0.
        #[arg(long)]
        length: Option<u32>,
    },
    /// A run of M+1 consecutive 1-nodes built from an odd seed s.
    Expansive {
        #[arg(long, value_parser = parse_nat)]
        s: Nat,
        #[arg(long = "M")]
        m: u32,
    },
    /// Prefix equations and the prefix tree.
    Prefix {
        #[command(subcommand)]
        command: PrefixCommand,
    },
    /// Regenerate one of the published tables (1 to 5).
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=5))]
        id: u8,
        #[arg(long)]
        rows: Option<usize>,
    },
    /// Compare symbolic results against brute-force iteration.
    Verify(VerifyArgs),
    /// Raw orbit of a value down to 1.
    Orbit {
        #[arg(value_parser = parse_nat)]
        value: Nat,
        #[arg(long, default_value_t = DEFAULT_ORBIT_BUDGET)]
        budget: u64,
    },
}

#[derive(Debug, Subcommand)]
enum PrefixCommand {
    /// Solve the equation for a prefix such as 1120.
    Compile { prefix: String },
    /// First rows of a prefix's progression.
    Enumerate {
        prefix: String,
        #[arg(long, default_value_t = 8)]
        rows: u64,
    },
    /// Every equation of the prefix tree down to a depth.
    Tree {
        #[arg(long, default_value_t = 3)]
        depth: u32,
    },
    /// Check that 1- and 2-nodes below a bound lie on primitive itineraries.
    Coverage {
        #[arg(long, default_value_t = 100_000)]
        bound: u64,
        #[arg(long)]
        partitions: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        depth: u64,
    },
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_range)]
    range: (u64, u64),
    /// Comma-separated check names, or `all`.
    #[arg(long, default_value = "all")]
    checks: String,
    #[arg(long)]
    partitions: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_ORBIT_BUDGET)]
    budget: u64,
}

/// Decimal digits only: no sign, no radix prefix, no separators.
fn parse_nat(s: &str) -> Result<Nat, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("{s:?} is not a decimal integer"));
    }
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("{s:?} is not of the form LO:HI"))?;
    let num = |t: &str| -> Result<u64, String> {
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("{t:?} is not a decimal integer"));
        }
        t.parse().map_err(|e| format!("{t}: {e}"))
    };
    Ok((num(lo)?, num(hi)?))
}

/// A run either succeeds or fails with a library error; `Ok(false)` means
/// the command ran but found inconsistencies (a failed check).
fn run(cli: Cli) -> Result<bool, Error> {
    let out = Out::new(cli.format);
    match cli.command {
        Command::Classify { values } => {
            let infos = values.iter().map(classify).collect::<Result<Vec<_>, _>>()?;
            out.classify(&infos);
        }
        Command::Ladder { hub, pumps, threads } => {
            let l = ladder::generate_ladder(&classify(&hub)?, pumps)?;
            let threads = match threads {
                Some(depth) => Some(
                    ladder::pump_kind_sequence(&l)
                        .iter()
                        .zip(l.nodes())
                        .filter(|(k, _)| k.is_zero())
                        .map(|(_, v)| ladder::even_thread(&classify(v)?, depth))
                        .collect::<Result<Vec<_>, _>>()?,
                ),
                None => None,
            };
            out.ladder(&l, threads.as_deref());
        }
        Command::Itinerary { zero_node, budget } => {
            let it = primitive_forward(&classify(&zero_node)?, budget)?;
            out.itinerary(&it);
        }
        Command::Traceback { value, depth } => {
            let it = primitive_backward(&classify(&value)?, depth)?;
            out.itinerary(&it);
        }
        Command::Stability { zero_node, length } => match (zero_node, length) {
            (Some(z), _) => {
                let it = primitive_forward(&classify(&z)?, DEFAULT_BUDGET)?;
                out.stability(&stability::analyze(&it));
            }
            (None, Some(n)) => out.bounds(n),
            (None, None) => unreachable!("clap requires one of the two"),
        },
        Command::Expansive { s, m } => out.expansive(&stability::construct_expansive(&s, m)?),
        Command::Prefix { command } => return run_prefix(&out, command),
        Command::Table { id, rows } => out.table(&reports::table(id, rows)?),
        Command::Verify(args) => {
            let checks = Check::parse_list(&args.checks)?;
            let partitions = args.partitions.unwrap_or_else(exec::available_parallelism);
            let report = oracle::sweep_with_budget(args.range.0, args.range.1, &checks, partitions, args.budget)?;
            out.verify(&report);
            return Ok(report.passed());
        }
        Command::Orbit { value, budget } => out.orbit(&oracle::orbit(&value, budget)?),
    }
    Ok(true)
}

fn run_prefix(out: &Out, command: PrefixCommand) -> Result<bool, Error> {
    match command {
        PrefixCommand::Compile { prefix } => out.equation(&prefix::compile_prefix(&prefix)?),
        PrefixCommand::Enumerate { prefix, rows } => {
            let eq = prefix::compile_prefix(&prefix)?;
            out.progression(&eq, &prefix::enumerate(&eq, rows)?);
        }
        PrefixCommand::Tree { depth } => out.tree(&prefix::build_tree(depth)?),
        PrefixCommand::Coverage { bound, partitions, depth } => {
            let partitions = partitions.unwrap_or_else(exec::available_parallelism);
            let report = prefix::coverage_check_with(bound, partitions, depth);
            out.coverage(&report);
            return Ok(report.passed());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_consistency() { 2 } else { 1 })
        }
    }
}
