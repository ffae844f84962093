use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

use output::CommandResult;

#[derive(Parser)]
#[command(name = "speh", version, about = "Bruhat posets, sign assignments and clan diagrams for Speh complexes")]
struct Cli {
    /// Compact JSON instead of pretty-printed.
    #[arg(long, global = true)]
    compact: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List permutations, involutions or clans with their lengths.
    Enum {
        #[arg(value_enum)]
        kind: EnumKind,
        #[command(flatten)]
        size: SizeArgs,
    },
    /// Run one of the structural checks.
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
        #[arg(long, value_enum, default_value = "inv")]
        poset: PosetKind,
        #[command(flatten)]
        size: SizeArgs,
        /// Fixture JSON (a bundled name such as gl8.json also works).
        #[arg(long)]
        file: Option<PathBuf>,
        /// Multiplicity convention for `euler`.
        #[arg(long, value_enum)]
        convention: Option<Convention>,
        /// Build clan diagrams from the local rewriting rules only.
        #[arg(long)]
        local: bool,
    },
    /// Solve for edge signs with d² = 0 and check the resulting complex.
    Solve {
        #[arg(long, value_enum, default_value = "inv")]
        poset: PosetKind,
        #[arg(long)]
        n: usize,
        /// Write the signed diagram in fixture format.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export diagrams, labels, chains or KL tables.
    Export {
        #[command(subcommand)]
        what: ExportCommand,
    },
}

#[derive(Subcommand)]
enum ExportCommand {
    /// Hasse diagram as DOT, wrapped in JSON unless `--dot` is given.
    HasseDot {
        #[arg(long, value_enum, default_value = "inv")]
        poset: PosetKind,
        #[arg(long)]
        n: Option<usize>,
        /// Clan diagram of signature (p, q).
        #[arg(long, num_args = 2, value_names = ["P", "Q"])]
        clans: Option<Vec<usize>>,
        /// Solve for signs and draw negative edges dotted.
        #[arg(long)]
        signs: bool,
        /// Print raw DOT.
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Standard-module label of a parameter.
    Labels {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        perm: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The saturated chain of Whittaker-generic clans.
    Chain {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        /// Continue down to rank zero.
        #[arg(long)]
        full: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Kazhdan–Lusztig polynomials of S_n.
    Kl {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Clone, Copy, Default)]
struct SizeArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum EnumKind {
    Perms,
    Involutions,
    Clans,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum VerifyTarget {
    Diamonds,
    El,
    Grading,
    OrderAgreement,
    Euler,
    Fixture,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum PosetKind {
    Sym,
    Inv,
    Clans,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Convention {
    Direct,
    Twisted,
}

fn run(cli: Cli) -> CommandResult {
    match cli.command {
        Command::Enum { kind, size } => commands::enumerate(kind, size),
        Command::Verify {
            target,
            poset,
            size,
            file,
            convention,
            local,
        } => commands::verify(target, poset, size, file, convention, local),
        Command::Solve { poset, n, out } => commands::solve(poset, n, out),
        Command::Export { what } => commands::export(what),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let compact = cli.compact;
    let result = run(cli);
    result.emit(compact)
}
