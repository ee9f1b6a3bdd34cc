//! `latticelab`: validate, analyze and export finite modular lattices, and
//! run the theorem conformance harness.
//!
//! Exit codes: 0 on success, 1 when a requested property fails or a
//! counterexample is found, 2 on malformed input or usage errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;

use commands::{CliError, Output};

#[derive(Parser, Debug)]
#[command(
    name = "latticelab",
    version,
    about = "Linear morphisms and Rickart conditions on finite modular lattices"
)]
struct Cli {
    /// Emit JSON on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for the library's parallel searches.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a file describes a lattice and report its basic shape.
    Validate { lattice: PathBuf },

    /// Decide properties of a lattice relative to a monoid of endomorphisms.
    Analyze {
        lattice: PathBuf,
        /// `full`, or a monoid spec file.
        #[arg(long, default_value = "full")]
        monoid: String,
        /// Comma-separated property ids, or `all`.
        #[arg(long, default_value = "rickart,baer,dual_rickart,dual_baer")]
        props: String,
    },

    /// Enumerate linear morphisms out of a lattice.
    Endos {
        lattice: PathBuf,
        /// Print only the number of morphisms (the default).
        #[arg(long, conflicts_with = "list")]
        count: bool,
        /// Print every morphism table.
        #[arg(long)]
        list: bool,
        /// Target lattice; defaults to the source.
        #[arg(long)]
        codomain: Option<PathBuf>,
    },

    /// Split a modular lattice into indecomposable blocks.
    Decompose { lattice: PathBuf },

    /// Direct product of two or more lattices.
    Product {
        #[arg(required = true, num_args = 2..)]
        factors: Vec<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },

    /// Subgroup lattice and induced monoid of a finite abelian group.
    Module {
        /// Invariant factors, e.g. `4` or `2,4`.
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "rickart,baer,dual_rickart,dual_baer")]
        props: String,
    },

    /// Run the conformance checks over fixtures and random lattices.
    Theorems {
        /// Directory of lattice files; the built-in fixtures otherwise.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Number of random modular lattices to add.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 8)]
        max_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated check ids; all checks by default.
        #[arg(long)]
        checks: Option<String>,
        /// `full`, `projections` or `both`.
        #[arg(long, default_value = "both")]
        monoid: String,
        /// Write the full JSON report here as well.
        #[arg(long)]
        report: Option<PathBuf>,
    },

    /// Write the Hasse diagram in Graphviz DOT.
    ExportDot {
        lattice: PathBuf,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<Output, CliError> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("--threads: {e}")))?;
    }
    let limits = latticelab::Limits::from_env();
    match cli.command {
        Command::Validate { lattice } => commands::validate(&lattice, &limits),
        Command::Analyze {
            lattice,
            monoid,
            props,
        } => commands::analyze(&lattice, &monoid, &props, &limits),
        Command::Endos {
            lattice,
            count: _,
            list,
            codomain,
        } => commands::endos(&lattice, codomain.as_deref(), list, &limits),
        Command::Decompose { lattice } => commands::decompose(&lattice, &limits),
        Command::Product { factors, output } => commands::product(&factors, &output, &limits),
        Command::Module { group, props } => commands::module(&group, &props, &limits),
        Command::Theorems {
            corpus,
            random,
            max_size,
            seed,
            checks,
            monoid,
            report,
        } => commands::theorems(
            commands::TheoremArgs {
                corpus,
                random,
                max_size,
                seed,
                checks,
                monoid,
                report,
            },
            &limits,
        ),
        Command::ExportDot { lattice, output } => {
            commands::export_dot(&lattice, output.as_deref(), &limits)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("values serialize")
                );
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
