//! `semidef`: runs the library's constructions and checks from the command
//! line and prints a JSON report. Exit code 0 on pass, 1 on a failed check,
//! 2 on bad input.

mod commands;
mod dot;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use commands::{DotArgs, GateArgs, SearchOpts};
use report::{digest, Report, Verdict};

#[derive(Parser)]
#[command(name = "semidef", version, about = "Checks semilattices of definable sets on finite lattices, gates and towers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Search {
    /// Cell metric on the non-crisp part of a gate: midpoint | star
    #[arg(long, default_value = "midpoint")]
    metric: String,
    /// Definable-set search strategy: exhaustive | pruned
    #[arg(long, default_value = "pruned")]
    search: String,
    /// Candidate budget; exceeding it is an error
    #[arg(long, default_value_t = 1 << 20)]
    max_candidates: u64,
}

impl Search {
    fn opts(&self) -> SearchOpts {
        SearchOpts {
            metric: self.metric.clone(),
            search: self.search.clone(),
            max_candidates: self.max_candidates,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build the gate circuit of a lattice and check it against its filters
    VerifyLattice {
        file: PathBuf,
        /// full | minimal | exact | greedy
        #[arg(long, default_value = "full")]
        presentation: String,
        /// Also discretize at this resolution and compare the oracle
        #[arg(long)]
        oracle: Option<usize>,
        #[arg(long)]
        emit_circuit: bool,
        #[command(flatten)]
        search: Search,
    },
    /// Enumerate the definable saturated sets of a discretized gate
    GateOracle {
        /// plain | dagger
        #[arg(long, default_value = "plain")]
        variant: String,
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Smallest threshold, as a fraction; defaults to 2/n
        #[arg(long)]
        r_min: Option<String>,
        /// Number of random non-saturated closed sets to test
        #[arg(long, default_value_t = 0)]
        probes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        emit_space: bool,
        #[command(flatten)]
        search: Search,
    },
    /// Truncation counts, restriction coherence and limit queries for a tower
    Tower {
        /// forward | reverse | exact-pair
        #[arg(long, default_value = "forward")]
        kind: String,
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// Query the symbolic limit family
        #[arg(long)]
        limit: bool,
        /// Indexed limit members to sample
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// List the filters of a meet-semilattice
    Filters {
        file: PathBuf,
        #[arg(long)]
        include_empty: bool,
        #[arg(long)]
        as_lattice: bool,
    },
    /// Rail truncation of a meet-semilattice against its truncated filters
    Y0 {
        file: PathBuf,
        /// Comma-separated labels, bottom first; defaults to file order with the bottom moved first
        #[arg(long)]
        enumeration: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        /// Also build the three-copy soldered version
        #[arg(long)]
        solder: bool,
    },
    /// Write a DOT diagram
    ExportDot {
        /// hasse | circuit | lattice-circuit | gate | dagger
        object: String,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value = "full")]
        presentation: String,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        search: Search,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::VerifyLattice { .. } => "verify-lattice",
            Command::GateOracle { .. } => "gate-oracle",
            Command::Tower { .. } => "tower",
            Command::Filters { .. } => "filters",
            Command::Y0 { .. } => "y0",
            Command::ExportDot { .. } => "export-dot",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args: Vec<String> = std::env::args().skip(1).collect();
    // Commands without an input file digest their own arguments.
    let args_digest = digest(args.join("\0").as_bytes());
    let started = Instant::now();
    let outcome = match &cli.command {
        Command::VerifyLattice {
            file,
            presentation,
            oracle,
            emit_circuit,
            search,
        } => commands::verify_lattice(file, presentation, *oracle, *emit_circuit, &search.opts()),
        Command::GateOracle {
            variant,
            n,
            r_min,
            probes,
            seed,
            emit_space,
            search,
        } => {
            let a = GateArgs {
                variant,
                n: *n,
                r_min: r_min.as_deref(),
                probes: *probes,
                seed: *seed,
                emit_space: *emit_space,
            };
            commands::gate_oracle(&a, &search.opts(), &args_digest)
        }
        Command::Tower { kind, n, limit, depth } => commands::tower(kind, *n, *limit, *depth, &args_digest),
        Command::Filters {
            file,
            include_empty,
            as_lattice,
        } => commands::filters_cmd(file, *include_empty, *as_lattice),
        Command::Y0 {
            file,
            enumeration,
            k,
            solder,
        } => commands::y0(file, enumeration.as_deref(), *k, *solder),
        Command::ExportDot {
            object,
            input,
            presentation,
            n,
            out,
            search,
        } => {
            let a = DotArgs {
                object,
                input: input.as_ref(),
                presentation,
                n: *n,
                out,
            };
            commands::export_dot(&a, &search.opts(), &args_digest)
        }
    };
    let (input_digest, verdict, results) = match outcome {
        Ok(parts) => parts,
        Err(e) => {
            eprintln!("error: {e}");
            (args_digest, Verdict::Error, json!({ "error": e.to_string() }))
        }
    };
    let report = Report {
        command: cli.command.name().to_string(),
        args,
        input_digest,
        verdict,
        results,
        timing_ms: started.elapsed().as_millis() as u64,
    };
    println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
    ExitCode::from(verdict.exit_code() as u8)
}
