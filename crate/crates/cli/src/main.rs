//! `idensity`: reproducible density experiments with JSON or CSV reports.

mod commands;
mod inputs;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{ExperimentReport, SCHEMA_VERSION};

#[derive(Parser)]
#[command(name = "idensity", version, about = "Intrinsic density experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Evaluation horizon for streams given in the stream DSL.
    #[arg(long, default_value_t = intrinsic_density::density::DEFAULT_HORIZON, global = true)]
    horizon: u64,

    /// Record wall time in the report (breaks byte-for-byte reproducibility).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Partial densities of a set (optionally sampled through an injection).
    Density {
        #[arg(long)]
        set: String,
        #[arg(long)]
        checkpoints: String,
        #[arg(long)]
        sampler: Option<String>,
    },
    /// First members of the prefix set of a stream.
    PrefixSet {
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 8)]
        count: u64,
    },
    /// Decode a bounded-width tree from a sampler of prefix codes.
    TreeDecode {
        #[arg(long)]
        set: String,
        /// Defaults to the enumerator of the prefix codes of `--set`.
        #[arg(long)]
        sampler: Option<String>,
        #[arg(long)]
        q: u64,
        #[arg(long = "full-height", default_value_t = 0)]
        full_height: u64,
        #[arg(long)]
        depth: u64,
    },
    /// Recover bits from a set of prefix codes.
    Introreduce {
        #[arg(long)]
        codes: String,
    },
    /// Build the traceability injection and check its sampled densities.
    Wct {
        #[arg(long)]
        set: String,
        #[arg(long)]
        nmax: u64,
        /// Use the true trace h(n) = A↾p_A(n!).
        #[arg(long, conflicts_with = "trace_file")]
        oracle_trace: bool,
        /// Guess file with `n:<bits>` lines.
        #[arg(long)]
        trace_file: Option<String>,
    },
    /// Graph set of a function table.
    Graph {
        #[arg(long)]
        f: String,
    },
    /// Trace sets extracted from a sampler.
    Trace {
        #[arg(long)]
        sampler: String,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
    },
    /// Indices m where the sampler meets ⟨m, f(m)⟩ in time.
    Hits {
        #[arg(long)]
        sampler: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        q: u64,
    },
    /// Dominating-branch adversary h(n) = 1 + max s([0, (n+1)q]).
    Dom {
        #[arg(long)]
        f: String,
        #[arg(long)]
        sampler: String,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        nmax: u64,
    },
    /// Coding functions.
    #[command(subcommand)]
    Codes(CodesCommand),
    /// Weakly-represented tables and program families.
    #[command(subcommand)]
    Weakrep(WeakrepCommand),
    /// The set P of graph prefixes cut at p(n).
    Pset {
        #[arg(long)]
        g: String,
        #[arg(long)]
        manifest: String,
        /// File of `sigma:index` lines.
        #[arg(long)]
        eof: String,
        #[arg(long)]
        checkpoints: String,
    },
}

#[derive(Subcommand)]
enum CodesCommand {
    /// Prefix-free code k(n).
    K {
        #[arg(long)]
        n: u64,
    },
    /// Fixed-width code c_n(x).
    C {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        x: u64,
    },
    /// Cantor pairing (give --x and --y) or unpairing (give --z).
    Pair(PairArgs),
    /// String code (give --sigma) or its inverse (give --code).
    String(StringArgs),
    /// Canonical finite-set index (give --members) or its inverse (give --code).
    Setcode(SetcodeArgs),
}

#[derive(Args)]
struct PairArgs {
    #[arg(long, requires = "y", conflicts_with = "z")]
    x: Option<String>,
    #[arg(long, requires = "x")]
    y: Option<String>,
    #[arg(long, required_unless_present = "x")]
    z: Option<String>,
}

#[derive(Args)]
struct StringArgs {
    #[arg(long, conflicts_with = "code", required_unless_present = "code")]
    sigma: Option<String>,
    #[arg(long)]
    code: Option<String>,
}

#[derive(Args)]
struct SetcodeArgs {
    #[arg(long, conflicts_with = "code", required_unless_present = "code")]
    members: Option<String>,
    #[arg(long)]
    code: Option<String>,
}

#[derive(Subcommand)]
enum WeakrepCommand {
    /// Check a triple file against the four weak-representation conditions.
    Validate {
        #[arg(long)]
        file: String,
        #[arg(long = "table-horizon")]
        table_horizon: u64,
    },
    /// Triple table of one registry program.
    OfProgram {
        #[arg(long)]
        manifest: String,
        #[arg(long)]
        e: usize,
        #[arg(long = "table-horizon", default_value_t = 16)]
        table_horizon: u64,
    },
    /// Interleaved family g_{2e}(n) = f_e(n/2), g_{2e+1} = f_e.
    Interleave {
        #[arg(long)]
        manifest: String,
        #[arg(long, default_value_t = 8)]
        inputs: u64,
    },
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let start = Instant::now();

    let (name, outcome) = commands::dispatch(&cli);
    let run = match outcome {
        Ok(run) => run,
        Err(err) => {
            eprintln!("idensity {name}: {err}");
            return ExitCode::from(2);
        }
    };

    match cli.format {
        Format::Json => {
            let report = ExperimentReport {
                schema_version: SCHEMA_VERSION,
                command: &name,
                argv: &argv,
                parameters: &run.parameters,
                horizons: &run.horizons,
                results: &run.results,
                verdicts: &run.verdicts,
                all_passed: run.passed(),
                wall_time_ms: cli.timing.then(|| start.elapsed().as_millis()),
            };
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            let _ = writeln!(std::io::stdout(), "{text}");
        }
        Format::Csv => {
            let _ = write!(std::io::stdout(), "{}", run.table.render());
            if cli.timing {
                eprintln!("wall_time_ms,{}", start.elapsed().as_millis());
            }
        }
    }

    if run.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
