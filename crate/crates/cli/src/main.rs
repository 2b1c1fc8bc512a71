use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hullflow::attract::CoherenceVariant;
use hullflow::verify::TheoremId;
use hullflow::ClosureConvention;

mod run;

#[derive(Parser, Debug)]
#[command(name = "hullflow", version, about = "Closure hulls, finite flows and their attractors")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Instance file (JSON); `-` reads standard input.
    #[arg(long, global = true)]
    instance: Option<PathBuf>,
    /// Overrides the instance's convention; defaults to full.
    #[arg(long, global = true)]
    convention: Option<ClosureConvention>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// cl_A of a subset.
    Closure {
        system: String,
        /// Comma-separated elements, e.g. `0,2`; empty for ∅.
        #[arg(long, default_value = "")]
        set: String,
    },
    /// One of the eight hull operators, selected by three binary digits jkl.
    Hull {
        system: String,
        #[arg(long)]
        kind: String,
        #[arg(long, default_value = "")]
        set: String,
    },
    Elementarize {
        system: String,
    },
    Classify {
        system: String,
    },
    InvariantTopology {
        #[arg(long)]
        flow: String,
    },
    Orbits {
        #[arg(long)]
        flow: String,
    },
    /// Free attractors of a flow relative to a covering (`powerset` for 2^Y).
    Attractors {
        #[arg(long)]
        flow: String,
        #[arg(long, default_value = "powerset")]
        covering: String,
        #[arg(long, default_value = "conventional")]
        variant: CoherenceVariant,
        #[arg(long)]
        cadence: Option<String>,
        #[arg(long)]
        coherence: Option<String>,
    },
    /// Attractors of a list of topologies.
    TopoAttractors {
        #[arg(required = true)]
        topologies: Vec<String>,
        #[arg(long, default_value = "powerset")]
        coherence: String,
        #[arg(long, default_value = "powerset")]
        cadence: String,
    },
    Rooms {
        #[arg(long)]
        flow: String,
        #[arg(long)]
        covering: String,
    },
    CantorCheck {
        #[arg(long)]
        function: String,
        #[arg(long)]
        system: String,
    },
    Explication {
        #[arg(long)]
        function: String,
        #[arg(long)]
        system: String,
    },
    /// Checks one theorem on the instance.
    Verify {
        theorem: TheoremId,
    },
    /// Checks a theorem over all or sampled instances of one ground size.
    Sweep {
        theorem: TheoremId,
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = hullflow::verify::MAX_COUNTEREXAMPLES)]
        max_counterexamples: usize,
        #[arg(long)]
        jobs: Option<usize>,
        /// Adds elapsed_ms to the report (makes output time-dependent).
        #[arg(long)]
        timing: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    match run::run(&cli, echo) {
        Ok((report, code)) => {
            match cli.global.format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
