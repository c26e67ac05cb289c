mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::CommandError;

/// Cluster-seed mutation, polytope transport and unimodular classification
/// for the flag varieties of SL3 and SL4.
#[derive(Parser, Debug)]
#[command(name = "flagpoly", version)]
struct Cli {
    /// Emit the run report as JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Explore the exchange graph from the initial seed.
    ExchangeGraph {
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(3..=4))]
        n: u8,
        /// Write the graph as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the polytope at one seed of the SL4 exchange graph.
    Polytope {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=13))]
        seed: u8,
        #[arg(long, value_enum, default_value_t = Format::Matrix)]
        format: Format,
    },
    /// Check every computed result against the reference data.
    VerifyAll {
        /// Run only the named check (repeatable).
        #[arg(long)]
        only: Vec<String>,
    },
    /// Sort the 14 polytopes into unimodular equivalence classes.
    Classify {
        /// Write the classification with witness maps as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also list the orbits of the two involutions.
        #[arg(long)]
        orbits: bool,
        /// Also list the seeds whose polytope has exactly 12 facets.
        #[arg(long)]
        twelve_facets: bool,
    },
    /// Enumerate reduced words of the longest permutation.
    ReducedWords {
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(2..=5))]
        n: u8,
    },
    /// Unimodular invariants of one polytope.
    Fingerprint {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=13))]
        seed: u8,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Matrix,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::ExchangeGraph { n, out } => commands::exchange_graph(n as usize, out.as_deref()),
        Command::Polytope { seed, format } => commands::polytope(seed as usize, format == Format::Json),
        Command::VerifyAll { only } => commands::verify_all(&only),
        Command::Classify {
            out,
            orbits,
            twelve_facets,
        } => commands::classify(out.as_deref(), orbits, twelve_facets),
        Command::ReducedWords { n } => commands::reduced_words(n as usize),
        Command::Fingerprint { seed } => commands::fingerprint(seed as usize),
    };
    match result {
        Ok((report, text)) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                if !text.is_empty() {
                    println!("{text}");
                }
                println!("{}", report.summary());
            }
            if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) }
        }
        Err(CommandError::Usage(msg)) => {
            eprintln!("flagpoly: {msg}");
            ExitCode::from(2)
        }
        Err(CommandError::Mismatch(msg)) => {
            eprintln!("flagpoly: {msg}");
            ExitCode::from(1)
        }
    }
}
