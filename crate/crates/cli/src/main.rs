use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod format;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "erasure", version, about = "Recoverable qubit coherence under steering")]
struct Cli {
    /// Seed for every random draw; echoed in the output.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScaleArg {
    Quick,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReadingArg {
    Adopted,
    Traced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StateKind {
    Haar,
    Bell,
    Ghz,
    Mzi,
    Eraser,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Every coherence measure of a state file, as JSON.
    Measures { path: PathBuf },

    /// Monte-Carlo Haar average of C_a next to its closed form.
    Ensemble {
        #[arg(long)]
        a: usize,
        #[arg(long = "K")]
        k: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        /// `traced` (a = 1 only): sample (2, 2, K) and compare at 2K.
        #[arg(long, value_enum, default_value_t = ReadingArg::Adopted)]
        reading: ReadingArg,
    },

    /// Quantum-eraser sweep of (gamma, c1, c2).
    Mzi {
        #[arg(long, default_value_t = 0.0)]
        gamma_start: f64,
        #[arg(long, default_value_t = 1.0)]
        gamma_end: f64,
        #[arg(long, default_value_t = 0.1)]
        gamma_step: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi: f64,
        /// Overlap of the environment's own which-path marker.
        #[arg(long, default_value_t = 1.0)]
        env_overlap: f64,
        /// Put the gamma marker in the environment, out of the steering party's reach.
        #[arg(long)]
        marker_in_env: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },

    /// Brute-force search for the best measurement on A.
    Steer {
        path: PathBuf,
        #[arg(long, default_value_t = 20_000)]
        budget: usize,
    },

    /// Write a state file to stdout.
    Export {
        #[arg(long, value_enum)]
        kind: StateKind,
        #[arg(long, default_value_t = 2)]
        alice: usize,
        #[arg(long, default_value_t = 2)]
        env: usize,
        #[arg(long, default_value_t = 0.5)]
        gamma: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi: f64,
    },

    /// Run the validation suites; exit 1 if any fails.
    Selftest {
        #[arg(long, value_enum, default_value_t = ScaleArg::Quick)]
        scale: ScaleArg,
    },

    /// Look for states with equal conditional environment data but different C3.
    ProbeC3 {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command, cli.seed) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if outcome.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
