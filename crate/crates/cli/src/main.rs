//! `designwalk`: generate and certify symmetric designs, evaluate the
//! closed-form search predictions on their incidence graphs, and check
//! them against simulation.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or
//! input errors.

mod commands;
mod output;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use designwalk::design::DEFAULT_SUBSET_BUDGET;
use designwalk::dynamics::DEFAULT_SAMPLES;

use output::Format;
use source::{DesignSource, Family, GammaPolicy, MarkedArgs};

#[derive(Debug, Parser)]
#[command(name = "designwalk", version, about, propagate_version = true)]
struct Cli {
    /// Write results here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Output format; each command has a sensible default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads for sweeps (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Seed for the biregular configuration search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct DesignArg {
    /// `pg:Q`, `paley:Q`, `fano`, `complete:V`, or an incidence file.
    #[arg(long, short = 'd', value_name = "SOURCE")]
    design: DesignSource,
}

#[derive(Debug, Args)]
struct SimArgs {
    /// Coupling: `auto` (row-sum coupling of the detected case),
    /// `published`, or a number.
    #[arg(long, default_value = "auto")]
    gamma: GammaPolicy,
    /// End of the time window; defaults to twice the predicted optimum.
    #[arg(long)]
    tmax: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the incidence file of a generated design.
    Generate {
        #[arg(value_enum)]
        family: Family,
        param: u64,
    },
    /// Certify the design property and the spectral identities.
    #[command(alias = "verify")]
    Validate {
        #[command(flatten)]
        design: DesignArg,
        /// Design strength; defaults to the file header or generator.
        #[arg(long)]
        t: Option<u32>,
        #[arg(long)]
        lambda: Option<u64>,
        /// Cap on the number of point subsets enumerated.
        #[arg(long, default_value_t = DEFAULT_SUBSET_BUDGET)]
        budget: u128,
    },
    /// Closed-form eigenvalues, multiplicities and identity residuals.
    Spectrum {
        #[command(flatten)]
        design: DesignArg,
    },
    /// Closed-form search predictions for a marked set.
    Predict {
        #[command(flatten)]
        design: DesignArg,
        #[command(flatten)]
        marked: MarkedArgs,
    },
    /// Success-probability curve of the walk.
    Simulate {
        #[command(flatten)]
        design: DesignArg,
        #[command(flatten)]
        marked: MarkedArgs,
        #[command(flatten)]
        sim: SimArgs,
        /// Add one column per marked vertex.
        #[arg(long)]
        per_vertex: bool,
    },
    /// Simulated peak against every prediction tier.
    Compare {
        #[command(flatten)]
        design: DesignArg,
        #[command(flatten)]
        marked: MarkedArgs,
        #[command(flatten)]
        sim: SimArgs,
    },
    /// Predictions and simulated peaks across a design family.
    Sweep {
        #[arg(value_enum)]
        family: Family,
        /// Comma-separated family parameters; may be empty.
        #[arg(value_delimiter = ',', num_args = 0..)]
        params: Vec<u64>,
        #[command(flatten)]
        marked: MarkedArgs,
        #[command(flatten)]
        sim: SimArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(commands::Outcome::Success) => ExitCode::SUCCESS,
        Ok(commands::Outcome::VerificationFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
