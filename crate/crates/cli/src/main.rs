mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qchoice::{Share, DEFAULT_MAX_ITEMS, DEFAULT_SIZE_LIMIT};

use crate::report::Failure;

/// Check, measure and synthesize majoritarian representations of
/// quasi-choice correspondences.
#[derive(Parser, Debug)]
#[command(name = "qchoice", version)]
struct Cli {
    /// Print a versioned JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads (results never depend on this).
    #[arg(long, global = true, env = "QCHOICE_THREADS")]
    threads: Option<usize>,

    /// Largest grand set accepted from input files.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ITEMS)]
    max_n: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Test axioms alpha and gamma and classify rationalizability.
    Check { file: PathBuf },
    /// Liberal and democratic numbers with their bounds.
    Numbers(NumbersArgs),
    /// Build a ballot family representing the choice at a share.
    Synth {
        file: PathBuf,
        /// Share p/q in [0, 1), or 0.
        #[arg(long)]
        share: Share,
        /// Ballot file to write (stdout when absent).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Refuse families larger than this.
        #[arg(long, default_value_t = DEFAULT_SIZE_LIMIT)]
        max_ballots: u64,
    },
    /// Check a ballot family against a choice at a share.
    Verify {
        file: PathBuf,
        #[arg(long)]
        ballots: PathBuf,
        #[arg(long)]
        share: Share,
    },
    /// Write generated choices (and known families) to files.
    Gen(GenArgs),
    /// Sperner and asymptotic bounds, for a choice file or a grand-set size.
    Bounds {
        #[arg(required_unless_present = "n", conflicts_with = "n")]
        file: Option<PathBuf>,
        /// Number of items.
        #[arg(long)]
        n: Option<u64>,
        #[command(flatten)]
        dem: DemArgs,
    },
}

#[derive(Args, Debug)]
struct DemArgs {
    /// Give up on the democratic search after this many seconds.
    #[arg(long)]
    dem_timeout: Option<f64>,
    /// Give up on the democratic search after this many search nodes.
    #[arg(long)]
    dem_node_cap: Option<u64>,
    /// Largest grand set the democratic search accepts.
    #[arg(long, default_value_t = 4)]
    dem_max_n: usize,
}

#[derive(Args, Debug)]
struct NumbersArgs {
    file: PathBuf,
    #[command(flatten)]
    dem: DemArgs,
    /// Cross-check with the brute-force oracles (3 items at most).
    #[arg(long)]
    oracle: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenKind {
    /// c_{n,k} on the items 0..=n.
    Cnk,
    /// A named example.
    Fixture,
    /// A random choice satisfying alpha.
    Random,
}

#[derive(Args, Debug)]
struct GenArgs {
    kind: GenKind,
    /// Fixture name (for `fixture`).
    name: Option<String>,
    /// c_{n,k} parameter n (grand set of n+1 items), or item count for `random`.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random: include a linear-order ballot so every menu is answered.
    #[arg(long)]
    decisive: bool,
    /// Random: any contractive table, alpha not enforced.
    #[arg(long, conflicts_with = "decisive")]
    arbitrary: bool,
    /// Also write the known ballot families next to the output.
    #[arg(long, requires = "output")]
    with_families: bool,
    /// Choice file to write (stdout when absent).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // Fails only if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let json = cli.json;
    let result = commands::run(&cli);
    match result {
        Ok(report) => {
            report.emit(json);
            ExitCode::from(report.exit_code())
        }
        Err(failure) => {
            failure.emit(json);
            ExitCode::from(failure.exit_code())
        }
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Refused(_) => 1,
        }
    }
}
