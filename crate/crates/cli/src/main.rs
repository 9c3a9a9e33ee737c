//! `clusterx`: batch verification and enumeration for finite-type X-seed patterns.
//!
//! Exit status: 0 when every check passes, 1 on a counterexample or count
//! mismatch, 2 on resource limits, I/O failures and bad arguments.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "clusterx", version, about = "Exact census of X-variables in finite-type cluster patterns")]
pub struct Cli {
    #[command(flatten)]
    pub run: RunOptions,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunOptions {
    /// Worker threads for the parallel stages (default: logical cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output format; each command documents which formats it accepts.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Permit the E7 and E8 universal runs (minutes to hours).
    #[arg(long, global = true)]
    pub allow_long: bool,
    /// Seed for the random point configurations of `verify geometric`.
    #[arg(long, global = true, default_value_t = 1)]
    pub rng_seed: u64,
    /// Stop a search after this many nodes.
    #[arg(long, global = true)]
    pub max_nodes: Option<usize>,
    /// Stop a search after this many seconds.
    #[arg(long, global = true)]
    pub max_seconds: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Table,
}

#[derive(Args, Debug, Clone)]
pub struct TypeArgs {
    /// Dynkin family: A, B, C, D, E, F or G.
    #[arg(long = "type")]
    pub family: String,
    #[arg(long)]
    pub rank: usize,
}

#[derive(Args, Debug, Clone)]
pub struct SurfaceArgs {
    /// plain, punctured, folded-plain or folded-punctured.
    #[arg(long)]
    pub surface: String,
    /// Number of marked points on the boundary.
    #[arg(long)]
    pub n: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count the distinct X-variables of a Dynkin-type pattern.
    CountXvars {
        #[command(flatten)]
        ty: TypeArgs,
        /// universal or principal.
        #[arg(long, default_value = "universal")]
        semifield: String,
        /// Compare with the built-in closed forms and table values.
        #[arg(long)]
        expect_paper: bool,
    },
    /// Run one of the verification suites.
    #[command(subcommand)]
    Verify(Verify),
    /// Write graphs, X-variables or quadrilateral censuses.
    #[command(subcommand)]
    Emit(Emit),
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// Quadrilaterals with diagonal against X-variables of the universal pattern.
    Bijection {
        #[command(flatten)]
        ty: TypeArgs,
    },
    /// Enumerated quadrilaterals against the closed-form counts.
    QuadCounts {
        #[command(flatten)]
        surface: SurfaceArgs,
    },
    /// Pairwise distinctness of the Plücker realizations of the X-variables.
    Geometric {
        #[command(flatten)]
        ty: TypeArgs,
        /// Random point configurations tried after the structured ones.
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Ordered exchangeable pairs of cluster variables against the X-variable count.
    Pairs {
        #[command(flatten)]
        ty: TypeArgs,
    },
    /// Exchange graphs of the coefficient-free A-pattern and the universal X-pattern.
    ExchangeGraphCoincide {
        #[command(flatten)]
        ty: TypeArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum Emit {
    /// Exchange graph as DOT or versioned JSON.
    ExchangeGraph {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, default_value = "universal")]
        semifield: String,
    },
    /// Flip graph of tagged triangulations as DOT.
    FlipGraph {
        #[command(flatten)]
        surface: SurfaceArgs,
    },
    /// The distinct X-variables, canonically ordered.
    Xvars {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, default_value = "universal")]
        semifield: String,
    },
    /// Quadrilaterals with diagonal and the number of triangulations containing each.
    Quads {
        #[command(flatten)]
        surface: SurfaceArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.run.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(outcome) => ExitCode::from(outcome as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
