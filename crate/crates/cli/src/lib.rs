//! Command-line front end for the copic solvers: instance files, solver
//! dispatch, verification against the brute-force oracles and generation.

pub mod commands;
pub mod document;
pub mod error;
pub mod generate;
pub mod solve;

use clap::{Parser, Subcommand};

use commands::Report;
use error::CliError;
use generate::{CostRange, FamilyToken, GenOptions, Structure};
use solve::Caps;

#[derive(Debug, Parser)]
#[command(
    name = "copic",
    version,
    about = "Solve and analyse combinatorial problems with interaction costs"
)]
pub struct Cli {
    /// Enumeration cap for the brute-force oracles and candidate lists.
    #[arg(long, global = true)]
    pub cap: Option<u64>,
    /// Seed for `gen`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve an instance file.
    Solve {
        /// Instance JSON file
        #[arg(long)]
        instance: String,
        /// `auto` or one of: bruteforce, side-enum, diag-unconstrained, diag-one-side,
        /// diag-uniform, diag-uniform-path, diag-paths, diag-matroid, rank1, rankr.
        #[arg(long, default_value = "auto")]
        solver: String,
        /// Re-solve by brute force and fail on a different objective.
        #[arg(long)]
        verify: bool,
    },
    /// Decide whether the interaction term can be linearized.
    Lincheck {
        /// Instance JSON file
        #[arg(long)]
        instance: String,
        /// structural, bruteforce or both.
        #[arg(long, default_value = "structural")]
        method: String,
    },
    /// Print a random instance document.
    Gen {
        /// Two of: unconstrained, uniform:K, partition:SIZE:QUOTA, complete:V, pm:P,
        /// stpath-complete:V, dag:V.
        #[arg(long, num_args = 2, value_names = ["F1", "F2"], required = true)]
        families: Vec<String>,
        /// First ground set size (implied by most families)
        #[arg(long)]
        m: Option<usize>,
        /// Second ground set size (implied by most families)
        #[arg(long)]
        n: Option<usize>,
        /// Integer cost range `lo:hi`
        #[arg(long, default_value = "-9:9", allow_hyphen_values = true)]
        cost_range: String,
        /// random, rank:R, diagonal or linearizable.
        #[arg(long, default_value = "random")]
        structure: String,
    },
    /// Solve a k-cardinality directed cut problem through its COPIC form.
    ReduceCut {
        /// k-cardinality cut JSON file
        #[arg(long)]
        instance: String,
        /// bruteforce or side-enum
        #[arg(long, default_value = "bruteforce")]
        solver: String,
        /// Compare against direct cut enumeration.
        #[arg(long)]
        verify: bool,
    },
}

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    let caps = Caps::new(cli.cap);
    match &cli.command {
        Command::Solve {
            instance,
            solver,
            verify,
        } => commands::cmd_solve(instance, solver, *verify, caps),
        Command::Lincheck { instance, method } => commands::cmd_lincheck(instance, method, caps),
        Command::Gen {
            families,
            m,
            n,
            cost_range,
            structure,
        } => {
            let opts = GenOptions {
                families: [
                    families[0].parse::<FamilyToken>()?,
                    families[1].parse::<FamilyToken>()?,
                ],
                m: *m,
                n: *n,
                range: cost_range.parse::<CostRange>()?,
                structure: structure.parse::<Structure>()?,
                seed: cli.seed,
            };
            commands::cmd_gen(&opts)
        }
        Command::ReduceCut {
            instance,
            solver,
            verify,
        } => commands::cmd_reduce_cut(instance, solver, *verify, caps),
    }
}

/// Runs a parsed command line on a pool of `--threads` workers.
pub fn run(cli: &Cli) -> Report {
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            return Report {
                notes: vec![format!("cannot start worker pool: {e}")],
                code: 1,
                ..Report::default()
            }
        }
    };
    pool.install(|| match dispatch(cli) {
        Ok(r) => r,
        Err(e) => Report {
            stdout: String::new(),
            notes: vec![format!("error: {e}")],
            code: e.exit_code(),
        },
    })
}
