//! Command-line front end for `latgenus`.

pub mod commands;
pub mod report;
pub mod verify;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Budget {
    /// Seconds to minutes on one core.
    Desk,
    /// Adds the large Leech enumerations and exhaustive scans.
    Full,
}

impl Budget {
    pub fn name(self) -> &'static str {
        match self {
            Budget::Desk => "desk",
            Budget::Full => "full",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    /// `(a . w)^m` as a constant factor.
    Constant,
    /// `(a . z)^m` per minimal vector.
    PerVector,
}

/// Exact invariants of unimodular lattices.
#[derive(Debug, Parser)]
#[command(name = "latgenus", version)]
pub struct Cli {
    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Largest number of vectors a collecting query may hold.
    #[arg(long, global = true)]
    pub memory_cap: Option<usize>,
    #[arg(long, value_enum, default_value = "desk", global = true)]
    pub budget: Budget,
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Exit with 3 when items were skipped for budget.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Catalog file replacing the shipped one.
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
    /// Directory for cached short-vector censuses.
    #[arg(long, env = "LATGENUS_CACHE_DIR", global = true)]
    pub cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Inspect the lattice catalog.
    Zoo {
        #[command(subcommand)]
        action: ZooAction,
    },
    /// Theta series coefficients a_0..a_up_to.
    Theta {
        lattice: String,
        #[arg(long, default_value_t = 4)]
        up_to: i64,
    },
    /// eta(L, w, a, m).
    Eta {
        lattice: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, default_value_t = 0)]
        m: u32,
        #[arg(long, value_enum, default_value = "constant")]
        convention: ConventionArg,
    },
    /// Certificate f_n(L) >= value from one vector.
    FCert {
        lattice: String,
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// Search for f_n certificates.
    FSearch {
        lattice: String,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 10)]
        norm_cap: i64,
        /// Extra candidate vectors.
        #[arg(long, allow_hyphen_values = true)]
        w: Vec<String>,
        #[arg(long, default_value_t = 4096)]
        max_classes: usize,
        /// Tabulate every class of L/2L (rank-gated by the budget).
        #[arg(long)]
        exhaustive: bool,
    },
    /// delta(L) from the characteristic coset.
    Delta { lattice: String },
    /// Combined lower bound on g4.
    G4 {
        lattice: String,
        /// Vectors to certify f_2, f_4 and f_8 with.
        #[arg(long, allow_hyphen_values = true)]
        w: Vec<String>,
    },
    /// Identify the orthogonal complement of a class (a|b_1,...,b_n).
    Complement { class: String },
    /// Adjunction genus of a class.
    Genus { class: String },
    /// Plumbing embeddings.
    Plumbing {
        #[command(subcommand)]
        action: PlumbingAction,
    },
    /// Munoz-ring reductions.
    Munoz {
        #[command(subcommand)]
        action: MunozAction,
    },
    /// Run every reproduction check.
    VerifyPaper,
}

#[derive(Debug, Subcommand)]
pub enum ZooAction {
    List,
    Check { name: String },
}

#[derive(Debug, Subcommand)]
pub enum PlumbingAction {
    Verify {
        file: Option<PathBuf>,
        /// Verify the shipped plumbing files.
        #[arg(long)]
        builtin: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum MunozAction {
    Sweep {
        #[arg(long, default_value_t = 128)]
        rmax: usize,
        /// Powers of two, comma separated.
        #[arg(long = "mod", value_delimiter = ',', default_value = "4,8")]
        moduli: Vec<u64>,
    },
    Table {
        #[arg(long, default_value_t = 128)]
        gmax: usize,
    },
}

/// Exit code for invalid input or configuration.
pub const EXIT_CONFIG: i32 = 2;

/// Runs the parsed command, writing to stdout and stderr, and returns the
/// process exit code.
pub fn run(cli: Cli) -> i32 {
    match commands::execute(&cli) {
        Ok(out) => {
            print!("{}", out.render(cli.format));
            out.code
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_CONFIG
        }
    }
}
