mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use superrough::super_rough::Gate;

#[derive(Parser)]
#[command(
    name = "superrough",
    version,
    about = "Rough algebras, tolerances, convex sublattices and super rough set-algebras"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Global {
    /// Largest rough-algebra or input lattice carrier to build.
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u32).range(1..))]
    pub cap_lattice: u32,
    /// Largest rough-algebra carrier whose convex sublattices are enumerated.
    #[arg(long, global = true, env = "SUPERROUGH_CAP_CO", default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..))]
    pub cap_co: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

/// Where a lattice comes from.
#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
pub struct LatticeSource {
    /// Lattice JSON: `{"elements": [...], "leq": [[a, b], ...], "covers": bool}`.
    #[arg(long)]
    pub lattice: Option<PathBuf>,
    /// The chain with N elements.
    #[arg(long)]
    pub chain: Option<usize>,
    /// The Boolean lattice with 2^K elements.
    #[arg(long)]
    pub boolean: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Prerough,
    SetAlgebra,
    SuperRough,
    Blocks,
    Conditions,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GateArg {
    Full,
    Reconstructive,
}

impl From<GateArg> for Gate {
    fn from(g: GateArg) -> Self {
        match g {
            GateArg::Full => Gate::Full,
            GateArg::Reconstructive => Gate::Reconstructive,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Lower and upper approximations, rough inclusion and betweenness queries.
    Approx {
        #[arg(long)]
        space: PathBuf,
        /// Comma-separated object ids; "" is the empty set.
        #[arg(long)]
        lower: Vec<String>,
        #[arg(long)]
        upper: Vec<String>,
        /// Two sets A B: are they roughly equal?
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        rough_equal: Option<Vec<String>>,
        /// Two sets A B: is A roughly included in B?
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        rough_includes: Option<Vec<String>>,
        /// Two sets B C: all A with lower(A) ⊆ B and C ⊆ upper(A), up to rough equality.
        #[arg(long, num_args = 2, value_names = ["B", "C"])]
        between: Option<Vec<String>>,
    },
    /// Build every structure of a space and write the artifacts.
    Build {
        #[arg(long)]
        space: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Check a clause set; exits 5 when any clause fails.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, conflicts_with_all = ["model", "lattice"])]
        space: Option<PathBuf>,
        /// Model JSON, or any JSON object with a `model` field.
        #[arg(long, conflicts_with = "lattice")]
        model: Option<PathBuf>,
        #[arg(long)]
        lattice: Option<PathBuf>,
        /// Check a theory file instead of a built-in suite.
        #[arg(long)]
        theory: Option<PathBuf>,
        /// Read every conclusion as weak equality.
        #[arg(long)]
        weak: bool,
        /// Also write the report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover an approximation space from a set-algebra model.
    Represent {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = GateArg::Reconstructive)]
        gate: GateArg,
        /// Directory for space.json and certificate.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The lattice of convex sublattices of a lattice.
    Co {
        #[command(flatten)]
        source: LatticeSource,
    },
    /// Coapproximability tolerance and its blocks.
    Blocks {
        #[arg(long)]
        space: PathBuf,
    },
    /// Lattice conditions on one lattice or a seeded random sweep.
    Conditions {
        #[arg(long, conflicts_with_all = ["chain", "boolean", "sweep"])]
        lattice: Option<PathBuf>,
        #[arg(long, conflicts_with_all = ["boolean", "sweep"])]
        chain: Option<usize>,
        #[arg(long, conflicts_with = "sweep")]
        boolean: Option<usize>,
        /// Number of random lattices to sample.
        #[arg(long)]
        sweep: Option<usize>,
        /// Largest sampled lattice.
        #[arg(long, default_value_t = 8, requires = "sweep")]
        max_size: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let result = match cli.command {
        Command::Approx {
            space,
            lower,
            upper,
            rough_equal,
            rough_includes,
            between,
        } => commands::approx(g, &space, &lower, &upper, rough_equal, rough_includes, between),
        Command::Build { space, out } => commands::build(g, &space, &out),
        Command::Verify {
            suite,
            space,
            model,
            lattice,
            theory,
            weak,
            out,
        } => {
            let input = input::VerifyInput::new(space, model, lattice);
            commands::verify(g, suite, input, theory.as_deref(), weak, out.as_deref())
        }
        Command::Represent { model, gate, out } => commands::represent(g, &model, gate.into(), out.as_deref()),
        Command::Co { source } => commands::co(g, &source),
        Command::Blocks { space } => commands::blocks(g, &space),
        Command::Conditions {
            lattice,
            chain,
            boolean,
            sweep,
            max_size,
        } => {
            let source = LatticeSource {
                lattice,
                chain,
                boolean,
            };
            commands::conditions(g, &source, sweep, max_size)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
