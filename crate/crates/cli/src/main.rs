//! `e6`: build, verify and export the compact E6 basis and its Haar measure.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{Outcome, Tolerances};

#[derive(Debug, Parser)]
#[command(name = "e6", version, about = "Compact E6 from the exceptional Jordan algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: RunConfig,
}

#[derive(Debug, Clone, clap::Args)]
pub struct RunConfig {
    /// Data file; data goes to stdout when omitted.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Machine-readable JSON summary.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// NAME=VALUE, repeatable. Names: gram, antisymmetry, closure, jacobi,
    /// oracle, adjoint, determinant, group, convergence.
    #[arg(long = "tolerance", value_name = "NAME=VALUE", global = true)]
    pub tolerances: Vec<String>,
    #[arg(long, value_enum, default_value_t = FormArg::Compact, global = true)]
    pub form: FormArg,
    /// Worker threads for the parallel kernels (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for the Cartan search and random test points.
    #[arg(long, default_value_t = 11, global = true)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Binary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Compact,
    Split,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Structure,
    Orthonormality,
    Oracle,
    Adjoint,
    Determinants,
    Roots,
    Group,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChainArg {
    /// ω(x24, x25, x26); takes 3 coordinates.
    Omega,
    /// The full 26-factor coset chain; takes 26 coordinates.
    Coset,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the 78 generators and write their 27×27 matrices.
    Basis,
    /// Compute the structure constants s_IJK (I<J<K).
    StructureConstants,
    /// Run the invariant suites; exit 1 if any fails.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Random points for the determinant and group suites.
        #[arg(long, default_value_t = 100)]
        points: usize,
    },
    /// Roots, simple roots and Cartan matrix.
    Roots,
    /// Vol(E6), the measure integral and the implied Vol(F4).
    Volume {
        /// Gauss–Legendre order; the integral is also evaluated at twice this order.
        #[arg(long, default_value_t = 32)]
        order: usize,
    },
    /// Haar density at a point (default: centre of the coordinate box).
    Density {
        /// x1,...,x26
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Option<Vec<f64>>,
    },
    /// Group element from an exponential chain.
    Element {
        #[arg(long, value_enum, default_value_t = ChainArg::Omega)]
        chain: ChainArg,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        coords: Vec<f64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tolerances = match Tolerances::parse(&cli.config.tolerances) {
        Ok(t) => t,
        Err(e) => return fail(&e),
    };
    if let Some(n) = cli.config.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: INVALID_ARGUMENT: {e}");
            return ExitCode::from(2);
        }
    }
    let ctx = commands::Context::new(cli.config, tolerances);
    let result = match cli.command {
        Command::Basis => ctx.basis(),
        Command::StructureConstants => ctx.structure_constants(),
        Command::Verify { suite, points } => ctx.verify(suite, points),
        Command::Roots => ctx.roots(),
        Command::Volume { order } => ctx.volume(order),
        Command::Density { point } => ctx.density(point),
        Command::Element { chain, coords } => ctx.element(chain, &coords),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => fail(&e),
    }
}

fn fail(e: &commands::CliError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code())
}
