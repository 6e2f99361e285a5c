//! `grslice`: batch front end for slice generators, reducedness certificates,
//! coweight calculus and Poisson-bracket verification.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use grslice_core::groebner::Budget;
use grslice_core::poisson::{DualAction, PoissonConfig};

use output::Format;

/// Exit codes shared by all commands.
pub mod exit {
    pub const OK: u8 = 0;
    pub const USAGE: u8 = 2;
    pub const CERTIFICATE: u8 = 3;
    pub const LATTICE: u8 = 4;
    pub const VERIFICATION: u8 = 5;
}

#[derive(Parser, Debug)]
#[command(name = "grslice", version, about = "Exact algebra for affine Grassmannian slices")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the kn determinant-coefficient generators of the (n, k) slice ideal.
    Generators(SizeArgs),
    /// Certify complete intersection and reducedness of the (n, k) slice.
    Certify(CertifyArgs),
    /// Coweight lattice operations for SL_n (coroot coordinates).
    #[command(subcommand)]
    Lattice(LatticeCommand),
    /// Verify Poisson identities on the truncated group chart.
    #[command(subcommand, name = "poisson-verify")]
    PoissonVerify(PoissonCommand),
}

#[derive(Args, Debug, Clone)]
struct SizeArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
}

/// Gröbner budget; defaults can be overridden from the environment.
#[derive(Args, Debug, Clone)]
struct BudgetArgs {
    /// Maximum number of S-pair reductions per basis.
    #[arg(long, env = "GRSLICE_MAX_PAIRS", default_value_t = Budget::default().max_pair_reductions)]
    max_pairs: u64,
    /// Maximum degree of an S-polynomial.
    #[arg(long, env = "GRSLICE_MAX_DEGREE", default_value_t = Budget::default().max_degree)]
    max_degree: u32,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget { max_pair_reductions: self.max_pairs, max_degree: self.max_degree, time_limit: None }
    }
}

#[derive(Args, Debug)]
struct CertifyArgs {
    #[arg(long, required_unless_present = "batch")]
    n: Option<usize>,
    #[arg(long, required_unless_present = "batch")]
    k: Option<usize>,
    /// Comma-separated `n:k` instances, run in parallel and reported in input order.
    #[arg(long, conflicts_with_all = ["n", "k"])]
    batch: Option<String>,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Cap on the number of Jacobian minors in the singular-locus stage.
    #[arg(long)]
    minor_cap: Option<u64>,
    /// Skip the smooth-point search.
    #[arg(long)]
    no_smooth_point: bool,
    /// Seed for the smooth-point search.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Add wall-clock time to the report (output is then not reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum LatticeCommand {
    /// Coordinatewise minimum of two coweights.
    Meet {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Closure of seeds under meets and integral dominant summands.
    Closure {
        #[arg(long)]
        n: usize,
        /// Semicolon-separated coweights.
        #[arg(long)]
        seeds: String,
        /// Height bound for generated elements.
        #[arg(long, default_value_t = 12)]
        bound: i64,
    },
    /// Dimension of the orbit of a dominant coweight.
    Dim {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Sample the minimum of triangle functions with the given apexes.
    Triangle {
        #[arg(long)]
        n: usize,
        /// Apex `a,b`; repeat for a pointwise minimum.
        #[arg(long, required = true)]
        apex: Vec<String>,
    },
}

#[derive(Args, Debug, Clone)]
struct ConventionArgs {
    /// Global sign of the generator bracket.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true, value_parser = parse_sign)]
    sign: i8,
    /// Action of the Lie algebra on dual vectors.
    #[arg(long, value_enum, default_value_t = DualArg::Contragredient)]
    dual_action: DualArg,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum DualArg {
    Contragredient,
    Transpose,
}

impl ConventionArgs {
    fn config(&self) -> PoissonConfig {
        let dual_action = match self.dual_action {
            DualArg::Contragredient => DualAction::Contragredient,
            DualArg::Transpose => DualAction::Transpose,
        };
        PoissonConfig { sign: self.sign, dual_action }
    }
}

fn parse_sign(s: &str) -> Result<i8, String> {
    match s {
        "1" | "+1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err("sign must be 1 or -1".to_string()),
    }
}

#[derive(Subcommand, Debug)]
enum PoissonCommand {
    /// Antisymmetry, Leibniz, Jacobi and centrality of det coefficients.
    Axioms {
        #[arg(long)]
        n: usize,
        #[arg(long = "N")]
        truncation: usize,
        /// Sample this many tuples per axiom instead of checking all.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        conventions: ConventionArgs,
    },
    /// Bracket of two minor series against the r-matrix formula.
    Minors {
        #[arg(long)]
        n: usize,
        #[arg(long = "N")]
        truncation: usize,
        /// Rows and columns of the first minor as `rows|cols`, 1-based;
        /// all pairs of 1×1 minors when omitted.
        #[arg(long, requires = "second")]
        first: Option<String>,
        #[arg(long, requires = "first")]
        second: Option<String>,
        #[command(flatten)]
        conventions: ConventionArgs,
    },
    /// Bracket of `f_j^(k+1)` with the highest-row minors.
    LemmaF {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        kk: usize,
        #[arg(long = "N")]
        truncation: usize,
        /// Minor size; all sizes when omitted.
        #[arg(long)]
        i: Option<usize>,
        #[command(flatten)]
        conventions: ConventionArgs,
    },
    /// Eliminated threshold ideal versus the determinant ideal for μ = 0.
    IdealCompare {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long = "N")]
        truncation: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Generators(args) => commands::generators(&args, cli.format),
        Command::Certify(args) => commands::certify(&args, cli.format),
        Command::Lattice(cmd) => commands::lattice(&cmd, cli.format),
        Command::PoissonVerify(cmd) => commands::poisson(&cmd, cli.format),
    };
    ExitCode::from(code)
}
