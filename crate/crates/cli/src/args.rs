use std::path::PathBuf;

use altbc::boundary_layer::Parity;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "altbc", version, about = "Disk Laplacian eigenvalues with alternating Dirichlet/Neumann arcs")]
#[command(args_override_self = true, allow_negative_numbers = true)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format. CSV is available for `field` only.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for the direct solver's interior normalization points.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Tolerance: residual re-check bound, singular-value threshold for
    /// `converge`, and the constant check bound for `layer-check`.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// JSON file of flag values; flags given on the command line win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectrum of the limiting Robin problem.
    Limiting(LimitingArgs),
    /// Asymptotic eigenvalue series for one branch.
    Asym(AsymArgs),
    /// Convergence study of the series against the direct solver.
    Converge(ConvergeArgs),
    /// Coupling at which two Bessel orders share a Robin root.
    #[command(name = "degenerate-a")]
    DegenerateA(DegenerateArgs),
    /// Composite eigenfunction sampled on a polar grid.
    Field(FieldArgs),
    /// Boundary-layer constants and spot checks.
    #[command(name = "layer-check")]
    LayerCheck,
}

#[derive(Debug, Args)]
pub struct LimitingArgs {
    /// Limiting Robin coupling, A >= 0.
    #[arg(long = "A")]
    pub a: f64,
    /// Upper end of the spectrum window.
    #[arg(long = "lambda-max")]
    pub lambda_max: f64,
}

#[derive(Debug, Args)]
pub struct Geometry {
    /// Number of Dirichlet arcs (even, at least 4).
    #[arg(long = "N")]
    pub n_arcs: u32,
    /// Arc half-length in units of eps.
    #[arg(long)]
    pub eta: f64,
    /// Limiting Robin coupling, A >= 0.
    #[arg(long = "A")]
    pub a: f64,
}

#[derive(Debug, Args)]
pub struct AsymArgs {
    #[command(flatten)]
    pub geometry: Geometry,
    /// Bessel order.
    #[arg(long = "n")]
    pub n: u32,
    /// Root index, counting from 1.
    #[arg(long = "k", default_value_t = 1)]
    pub k: u32,
    /// Series order: 0, 3 or 4.
    #[arg(long, default_value_t = 4)]
    pub order: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MuSchemeArg {
    #[value(name = "mu=0", alias = "zero")]
    Zero,
    #[value(name = "mu=c*eps", alias = "linear")]
    Linear,
    #[value(name = "eta=const", alias = "eta-const")]
    EtaConst,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    /// Limiting Robin coupling, A >= 0.
    #[arg(long = "A")]
    pub a: f64,
    #[arg(long = "n", default_value_t = 0)]
    pub n: u32,
    /// Root index, counting from 1.
    #[arg(long = "k", default_value_t = 1)]
    pub k: u32,
    /// Comma-separated ascending even arc counts, at least three.
    #[arg(long = "N-list", value_delimiter = ',', required = true)]
    pub n_list: Vec<u32>,
    #[arg(long = "mu-scheme", value_enum, default_value = "mu=0")]
    pub mu_scheme: MuSchemeArg,
    /// Constant c of the mu = c eps scheme.
    #[arg(long)]
    pub c: Option<f64>,
    /// Fixed eta of the eta=const scheme.
    #[arg(long)]
    pub eta: Option<f64>,
}

#[derive(Debug, Args)]
pub struct DegenerateArgs {
    /// Bessel order.
    #[arg(long = "n")]
    pub n: u32,
    /// Second Bessel order.
    #[arg(long = "m")]
    pub m: u32,
    /// Bracket on t = sqrt(lambda).
    #[arg(long = "t-lo")]
    pub t_lo: f64,
    #[arg(long = "t-hi")]
    pub t_hi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Cos,
    Sin,
    Radial,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Cos => Parity::Cos,
            ParityArg::Sin => Parity::Sin,
            ParityArg::Radial => Parity::Radial,
        }
    }
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    #[command(flatten)]
    pub geometry: Geometry,
    /// Bessel order.
    #[arg(long = "n")]
    pub n: u32,
    /// Root index, counting from 1.
    #[arg(long = "k", default_value_t = 1)]
    pub k: u32,
    /// Angular dependence; defaults to radial for n = 0 and cos otherwise.
    #[arg(long, value_enum)]
    pub parity: Option<ParityArg>,
    /// Truncation order of the composite expansion (0 or 1).
    #[arg(long = "K", default_value_t = 1)]
    pub order: u32,
    /// Radial samples.
    #[arg(long, default_value_t = 21)]
    pub nr: usize,
    /// Angular samples over [0, 2 pi).
    #[arg(long, default_value_t = 64)]
    pub ntheta: usize,
    #[arg(long = "r-min", default_value_t = 0.0)]
    pub r_min: f64,
    #[arg(long = "r-max", default_value_t = 1.0)]
    pub r_max: f64,
}
