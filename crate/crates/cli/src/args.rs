use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use entfluct::identities::IdentityTag;
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "entfluct",
    version,
    about = "Entanglement entropy and its fluctuations for transverse-field Ising chains"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Infinite-chain quantities over a λ grid
    Sweep(SweepArgs),
    /// Curve data behind one of the figures
    Figure(FigureArgs),
    /// Full statistics at a single coupling
    Point(PointArgs),
    /// Finite open chain at a single coupling (same as `point --L`)
    Finite(FiniteArgs),
    /// Landmark couplings: crossings and the δS maximum
    Roots(RootsArgs),
    /// Run the identity and series-vs-closed-form checks
    Verify(VerifyArgs),
    /// Rényi and Tsallis entropies at one order α
    Renyi(RenyiArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Linear,
    Log,
}

/// Sweep columns, in the order they are emitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
pub enum Quantity {
    #[value(name = "eps")]
    #[serde(rename = "eps")]
    Eps,
    #[value(name = "S")]
    #[serde(rename = "S")]
    S,
    #[value(name = "S_series")]
    #[serde(rename = "S_series")]
    SSeries,
    #[value(name = "dS")]
    #[serde(rename = "dS")]
    DS,
    #[value(name = "dS_series")]
    #[serde(rename = "dS_series")]
    DSSeries,
    #[value(name = "delta")]
    #[serde(rename = "delta")]
    Delta,
}

impl Quantity {
    pub fn column(self) -> &'static str {
        match self {
            Quantity::Eps => "eps",
            Quantity::S => "S",
            Quantity::SSeries => "S_series",
            Quantity::DS => "dS",
            Quantity::DSSeries => "dS_series",
            Quantity::Delta => "delta",
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of standard output
    #[arg(long, short)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SweepArgs {
    #[arg(long)]
    pub from: f64,
    #[arg(long)]
    pub to: f64,
    #[arg(long, default_value_t = 100)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = Scale::Linear)]
    pub scale: Scale,
    /// Comma-separated columns besides lambda
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Quantity::S, Quantity::DS, Quantity::Delta])]
    pub quantities: Vec<Quantity>,
    /// Add the ladder-sum oracle columns S_series and dS_series
    #[arg(long)]
    pub series: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FigureTag {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
}

#[derive(Debug, Args, Serialize)]
pub struct FigureArgs {
    #[arg(value_enum)]
    pub figure: FigureTag,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum System {
    Infinite,
    Dimer,
}

#[derive(Debug, Args, Serialize)]
pub struct PointArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: f64,
    #[arg(long, value_enum, default_value_t = System::Infinite)]
    pub system: System,
    /// Chain length; routes to the finite open chain
    #[arg(long = "L", value_name = "L")]
    #[serde(rename = "L")]
    pub sites: Option<usize>,
    /// Sites 1..cut form the subsystem (default L/2)
    #[arg(long, requires = "sites")]
    pub cut: Option<usize>,
}

#[derive(Debug, Args, Serialize)]
pub struct FiniteArgs {
    #[arg(long = "L", value_name = "L")]
    #[serde(rename = "L")]
    pub sites: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: f64,
    #[arg(long)]
    pub cut: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum RootTag {
    /// Dimer crossing ΔS = S
    #[value(name = "dimer-lf")]
    #[serde(rename = "dimer-lf")]
    DimerLf,
    /// Infinite-chain crossing ΔS = S below λ = 1
    #[value(name = "inf-lf")]
    #[serde(rename = "inf-lf")]
    InfLf,
    /// Infinite-chain maximum of δS above λ = 1
    #[value(name = "inf-lm")]
    #[serde(rename = "inf-lm")]
    InfLm,
}

#[derive(Debug, Args, Serialize)]
pub struct RootsArgs {
    #[arg(value_enum)]
    pub which: RootTag,
}

fn parse_tag(s: &str) -> Result<IdentityTag, String> {
    s.parse()
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Comma-separated identity families to run (default: all)
    #[arg(long, value_delimiter = ',', value_parser = parse_tag)]
    pub only: Vec<IdentityTag>,
    #[arg(long, short)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct RenyiArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: f64,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, value_enum, default_value_t = System::Infinite)]
    pub system: System,
    #[arg(long = "L", value_name = "L")]
    #[serde(rename = "L")]
    pub sites: Option<usize>,
    #[arg(long, requires = "sites")]
    pub cut: Option<usize>,
}
