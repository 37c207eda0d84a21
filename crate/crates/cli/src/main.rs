use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod error;
mod output;
mod plot;

use error::CliResult;

/// Batch front end for Gelfand-Tsetlin Lax systems on U(n) coadjoint orbits.
#[derive(Parser, Debug)]
#[command(version, about, long_about = None)]
struct Cli {
    #[command(subcommand)]
    group: Group,
}

#[derive(Subcommand, Debug)]
enum Group {
    /// Haar-random points on an orbit.
    Orbit {
        #[command(subcommand)]
        cmd: OrbitCmd,
    },
    /// The Gelfand-Tsetlin polytope.
    Polytope {
        #[command(subcommand)]
        cmd: PolytopeCmd,
    },
    /// Collective Hamiltonian flows.
    Flow {
        #[command(subcommand)]
        cmd: FlowCmd,
    },
    /// Spectral curves of patterns.
    Curve {
        #[command(subcommand)]
        cmd: CurveCmd,
    },
    /// The 2x2 harmonic oscillator Lax pair.
    Ho {
        #[command(subcommand)]
        cmd: HoCmd,
    },
}

#[derive(Subcommand, Debug)]
enum OrbitCmd {
    /// Sample points, their patterns and action vectors.
    Sample(SampleArgs),
}

#[derive(Subcommand, Debug)]
enum PolytopeCmd {
    /// Enumerate vertices (polytope dimension at most 6).
    Vertices(VertexArgs),
    /// Sample strictly interior action vectors.
    Sample(SampleArgs),
}

#[derive(Subcommand, Debug)]
enum FlowCmd {
    /// Integrate a flow and report conservation.
    Run(FlowArgs),
}

#[derive(Subcommand, Debug)]
enum CurveCmd {
    /// Spectral polynomial, discriminant, genus and periods of one pattern.
    Analyze(CurveArgs),
}

#[derive(Subcommand, Debug)]
enum HoCmd {
    /// Integrate the oscillator and compare with the closed form.
    Run(HoArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Lie,
    Rk4,
}

#[derive(Args, Debug, Clone)]
pub struct SpecArgs {
    /// Orbit spectrum, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
    pub lambda: Vec<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct SeedArg {
    /// Master seed; falls back to GTLAX_SEED, then 0.
    #[arg(long, env = "GTLAX_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long, default_value_t = 10)]
    pub samples: usize,
    /// Interlacing slack tolerance.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VertexArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Membership tolerance.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct FlowArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    pub seed: SeedArg,
    /// Start from the point reconstructed from this action vector instead of
    /// a random point.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub pattern: Option<Vec<f64>>,
    /// `trace2`, `trace:m`, `linear` or `eig:j`.
    #[arg(long, default_value = "trace2")]
    pub hamiltonian: String,
    /// Level k of the Hamiltonian; defaults to n - 1.
    #[arg(long)]
    pub level: Option<usize>,
    #[arg(long, value_enum, default_value_t = MethodArg::Lie)]
    pub method: MethodArg,
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    #[arg(long, default_value_t = 10.0)]
    pub t_final: f64,
    /// Write every n-th step to the time series (drifts use every step).
    #[arg(long, default_value_t = 1)]
    pub every: usize,
    /// Add `Re Z[1,n]`, which the flow does not conserve.
    #[arg(long)]
    pub track_noninvariant: bool,
    /// Time series path; the summary goes next to it as `.summary.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Summary path, overriding the default next to `--out`.
    #[arg(long)]
    pub summary: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct CurveArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    pub seed: SeedArg,
    /// Action vector; a random interior one is drawn when absent.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub pattern: Option<Vec<f64>>,
    /// Boundary and collision tolerance, relative to max(diameter, 1).
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Also write an SVG next to `--out`.
    #[arg(long)]
    pub plot: bool,
}

#[derive(Args, Debug)]
pub struct HoArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub q0: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub p0: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub c: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    #[arg(long, default_value_t = 10.0)]
    pub t_final: f64,
    #[arg(long, default_value_t = 1)]
    pub every: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub summary: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.group {
        Group::Orbit { cmd: OrbitCmd::Sample(a) } => commands::orbit::sample(&a),
        Group::Polytope { cmd: PolytopeCmd::Vertices(a) } => commands::polytope::vertices(&a),
        Group::Polytope { cmd: PolytopeCmd::Sample(a) } => commands::polytope::sample(&a),
        Group::Flow { cmd: FlowCmd::Run(a) } => commands::flow::run(&a),
        Group::Curve { cmd: CurveCmd::Analyze(a) } => commands::curve::analyze(&a),
        Group::Ho { cmd: HoCmd::Run(a) } => commands::ho::run(&a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gtlax: {e}");
            e.exit_code()
        }
    }
}
