//! Command-line front-end for the decoherence library: single evaluations
//! and grid sweeps, emitted as one-object-per-line JSON or plot-ready CSV.
//!
//! Every record echoes the physics inputs that affect it, the library
//! version, and (for quadrature-backed numbers) the error estimate, so runs
//! are reproducible from their own output.

mod config;
mod record;
mod run;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "gravidec",
    version,
    about = "Soft-graviton bremsstrahlung decoherence quantities",
    disable_help_subcommand = true
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Record format (default json).
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Relative quadrature tolerance (default 1e-8).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub rel_tol: Option<f64>,
    /// Absolute quadrature tolerance (default 0).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub abs_tol: Option<f64>,
    /// key=value file supplying defaults for any flag below.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// One flat parameter surface shared by all subcommands: flags not used by
/// the chosen command are simply ignored, mirroring how a shared config file
/// behaves. Every field is optional so that file values and documented
/// defaults can fill the gaps; flags always win.
#[derive(Debug, Clone, Default, Args)]
pub struct Params {
    /// D-function argument x ≥ 1.
    #[arg(long, allow_negative_numbers = true)]
    pub x: Option<f64>,
    /// Evaluate dD/dx instead of D (dfunc only).
    #[arg(long)]
    pub deriv: bool,
    /// Particle mass m (default 1).
    #[arg(long, allow_negative_numbers = true)]
    pub m: Option<f64>,
    /// CM three-momentum Q.
    #[arg(long, allow_negative_numbers = true)]
    pub q: Option<f64>,
    /// Scattering angle θ in [0, π].
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    /// Superposition opening angle φ.
    #[arg(long, allow_negative_numbers = true)]
    pub phi: Option<f64>,
    /// Use the small-angle expansion (interference only).
    #[arg(long)]
    pub small_angle: bool,
    /// Branch speed v in [0, 1).
    #[arg(long, allow_negative_numbers = true)]
    pub v: Option<f64>,
    /// Lorentz factor γ > 1 (nu --regime rel).
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    /// Branch opening angle δ.
    #[arg(long, allow_negative_numbers = true)]
    pub delta: Option<f64>,
    /// Coupling combination G·m² (default 1).
    #[arg(long, allow_negative_numbers = true)]
    pub gm2: Option<f64>,
    /// Newton constant G (default 1).
    #[arg(long, allow_negative_numbers = true)]
    pub g: Option<f64>,
    /// Hard amplitude square |M₀|² (default 1).
    #[arg(long, allow_negative_numbers = true)]
    pub m0sq: Option<f64>,
    /// Hard overlap Re(M₁M₂*) (default 1).
    #[arg(long, allow_negative_numbers = true)]
    pub m1m2_re: Option<f64>,
    /// IR frequency cutoff λ.
    #[arg(long, allow_negative_numbers = true)]
    pub lambda_ir: Option<f64>,
    /// UV frequency cutoff Λ.
    #[arg(long, allow_negative_numbers = true)]
    pub lambda_uv: Option<f64>,
    /// Observation time t.
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<f64>,
    /// First time t₁ (ratio).
    #[arg(long, allow_negative_numbers = true)]
    pub t1: Option<f64>,
    /// Second time t₂ (ratio).
    #[arg(long, allow_negative_numbers = true)]
    pub t2: Option<f64>,
    /// Decay exponent ν (ratio).
    #[arg(long, allow_negative_numbers = true)]
    pub nu: Option<f64>,
    /// Polar cosine z of the emission direction (xi).
    #[arg(long, allow_negative_numbers = true)]
    pub z: Option<f64>,
    /// Azimuth of the emission direction (xi).
    #[arg(long, allow_negative_numbers = true)]
    pub azimuth: Option<f64>,
    /// Reference frequency ω_R (default 1, finite-time).
    #[arg(long, allow_negative_numbers = true)]
    pub omega_r: Option<f64>,
    /// Exponent regime: rel | nonrel (nu).
    #[arg(long)]
    pub regime: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub params: Params,
    /// Command to sweep: dfunc | emission | interference | xi | xcoeff |
    /// nu | ratio | finite-time.
    #[arg(long)]
    pub command: Option<String>,
    /// Swept parameter name (a numeric flag of the target command).
    #[arg(long)]
    pub param: Option<String>,
    /// First grid value.
    #[arg(long, allow_negative_numbers = true)]
    pub start: Option<f64>,
    /// Last grid value (inclusive).
    #[arg(long, allow_negative_numbers = true)]
    pub stop: Option<f64>,
    /// Number of grid points (≥ 1).
    #[arg(long)]
    pub steps: Option<u64>,
    /// Optional second swept parameter (inner loop).
    #[arg(long)]
    pub param2: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub start2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub stop2: Option<f64>,
    #[arg(long)]
    pub steps2: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the D-function (or its derivative with --deriv) at x.
    Dfunc(Params),
    /// Log coefficient of the single-event soft-emission probability.
    Emission(Params),
    /// Interference-suppression coefficient of a superposed pair.
    Interference(Params),
    /// Pointwise angular density ξ(k̂) of the decoherence growth rate.
    Xi(Params),
    /// Solid-angle coefficient X = ∫dΩ ξ (quadrature).
    Xcoeff(Params),
    /// Power-law decay exponent ν (--regime rel | nonrel).
    Nu(Params),
    /// Interference decay ratio (t₁/t₂)^(−ν).
    Ratio(Params),
    /// Finite-time radiated factor with analytic frequency window.
    FiniteTime(Params),
    /// Evaluate a command over a 1-D or 2-D inclusive grid.
    Sweep(SweepArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    run::execute(cli)
}
