//! `qsl`: quantum-speed-limit bounds for non-Hermitian systems.
//!
//! Thin argument layer: clap parses, the values are validated into a
//! [`RunConfig`], and [`qsl_cli::execute`] does the work. Exit codes: 0
//! success, 2 invalid arguments, 3 numerical domain error, 4 I/O error.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qsl_cli::config::{CanonicalPoint, CommandSpec, NearFisSpec, RunConfig, SystemSpec};
use qsl_cli::error::{CliError, CliResult};
use qsl_cli::{execute, OutputFormat};
use qsl_core::dynamics::DEFAULT_ORTHO_EPS;
use qsl_core::models::WptParams;

/// Quantum-speed-limit bounds for non-Hermitian systems: model
/// construction, bound evaluation, fastest-state construction, and
/// scatter/region-scan experiments with CSV or JSON output.
#[derive(Debug, Parser)]
#[command(name = "qsl", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the bound functionals of a canonical two-level system at
    /// one time: ML-type, MT-type, both weak forms, and the geometric form.
    Bounds(BoundsArgs),
    /// Construct the fastest initial state of a model and evaluate both
    /// saturation functionals at its minimal orthogonality time.
    Fis(FisArgs),
    /// Evolve seeded random states on the gain-loss chain, recording each
    /// orthogonality time and the functional values there.
    Scatter(ScatterArgs),
    /// Classify the two-level comparison plane (theta, alpha) into regions
    /// A (geometric bound later), B (combined bound at least as late), and
    /// C (a bound time is absent).
    ScanRegions(ScanArgs),
    /// Solve the bound times of one canonical two-level point and compare
    /// the combined and geometric bounds.
    TwoLevel(TwoLevelArgs),
    /// Build the gain-loss three-level chain, classify its regime, and
    /// report the anchored spectrum.
    Wpt(WptArgs),
    /// Construct a near-fastest family member (below-one or above-one) and
    /// evaluate its functionals at the family's orthogonality time.
    NearFis(NearFisArgs),
}

/// Report destination and encoding.
#[derive(Debug, Clone, Args)]
struct OutputArgs {
    /// Output file (stdout when omitted).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

/// Gain-loss chain parameters.
#[derive(Debug, Clone, Copy, Args)]
struct ChainArgs {
    /// Nearest-neighbour coupling kappa (enters as kappa^2).
    #[arg(long, allow_hyphen_values = true)]
    kappa: f64,
    /// Gain/loss rate eta >= 0.
    #[arg(long)]
    eta: f64,
    /// Common site energy sigma (a spectral shift; dynamics-neutral).
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    sigma: f64,
}

impl ChainArgs {
    fn into_params(self) -> CliResult<WptParams> {
        let eta = require_finite("eta", self.eta)?;
        if eta < 0.0 {
            return Err(usage(format!("--eta must be nonnegative, got {eta}")));
        }
        Ok(WptParams {
            sigma_res: require_finite("sigma", self.sigma)?,
            eta,
            kappa: require_finite("kappa", self.kappa)?,
        })
    }
}

/// Canonical two-level point with a state choice.
#[derive(Debug, Clone, Copy, Args)]
struct PointArgs {
    /// Frequency gap mu (negative gaps relabel the levels).
    #[arg(long, allow_hyphen_values = true)]
    mu: f64,
    /// Decay asymmetry nu = gamma'_0 - gamma'_1.
    #[arg(long, allow_hyphen_values = true)]
    nu: f64,
    /// State mixing angle alpha in (0, pi/2].
    #[arg(long)]
    alpha: f64,
    /// Relative phase phi in (0, 2pi] (population functionals ignore it).
    #[arg(long, default_value_t = TAU)]
    phi: f64,
}

impl PointArgs {
    fn into_point(self) -> CliResult<CanonicalPoint> {
        Ok(CanonicalPoint {
            mu: require_finite("mu", self.mu)?,
            nu: require_finite("nu", self.nu)?,
            alpha: require_half_open_angle("alpha", self.alpha, FRAC_PI_2)?,
            phi: require_half_open_angle("phi", self.phi, TAU)?,
        })
    }
}

#[derive(Debug, Args)]
struct BoundsArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Evaluation time t > 0.
    #[arg(long)]
    tau: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct FisArgs {
    /// Chain coupling kappa (needs --eta; selects the gain-loss chain).
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<f64>,
    /// Chain gain/loss rate eta >= 0.
    #[arg(long)]
    eta: Option<f64>,
    /// Chain site energy sigma.
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<f64>,
    /// Two-level frequency gap mu > 0 (selects the canonical pair).
    #[arg(long)]
    mu: Option<f64>,
    /// Two-level decay asymmetry nu = gamma'_0 - gamma'_1.
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

impl FisArgs {
    fn into_system(self) -> CliResult<SystemSpec> {
        let chain = self.kappa.is_some() || self.eta.is_some() || self.sigma.is_some();
        let pair = self.mu.is_some() || self.nu.is_some();
        match (chain, pair) {
            (true, true) => Err(usage(
                "pass either the chain flags (--kappa --eta [--sigma]) or the \
                 two-level flags (--mu [--nu]), not both"
                    .into(),
            )),
            (false, false) => Err(usage(
                "pass a model: --kappa --eta [--sigma] for the gain-loss chain, \
                 or --mu [--nu] for the canonical two-level pair"
                    .into(),
            )),
            (true, false) => {
                let (Some(kappa), Some(eta)) = (self.kappa, self.eta) else {
                    return Err(usage("the chain needs both --kappa and --eta".into()));
                };
                Ok(SystemSpec::Wpt(
                    ChainArgs {
                        kappa,
                        eta,
                        sigma: self.sigma.unwrap_or(0.0),
                    }
                    .into_params()?,
                ))
            }
            (false, true) => {
                let Some(mu) = self.mu else {
                    return Err(usage("the two-level pair needs --mu".into()));
                };
                Ok(SystemSpec::Canonical {
                    mu: require_positive("mu", mu)?,
                    nu: require_finite("nu", self.nu.unwrap_or(0.0))?,
                })
            }
        }
    }
}

#[derive(Debug, Args)]
struct ScatterArgs {
    #[command(flatten)]
    chain: ChainArgs,
    /// Sampler seed.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Number of random states (the fastest state is added as state 0).
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    /// Search horizon (default: eight slowest periods, 8*pi/omega'_N).
    #[arg(long)]
    horizon: Option<f64>,
    /// Orthogonality threshold on |S|.
    #[arg(long, default_value_t = DEFAULT_ORTHO_EPS)]
    eps: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct ScanArgs {
    /// Number of theta cells over (0, pi).
    #[arg(long = "theta-grid", default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    theta_grid: u64,
    /// Number of alpha cells over (0, pi/2).
    #[arg(long = "alpha-grid", default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    alpha_grid: u64,
    /// Bound-time search horizon per cell.
    #[arg(long, default_value_t = qsl_cli::commands::DEFAULT_SCAN_HORIZON)]
    horizon: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct TwoLevelArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Bound-time search horizon (default: eight slowest periods).
    #[arg(long)]
    horizon: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct WptArgs {
    #[command(flatten)]
    chain: ChainArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct NearFisArgs {
    /// Target saturation ratio alpha (below-one: (1/3, 1); above-one: > 1).
    #[arg(long = "ratio-alpha")]
    ratio_alpha: f64,
    /// Perturbation strength delta in [0, 0.2); selects the below-one family.
    #[arg(long)]
    delta: Option<f64>,
    /// Ladder index k >= 1; selects the above-one family.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: Option<u64>,
    /// Decay rate of the middle level (both families).
    #[arg(long = "gamma-mid")]
    gamma_mid: f64,
    /// Below-one only: decay rate of the top level (0 < top < mid).
    #[arg(long = "gamma-top")]
    gamma_top: Option<f64>,
    /// Above-one only: decay rate of the bottom level (bottom > mid > 0).
    #[arg(long = "gamma-bottom")]
    gamma_bottom: Option<f64>,
    /// Family orthogonality time tau > 0.
    #[arg(long, default_value_t = 1.0)]
    tau: f64,
    #[command(flatten)]
    output: OutputArgs,
}

impl NearFisArgs {
    fn into_spec(self) -> CliResult<NearFisSpec> {
        let ratio_alpha = require_positive("ratio-alpha", self.ratio_alpha)?;
        let gamma_mid = require_positive("gamma-mid", self.gamma_mid)?;
        let tau = require_positive("tau", self.tau)?;
        match (self.delta, self.k) {
            (Some(_), Some(_)) => Err(usage(
                "--delta selects the below-one family and --k the above-one family; \
                 pass exactly one"
                    .into(),
            )),
            (None, None) => Err(usage(
                "pass --delta (below-one family) or --k (above-one family)".into(),
            )),
            (Some(delta), None) => {
                if !(0.0..0.2).contains(&delta) {
                    return Err(usage(format!(
                        "--delta must lie in [0, 0.2), got {delta}"
                    )));
                }
                let Some(gamma_top) = self.gamma_top else {
                    return Err(usage("the below-one family needs --gamma-top".into()));
                };
                if self.gamma_bottom.is_some() {
                    return Err(usage(
                        "--gamma-bottom belongs to the above-one family; the below-one \
                         family takes --gamma-mid and --gamma-top"
                            .into(),
                    ));
                }
                Ok(NearFisSpec::BelowOne {
                    ratio_alpha,
                    delta,
                    gamma_mid,
                    gamma_top: require_positive("gamma-top", gamma_top)?,
                    tau,
                })
            }
            (None, Some(k)) => {
                let Some(gamma_bottom) = self.gamma_bottom else {
                    return Err(usage("the above-one family needs --gamma-bottom".into()));
                };
                if self.gamma_top.is_some() {
                    return Err(usage(
                        "--gamma-top belongs to the below-one family; the above-one \
                         family takes --gamma-bottom and --gamma-mid"
                            .into(),
                    ));
                }
                Ok(NearFisSpec::AboveOne {
                    ratio_alpha,
                    k: k as usize,
                    gamma_bottom: require_positive("gamma-bottom", gamma_bottom)?,
                    gamma_mid,
                    tau,
                })
            }
        }
    }
}

fn usage(message: String) -> CliError {
    CliError::Usage(message)
}

fn require_finite(name: &str, value: f64) -> CliResult<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(usage(format!("--{name} must be finite, got {value}")))
    }
}

fn require_positive(name: &str, value: f64) -> CliResult<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(usage(format!(
            "--{name} must be positive and finite, got {value}"
        )))
    }
}

/// Angle in the half-open-from-below interval (0, hi].
fn require_half_open_angle(name: &str, value: f64, hi: f64) -> CliResult<f64> {
    if value.is_finite() && value > 0.0 && value <= hi {
        Ok(value)
    } else {
        Err(usage(format!(
            "--{name} must lie in (0, {hi}], got {value}"
        )))
    }
}

/// Shared RunConfig plumbing with command-independent defaults.
fn base_config(command: CommandSpec, output: OutputArgs) -> RunConfig {
    RunConfig {
        command,
        seed: 0,
        n_states: 1,
        horizon: None,
        eps: DEFAULT_ORTHO_EPS,
        output_path: output.out,
        format: output.format.into(),
    }
}

impl Cli {
    fn into_config(self) -> CliResult<RunConfig> {
        match self.command {
            Command::Bounds(args) => {
                let point = args.point.into_point()?;
                let tau = require_positive("tau", args.tau)?;
                Ok(base_config(CommandSpec::Bounds { point, tau }, args.output))
            }
            Command::Fis(args) => {
                let output = args.output.clone();
                Ok(base_config(CommandSpec::Fis(args.into_system()?), output))
            }
            Command::Scatter(args) => {
                let mut config = base_config(
                    CommandSpec::Scatter(args.chain.into_params()?),
                    args.output,
                );
                config.seed = args.seed;
                config.n_states = args.n as usize;
                config.horizon = match args.horizon {
                    Some(h) => Some(require_positive("horizon", h)?),
                    None => None,
                };
                config.eps = require_positive("eps", args.eps)?;
                Ok(config)
            }
            Command::ScanRegions(args) => {
                let mut config = base_config(
                    CommandSpec::ScanRegions {
                        theta_cells: args.theta_grid as usize,
                        alpha_cells: args.alpha_grid as usize,
                    },
                    args.output,
                );
                config.horizon = Some(require_positive("horizon", args.horizon)?);
                Ok(config)
            }
            Command::TwoLevel(args) => {
                let mut config = base_config(
                    CommandSpec::TwoLevel(args.point.into_point()?),
                    args.output,
                );
                config.horizon = match args.horizon {
                    Some(h) => Some(require_positive("horizon", h)?),
                    None => None,
                };
                Ok(config)
            }
            Command::Wpt(args) => Ok(base_config(
                CommandSpec::Wpt(args.chain.into_params()?),
                args.output,
            )),
            Command::NearFis(args) => {
                let output = args.output.clone();
                Ok(base_config(
                    CommandSpec::NearFis(args.into_spec()?),
                    output,
                ))
            }
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let config = cli.into_config()?;
    let report = execute(&config)?;
    report
        .write(config.format, config.output_path.as_deref())
        .map_err(CliError::from)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("qsl: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
