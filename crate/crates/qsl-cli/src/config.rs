//! Validated run configuration: everything one CLI invocation will do.

use std::path::PathBuf;

use qsl_core::models::WptParams;

/// Report encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    /// Comment header, column header row, one comma-separated line per
    /// record, summary as trailing comment lines.
    Csv,
    /// One object with `meta`, `columns`, `records`, `summary` members.
    Json,
}

/// One canonical two-level point with a state choice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalPoint {
    /// Frequency gap μ (either sign; negative gaps relabel the levels).
    pub mu: f64,
    /// Decay asymmetry ν = γ′₀ − γ′₁.
    pub nu: f64,
    /// State mixing angle α ∈ (0, π/2].
    pub alpha: f64,
    /// Relative phase φ ∈ (0, 2π].
    pub phi: f64,
}

/// Which system the fastest-state command builds.
#[derive(Debug, Clone, PartialEq)]
pub enum SystemSpec {
    /// Gain–loss three-level chain.
    Wpt(WptParams),
    /// Canonical two-level pair: ω′ = {0, μ} (μ > 0), decay asymmetry ν.
    Canonical {
        /// Frequency gap μ > 0.
        mu: f64,
        /// Decay asymmetry ν = γ′₀ − γ′₁.
        nu: f64,
    },
}

/// Near-fastest family request.
#[derive(Debug, Clone, PartialEq)]
pub enum NearFisSpec {
    /// Three-level family with saturation ratio α ∈ (1/3, 1).
    BelowOne {
        /// Target saturation ratio.
        ratio_alpha: f64,
        /// Perturbation strength δ ∈ [0, 0.2).
        delta: f64,
        /// Decay rate of the middle-frequency level (fastest-decaying).
        gamma_mid: f64,
        /// Decay rate of the top-frequency level (0 < γ′_top < γ′_mid).
        gamma_top: f64,
        /// Family orthogonality time τ > 0.
        tau: f64,
    },
    /// Ladder family on levels {0, 1, 2k+1} with saturation ratio α > 1.
    AboveOne {
        /// Target saturation ratio.
        ratio_alpha: f64,
        /// Ladder index k ≥ 1.
        k: usize,
        /// Decay rate of the bottom level (γ′_bottom > γ′_mid > 0).
        gamma_bottom: f64,
        /// Decay rate of the middle level.
        gamma_mid: f64,
        /// Family orthogonality time τ > 0.
        tau: f64,
    },
}

/// A subcommand with its model parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum CommandSpec {
    /// Bound functional values at one time on a canonical two-level system.
    Bounds {
        /// Canonical point and state.
        point: CanonicalPoint,
        /// Evaluation time t > 0.
        tau: f64,
    },
    /// Fastest-initial-state construction and saturation check.
    Fis(SystemSpec),
    /// Random-state scatter on the gain–loss chain.
    Scatter(WptParams),
    /// Region classification of the two-level comparison plane.
    ScanRegions {
        /// Number of θ cells over (0, π).
        theta_cells: usize,
        /// Number of α cells over (0, π/2).
        alpha_cells: usize,
    },
    /// Solved bound times and region for one canonical two-level point.
    TwoLevel(CanonicalPoint),
    /// Gain–loss chain construction and regime report.
    Wpt(WptParams),
    /// Near-fastest family member construction and evaluation.
    NearFis(NearFisSpec),
}

/// One validated run. Identical configs produce byte-identical reports.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Subcommand with its model parameters.
    pub command: CommandSpec,
    /// Seed of the counter-based state sampler.
    pub seed: u64,
    /// Number of random states to draw (≥ 1).
    pub n_states: usize,
    /// Time-search horizon. `None` defers to the model-derived default
    /// (eight slowest periods); always positive when present.
    pub horizon: Option<f64>,
    /// Orthogonality threshold on |S|; always positive.
    pub eps: f64,
    /// Report destination; `None` writes to stdout.
    pub output_path: Option<PathBuf>,
    /// Report encoding.
    pub format: OutputFormat,
}
