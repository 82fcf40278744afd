//! Random-state scatter experiments: many seeded initial states on one
//! spectrum, each with its orthogonality time and the saturation
//! functionals evaluated there.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;

use qsl_core::analysis::fis;
use qsl_core::biortho::{build_biorthogonal, shift_spectrum, ShiftedSpectrum};
use qsl_core::bounds::{f_ml, f_mt};
use qsl_core::dynamics::{orthogonality_time, EigenbasisState};
use qsl_core::models::{build_wpt, WptParams};
use qsl_core::sample::sample_random_states;
use qsl_core::{C64, Error};

use crate::error::CliResult;

/// Eigendecomposition acceptance tolerance for every CLI model build.
pub const BUILD_TOL: f64 = 1e-9;

/// Slack on the π/2 saturation theorems when counting violations.
const BOUND_SLACK: f64 = 1e-8;

/// Scatter outcome for one initial state.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatterRecord {
    /// 0 is the injected fastest state; random states count from 1.
    pub state_id: usize,
    /// First orthogonality time within the horizon, when one exists.
    pub tau: Option<f64>,
    /// ML-type functional at τ; absent whenever τ is absent.
    pub f_ml: Option<f64>,
    /// MT-type functional at τ; absent whenever τ is absent.
    pub f_mt: Option<f64>,
    /// Eigenbasis coefficients of the initial state.
    pub coeffs: Vec<C64>,
}

/// Aggregates over one scatter run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterSummary {
    /// Smallest found orthogonality time, when any state crossed.
    pub min_tau: Option<f64>,
    /// States with no orthogonality time within the horizon.
    pub absences: usize,
    /// States whose τ exists but where a saturation functional evaluates
    /// below π/2 − 1e−8 or not at all. The bound theorem predicts zero.
    pub violations: usize,
}

/// Build the gain–loss chain and anchor its spectrum.
///
/// # Errors
/// [`qsl_core::Error::DefectiveMatrix`] at (or numerically near) the
/// exceptional point, where the eigenvectors coalesce.
pub fn wpt_spectrum(params: &WptParams) -> CliResult<ShiftedSpectrum> {
    let (h, _regime) = build_wpt(params);
    let sys = build_biorthogonal(&h, BUILD_TOL)?;
    Ok(shift_spectrum(&sys))
}

/// Evaluate one state: orthogonality time, then both functionals there.
fn evaluate(
    state_id: usize,
    state: &EigenbasisState,
    spec: &ShiftedSpectrum,
    horizon: f64,
    eps: f64,
) -> ScatterRecord {
    let tau = orthogonality_time(state, spec, horizon, eps);
    let (ml, mt) = match tau {
        Some(t) => (
            f_ml(state, spec, t).ok().map(|b| b.value),
            f_mt(state, spec, t).ok().map(|b| b.value),
        ),
        None => (None, None),
    };
    ScatterRecord {
        state_id,
        tau,
        f_ml: ml,
        f_mt: mt,
        coeffs: state.coeffs().to_vec(),
    }
}

/// Scatter on the gain–loss chain built from `params`.
pub fn run_scatter(
    params: &WptParams,
    seed: u64,
    n: usize,
    horizon: f64,
    eps: f64,
) -> CliResult<(Vec<ScatterRecord>, ScatterSummary)> {
    let spec = wpt_spectrum(params)?;
    run_scatter_on(&spec, seed, n, horizon, eps)
}

/// Scatter on an explicit anchored spectrum.
///
/// The fastest state is injected as `state_id` 0 whenever the spectrum has
/// bandwidth to define one; the `n` seeded random states follow as ids
/// 1..=n. States evaluate in parallel; records return in id order.
pub fn run_scatter_on(
    spec: &ShiftedSpectrum,
    seed: u64,
    n: usize,
    horizon: f64,
    eps: f64,
) -> CliResult<(Vec<ScatterRecord>, ScatterSummary)> {
    let mut jobs: Vec<(usize, EigenbasisState)> = Vec::with_capacity(n + 1);
    match fis(spec) {
        Ok(state) => jobs.push((0, state)),
        Err(Error::ZeroBandwidth) => {} // no oscillation: no fastest state
        Err(other) => return Err(other.into()),
    }
    jobs.extend(
        sample_random_states(spec.len(), n, seed)
            .into_iter()
            .enumerate()
            .map(|(i, state)| (i + 1, state)),
    );

    let records: Vec<ScatterRecord> = jobs
        .par_iter()
        .map(|(id, state)| evaluate(*id, state, spec, horizon, eps))
        .collect();

    let mut summary = ScatterSummary {
        min_tau: None,
        absences: 0,
        violations: 0,
    };
    for record in &records {
        match record.tau {
            Some(t) => {
                summary.min_tau = Some(summary.min_tau.map_or(t, |m: f64| m.min(t)));
                let saturated =
                    |v: Option<f64>| v.is_some_and(|x| x >= FRAC_PI_2 - BOUND_SLACK);
                if !(saturated(record.f_ml) && saturated(record.f_mt)) {
                    summary.violations += 1;
                }
            }
            None => summary.absences += 1,
        }
    }
    Ok((records, summary))
}
