//! Subcommand drivers: turn a validated [`RunConfig`] into a [`Report`].

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;

use qsl_core::analysis::{
    alpha_ratio, fis, near_fis_above_one, near_fis_below_one, scan_point, two_level_tau_g, Region,
};
use qsl_core::biortho::{build_biorthogonal, shift_spectrum, ShiftedSpectrum};
use qsl_core::bounds::{f_g_two_level, f_ml, f_mt, f_weak, tau_bound, BoundKind};
use qsl_core::dynamics::{default_horizon, EigenbasisState};
use qsl_core::models::{
    build_wpt, canonical_system, relabeled, StateAngles, TwoLevelCanonical, WptParams,
};

use crate::config::{CanonicalPoint, CommandSpec, NearFisSpec, RunConfig, SystemSpec};
use crate::error::{CliError, CliResult};
use crate::report::{Cell, Report};
use crate::scatter::{run_scatter_on, wpt_spectrum, BUILD_TOL};

/// Default horizon for the region scan: generous enough that region C is
/// decided by the functionals' asymptotics, not by the search window.
pub const DEFAULT_SCAN_HORIZON: f64 = 300.0;

/// Execute one run: dispatch on the subcommand and build its report.
pub fn execute(config: &RunConfig) -> CliResult<Report> {
    match &config.command {
        CommandSpec::Bounds { point, tau } => bounds_report(point, *tau),
        CommandSpec::Fis(system) => fis_report(system),
        CommandSpec::Scatter(params) => scatter_report(params, config),
        CommandSpec::ScanRegions {
            theta_cells,
            alpha_cells,
        } => Ok(scan_report(
            *theta_cells,
            *alpha_cells,
            config.horizon.unwrap_or(DEFAULT_SCAN_HORIZON),
        )),
        CommandSpec::TwoLevel(point) => two_level_report(point, config.horizon),
        CommandSpec::Wpt(params) => wpt_report(params),
        CommandSpec::NearFis(request) => near_fis_report(request),
    }
}

/// The model-default horizon (eight slowest periods), unless overridden.
fn resolve_horizon(requested: Option<f64>, spec: &ShiftedSpectrum) -> CliResult<f64> {
    requested.or_else(|| default_horizon(spec)).ok_or_else(|| {
        CliError::Usage(
            "spectrum has zero bandwidth, so there is no default horizon; pass --horizon".into(),
        )
    })
}

fn names(columns: &[&str]) -> Vec<String> {
    columns.iter().map(|c| c.to_string()).collect()
}

/// Interleaved coefficient column names c_re_0, c_im_0, c_re_1, …
fn coeff_columns(dim: usize) -> Vec<String> {
    (0..dim)
        .flat_map(|n| [format!("c_re_{n}"), format!("c_im_{n}")])
        .collect()
}

/// Interleaved coefficient cells matching [`coeff_columns`].
fn coeff_cells(state: &EigenbasisState) -> Vec<Cell> {
    state
        .coeffs()
        .iter()
        .flat_map(|c| [Cell::Float(c.re), Cell::Float(c.im)])
        .collect()
}

/// Functional values of one canonical two-level point at one time.
fn bounds_report(point: &CanonicalPoint, tau: f64) -> CliResult<Report> {
    let canonical = TwoLevelCanonical {
        mu: point.mu,
        nu: point.nu,
    };
    let angles = StateAngles {
        alpha: point.alpha,
        phi: point.phi,
    };
    let (spec, state) = canonical_system(&canonical, &angles)?;
    let (mu, nu, alpha) = relabeled(&canonical, point.alpha);

    let ml = f_ml(&state, &spec, tau).ok().map(|b| b.value);
    let mt = f_mt(&state, &spec, tau).ok().map(|b| b.value);
    let weak = f_weak(&state, &spec, tau).ok();
    let g = f_g_two_level(mu, nu, alpha, tau).value;

    Ok(Report {
        comments: vec![
            "bound functional values at one time".into(),
            format!(
                "canonical two-level point: mu={} nu={} alpha={} phi={} tau={}",
                point.mu, point.nu, point.alpha, point.phi, tau
            ),
            "absent fields mark a functional outside its domain at this time".into(),
        ],
        columns: names(&[
            "mu", "nu", "alpha", "phi", "tau", "f_ml", "f_mt", "f_wml", "f_wmt", "f_g",
        ]),
        rows: vec![vec![
            Cell::Float(point.mu),
            Cell::Float(point.nu),
            Cell::Float(point.alpha),
            Cell::Float(point.phi),
            Cell::Float(tau),
            Cell::OptFloat(ml),
            Cell::OptFloat(mt),
            Cell::OptFloat(weak.map(|w| w.wml.value)),
            Cell::OptFloat(weak.map(|w| w.wmt.value)),
            Cell::Float(g),
        ]],
        summary: Vec::new(),
    })
}

/// Anchored spectrum of a canonical two-level pair (μ > 0).
fn canonical_spectrum(mu: f64, nu: f64) -> CliResult<ShiftedSpectrum> {
    let gamma = if nu > 0.0 {
        vec![nu, 0.0]
    } else {
        vec![0.0, -nu]
    };
    Ok(ShiftedSpectrum::from_parts(vec![0.0, mu], gamma)?)
}

/// Fastest-state construction with the saturation check at τ = π/ω′_N.
fn fis_report(system: &SystemSpec) -> CliResult<Report> {
    let (spec, model_line) = match system {
        SystemSpec::Wpt(p) => (
            wpt_spectrum(p)?,
            format!(
                "model: gain-loss chain kappa={} eta={} sigma={}",
                p.kappa, p.eta, p.sigma_res
            ),
        ),
        SystemSpec::Canonical { mu, nu } => (
            canonical_spectrum(*mu, *nu)?,
            format!("model: canonical two-level pair mu={mu} nu={nu}"),
        ),
    };
    let state = fis(&spec)?;
    let tau = PI / spec.omega_max();
    let ml = f_ml(&state, &spec, tau)?.value;
    let mt = f_mt(&state, &spec, tau)?.value;

    let mut columns = names(&["dim", "tau", "f_ml", "f_mt"]);
    columns.extend(coeff_columns(spec.len()));
    let mut row = vec![
        Cell::Int(spec.len() as u64),
        Cell::Float(tau),
        Cell::Float(ml),
        Cell::Float(mt),
    ];
    row.extend(coeff_cells(&state));

    Ok(Report {
        comments: vec![
            "fastest initial state: minimal orthogonality time pi/omega'_N".into(),
            model_line,
        ],
        columns,
        rows: vec![row],
        summary: Vec::new(),
    })
}

/// Seeded random-state scatter on the gain–loss chain.
fn scatter_report(params: &WptParams, config: &RunConfig) -> CliResult<Report> {
    let spec = wpt_spectrum(params)?;
    let horizon = resolve_horizon(config.horizon, &spec)?;
    let (records, summary) =
        run_scatter_on(&spec, config.seed, config.n_states, horizon, config.eps)?;
    let injected = records.first().is_some_and(|r| r.state_id == 0);

    let mut comments = vec![
        "random-state scatter: orthogonality time and saturation functionals".into(),
        format!(
            "model: gain-loss chain kappa={} eta={} sigma={}",
            params.kappa, params.eta, params.sigma_res
        ),
        format!(
            "sampling: populations uniform on the {}-simplex (exponential normalization), \
             phases uniform on [0, 2pi)",
            spec.len() - 1
        ),
        format!(
            "seed={} states={} horizon={} eps={}",
            config.seed, config.n_states, horizon, config.eps
        ),
    ];
    if injected {
        comments.push("state_id 0 is the constructed fastest state".into());
    } else {
        comments.push("zero-bandwidth spectrum: no fastest state to inject".into());
    }

    let mut columns = names(&["state_id", "tau", "f_ml", "f_mt"]);
    columns.extend(coeff_columns(spec.len()));
    let rows = records
        .iter()
        .map(|r| {
            let mut row = vec![
                Cell::Int(r.state_id as u64),
                Cell::OptFloat(r.tau),
                Cell::OptFloat(r.f_ml),
                Cell::OptFloat(r.f_mt),
            ];
            row.extend(
                r.coeffs
                    .iter()
                    .flat_map(|c| [Cell::Float(c.re), Cell::Float(c.im)]),
            );
            row
        })
        .collect();

    Ok(Report {
        comments,
        columns,
        rows,
        summary: vec![
            ("min_tau".into(), Cell::OptFloat(summary.min_tau)),
            ("absences".into(), Cell::Int(summary.absences as u64)),
            ("violations".into(), Cell::Int(summary.violations as u64)),
        ],
    })
}

/// One classified cell of the two-level comparison plane.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    /// Spectral angle θ ∈ (0, π).
    pub theta: f64,
    /// State angle α ∈ (0, π/2).
    pub alpha: f64,
    /// Frequency gap μ′ = sin θ.
    pub mu: f64,
    /// Decay asymmetry ν′ = cos θ.
    pub nu: f64,
    /// Combined saturation bound time, when both pieces cross π/2.
    pub tau_comb: Option<f64>,
    /// Geometric bound time from the closed form, when it exists.
    pub tau_g: Option<f64>,
    /// τ′_comb − τ′_G when both exist.
    pub delta_tau: Option<f64>,
    /// A (geometric later), B (combined at least as late), or C (absence).
    pub region: Region,
}

/// Classify the midpoint grid θ_i = (i+½)π/N, α_j = (j+½)(π/2)/M on the
/// unit-speed plane (μ′, ν′) = (sin θ, cos θ).
///
/// Cells evaluate in parallel; rows come back in the row-major reference
/// order (θ outer, α inner) that the sequential core scan defines.
pub fn scan_rows(theta_cells: usize, alpha_cells: usize, horizon: f64) -> Vec<ScanRow> {
    let indices: Vec<(usize, usize)> = (0..theta_cells)
        .flat_map(|i| (0..alpha_cells).map(move |j| (i, j)))
        .collect();
    indices
        .par_iter()
        .map(|&(i, j)| {
            let theta = (i as f64 + 0.5) * PI / theta_cells as f64;
            let alpha = (j as f64 + 0.5) * FRAC_PI_2 / alpha_cells as f64;
            let canonical = TwoLevelCanonical {
                mu: theta.sin(),
                nu: theta.cos(),
            };
            let (tau_comb, tau_g) = scan_point(&canonical, alpha, horizon);
            let delta_tau = match (tau_comb, tau_g) {
                (Some(c), Some(g)) => Some(c - g),
                _ => None,
            };
            let region = match delta_tau {
                Some(d) if d < 0.0 => Region::A,
                Some(_) => Region::B,
                None => Region::C,
            };
            ScanRow {
                theta,
                alpha,
                mu: canonical.mu,
                nu: canonical.nu,
                tau_comb,
                tau_g,
                delta_tau,
                region,
            }
        })
        .collect()
}

/// Region-scan report over the (θ, α) grid.
fn scan_report(theta_cells: usize, alpha_cells: usize, horizon: f64) -> Report {
    let rows = scan_rows(theta_cells, alpha_cells, horizon);
    let mut counts = [0usize; 3];
    for row in &rows {
        counts[match row.region {
            Region::A => 0,
            Region::B => 1,
            Region::C => 2,
        }] += 1;
    }
    Report {
        comments: vec![
            "two-level comparison regions on the unit-speed plane (mu', nu') = (sin theta, cos theta)"
                .into(),
            format!(
                "grid: {theta_cells} theta cells x {alpha_cells} alpha cells (midpoints), horizon={horizon}"
            ),
            "region A: delta_tau < 0; B: delta_tau >= 0; C: a bound time is absent".into(),
        ],
        columns: names(&[
            "theta", "alpha", "mu", "nu", "tau_comb", "tau_g", "delta_tau", "region",
        ]),
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    Cell::Float(r.theta),
                    Cell::Float(r.alpha),
                    Cell::Float(r.mu),
                    Cell::Float(r.nu),
                    Cell::OptFloat(r.tau_comb),
                    Cell::OptFloat(r.tau_g),
                    Cell::OptFloat(r.delta_tau),
                    Cell::Text(r.region.to_string()),
                ]
            })
            .collect(),
        summary: vec![
            ("region_a_cells".into(), Cell::Int(counts[0] as u64)),
            ("region_b_cells".into(), Cell::Int(counts[1] as u64)),
            ("region_c_cells".into(), Cell::Int(counts[2] as u64)),
        ],
    }
}

/// Solved bound times and region for one canonical two-level point.
fn two_level_report(point: &CanonicalPoint, horizon: Option<f64>) -> CliResult<Report> {
    let canonical = TwoLevelCanonical {
        mu: point.mu,
        nu: point.nu,
    };
    let angles = StateAngles {
        alpha: point.alpha,
        phi: point.phi,
    };
    let (spec, state) = canonical_system(&canonical, &angles)?;
    let horizon = resolve_horizon(horizon, &spec)?;

    let tau_ml = tau_bound(BoundKind::Ml, &state, &spec, horizon)?;
    let tau_mt = tau_bound(BoundKind::Mt, &state, &spec, horizon)?;
    let tau_wml = tau_bound(BoundKind::Wml, &state, &spec, horizon)?;
    let tau_wmt = tau_bound(BoundKind::Wmt, &state, &spec, horizon)?;
    let tau_comb = match (tau_ml, tau_mt) {
        (Some(a), Some(b)) => Some(a.max(b)),
        _ => None,
    };
    let (mu, nu, alpha) = relabeled(&canonical, point.alpha);
    let tau_g = two_level_tau_g(mu, nu, alpha);
    let delta_tau = match (tau_comb, tau_g) {
        (Some(c), Some(g)) => Some(c - g),
        _ => None,
    };
    let region = match delta_tau {
        Some(d) if d < 0.0 => Region::A,
        Some(_) => Region::B,
        None => Region::C,
    };

    Ok(Report {
        comments: vec![
            "two-level bound-time comparison".into(),
            format!(
                "canonical point: mu={} nu={} alpha={} phi={} horizon={}",
                point.mu, point.nu, point.alpha, point.phi, horizon
            ),
        ],
        columns: names(&[
            "mu",
            "nu",
            "alpha",
            "phi",
            "tau_ml",
            "tau_mt",
            "tau_wml",
            "tau_wmt",
            "tau_comb",
            "tau_g",
            "delta_tau",
            "region",
        ]),
        rows: vec![vec![
            Cell::Float(point.mu),
            Cell::Float(point.nu),
            Cell::Float(point.alpha),
            Cell::Float(point.phi),
            Cell::OptFloat(tau_ml),
            Cell::OptFloat(tau_mt),
            Cell::OptFloat(tau_wml),
            Cell::OptFloat(tau_wmt),
            Cell::OptFloat(tau_comb),
            Cell::OptFloat(tau_g),
            Cell::OptFloat(delta_tau),
            Cell::Text(region.to_string()),
        ]],
        summary: Vec::new(),
    })
}

/// Gain–loss chain construction, regime, and anchored spectrum.
fn wpt_report(params: &WptParams) -> CliResult<Report> {
    let (h, regime) = build_wpt(params);
    let sys = build_biorthogonal(&h, BUILD_TOL)?;
    let spec = shift_spectrum(&sys);
    let shift = spec.shift();
    let bandwidth = spec.omega_max();
    let tau_min = (bandwidth > 0.0).then(|| PI / bandwidth);

    let mut columns = names(&["kappa", "eta", "sigma", "regime", "shift_re", "shift_im"]);
    columns.extend((0..spec.len()).map(|n| format!("omega_{n}")));
    columns.extend((0..spec.len()).map(|n| format!("gamma_{n}")));
    columns.push("tau_min".into());

    let mut row = vec![
        Cell::Float(params.kappa),
        Cell::Float(params.eta),
        Cell::Float(params.sigma_res),
        Cell::Text(regime.to_string()),
        Cell::Float(shift.re),
        Cell::Float(shift.im),
    ];
    row.extend(spec.omega().iter().map(|&w| Cell::Float(w)));
    row.extend(spec.gamma().iter().map(|&g| Cell::Float(g)));
    row.push(Cell::OptFloat(tau_min));

    Ok(Report {
        comments: vec![
            "gain-loss three-level chain: regime and anchored spectrum".into(),
            "tau_min = pi/omega'_N is the fastest-state orthogonality time".into(),
        ],
        columns,
        rows: vec![row],
        summary: Vec::new(),
    })
}

/// Near-fastest family member: construction and functional evaluation.
fn near_fis_report(request: &NearFisSpec) -> CliResult<Report> {
    struct MemberView {
        family: &'static str,
        ratio_alpha: f64,
        delta: Option<f64>,
        k: Option<u64>,
        tau: f64,
        b_coefficient: Option<f64>,
        beta: Option<f64>,
        f_ml_predicted: Option<f64>,
        f_mt_predicted: Option<f64>,
        spectrum: ShiftedSpectrum,
        state: EigenbasisState,
        model_line: String,
    }

    let view = match request {
        NearFisSpec::BelowOne {
            ratio_alpha,
            delta,
            gamma_mid,
            gamma_top,
            tau,
        } => {
            let spectrum =
                qsl_core::analysis::below_one_spectrum(*gamma_mid, *gamma_top, *ratio_alpha, *delta, *tau)?;
            let member = near_fis_below_one(&spectrum, *ratio_alpha, *delta, *tau)?;
            MemberView {
                family: "below-one",
                ratio_alpha: *ratio_alpha,
                delta: Some(*delta),
                k: None,
                tau: *tau,
                b_coefficient: Some(member.b_coefficient),
                beta: None,
                f_ml_predicted: None,
                f_mt_predicted: None,
                spectrum,
                state: member.state,
                model_line: format!(
                    "below-one family: ratio_alpha={ratio_alpha} delta={delta} \
                     gamma_mid={gamma_mid} gamma_top={gamma_top} tau={tau}"
                ),
            }
        }
        NearFisSpec::AboveOne {
            ratio_alpha,
            k,
            gamma_bottom,
            gamma_mid,
            tau,
        } => {
            let member = near_fis_above_one(*gamma_bottom, *gamma_mid, *k, *ratio_alpha, *tau)?;
            MemberView {
                family: "above-one",
                ratio_alpha: *ratio_alpha,
                delta: None,
                k: Some(*k as u64),
                tau: *tau,
                b_coefficient: None,
                beta: Some(member.beta),
                f_ml_predicted: Some(member.f_ml_predicted),
                f_mt_predicted: Some(member.f_mt_predicted),
                spectrum: member.family.spectrum().clone(),
                state: member.state,
                model_line: format!(
                    "above-one family: ratio_alpha={ratio_alpha} k={k} \
                     gamma_bottom={gamma_bottom} gamma_mid={gamma_mid} tau={tau}"
                ),
            }
        }
    };

    let ml = f_ml(&view.state, &view.spectrum, view.tau)?.value;
    let mt = f_mt(&view.state, &view.spectrum, view.tau)?.value;
    let ratio = alpha_ratio(&view.state, &view.spectrum, view.tau)?;

    let mut columns = names(&[
        "family",
        "ratio_alpha",
        "delta",
        "k",
        "tau",
        "f_ml",
        "f_mt",
        "alpha_ratio",
        "b_coefficient",
        "beta",
        "f_ml_predicted",
        "f_mt_predicted",
    ]);
    columns.extend((0..view.spectrum.len()).map(|n| format!("omega_{n}")));
    columns.extend((0..view.spectrum.len()).map(|n| format!("gamma_{n}")));
    columns.extend(coeff_columns(view.spectrum.len()));

    let mut row = vec![
        Cell::Text(view.family.into()),
        Cell::Float(view.ratio_alpha),
        Cell::OptFloat(view.delta),
        Cell::OptInt(view.k),
        Cell::Float(view.tau),
        Cell::Float(ml),
        Cell::Float(mt),
        Cell::Float(ratio),
        Cell::OptFloat(view.b_coefficient),
        Cell::OptFloat(view.beta),
        Cell::OptFloat(view.f_ml_predicted),
        Cell::OptFloat(view.f_mt_predicted),
    ];
    row.extend(view.spectrum.omega().iter().map(|&w| Cell::Float(w)));
    row.extend(view.spectrum.gamma().iter().map(|&g| Cell::Float(g)));
    row.extend(coeff_cells(&view.state));

    Ok(Report {
        comments: vec![
            "near-fastest family member: state orthogonal exactly at tau".into(),
            view.model_line,
        ],
        columns,
        rows: vec![row],
        summary: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use qsl_core::analysis::delta_tau_scan;

    #[test]
    fn parallel_scan_matches_the_sequential_reference() {
        let parallel = scan_rows(12, 9, 80.0);
        let reference = delta_tau_scan(12, 9, 80.0);
        assert_eq!(parallel.len(), reference.len());
        for (p, r) in parallel.iter().zip(&reference) {
            assert_eq!(p.region, r.region);
            assert_eq!(p.delta_tau, r.delta_tau);
            assert!((p.theta - r.theta).abs() < 1e-15);
            assert!((p.alpha - r.alpha_angle).abs() < 1e-15);
        }
    }
}
