//! The QSL bound functionals and their bound times.
//!
//! Four functionals of (state, spectrum, t) control the orthogonality time τ
//! through the necessary condition 𝓕_X(τ) ≥ π/2:
//!
//! * 𝓕_ML(t) = t·⟨Ω̂⟩_t — the damped mean frequency times t;
//! * 𝓕_MT(t) = √(−R(t)·t + ΔΩ²·t²·e^{−(σ₀+σ₁)t}) / D(t) — the frequency
//!   variance corrected by the decay asymmetry R(t);
//! * 𝓕_wML, 𝓕_wMT — weaker closed forms obtained by extremizing the decay
//!   dependence (γ′ → γ′_max), which dominate their strict counterparts;
//! * 𝓕_G(t) — the two-level geometric functional built from the accumulated
//!   Berry-connection phase along the evolution path.
//!
//! Here D(t) = Σ e^{−γ′_n t}p_n, R(t) = 4Σγ′_n e^{−2γ′_n t}p_n² −
//! 2Σ_{n,m}γ′_n e^{−(γ′_n+γ′_m)t}p_n p_m, ΔΩ² = ½Σ_{n,m}(ω′_n−ω′_m)²p_n p_m,
//! and σ₀ ≤ σ₁ are the two smallest decay rates **on the state's support**
//! (levels with p_n > 0). On full support σ₀+σ₁ = γ′_φ(1) since γ′_φ(0) = 0;
//! restricting to the support is what the underlying inequality chain
//! actually uses, and it is what makes the MT functional saturate exactly at
//! the fastest initial state, whose support is only the extreme level pair.
//!
//! Solving 𝓕_X(τ_X) = π/2 gives the bound time τ_X; the combined bound is
//! τ_comb = max{τ_ML, τ_MT}. For strongly amplified two-level systems the
//! functionals can stay below π/2 forever, so bound times are optional.

use crate::biortho::ShiftedSpectrum;
use crate::dynamics::EigenbasisState;
use crate::linalg::find_root_bracketed;
use crate::{Error, Result};
use core::f64::consts::FRAC_PI_2;

/// Denominator floor below which a functional is no longer representable.
const UNDERFLOW_FLOOR: f64 = 1e-150;

/// Radicand clamp: values in [−1e−12, 0) are rounding noise and clamp to 0;
/// anything below is a domain error.
const RADICAND_CLAMP: f64 = -1e-12;

/// Which bound functional a value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    /// ML-type: damped mean frequency.
    Ml,
    /// MT-type: damped frequency variance with the R(t) correction.
    Mt,
    /// Weak ML-type: decay extremized to γ′_max.
    Wml,
    /// Weak MT-type: decay extremized to γ′_max.
    Wmt,
    /// Two-level geometric bound.
    G,
}

impl core::fmt::Display for BoundKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            BoundKind::Ml => "ml",
            BoundKind::Mt => "mt",
            BoundKind::Wml => "wml",
            BoundKind::Wmt => "wmt",
            BoundKind::G => "g",
        })
    }
}

/// One functional value 𝓕_kind(t).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundEvaluation {
    /// Functional family.
    pub kind: BoundKind,
    /// Evaluation time.
    pub t: f64,
    /// 𝓕_kind(t), always finite.
    pub value: f64,
}

/// The pieces the MT-type functional is assembled from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MtComponents {
    /// Initial-state frequency variance ΔΩ² = ½Σ(ω′_n−ω′_m)²p_n p_m ≥ 0.
    pub variance: f64,
    /// Decay-asymmetry correction R(t) (either sign).
    pub r_value: f64,
    /// Damped normalization D(t) = Σ e^{−γ′_n t}p_n > 0.
    pub denom: f64,
    /// Second-smallest decay rate of the whole spectrum, γ′_φ(1).
    pub gamma_phi1: f64,
    /// σ₀+σ₁: sum of the two smallest decay rates on the state's support.
    /// Equals `gamma_phi1` whenever the γ′ = 0 level is populated.
    pub support_decay_sum: f64,
}

/// ML-type functional: 𝓕_ML(t) = t·(Σω′_n e^{−γ′_n t}p_n)/(Σe^{−γ′_n t}p_n).
///
/// # Errors
/// [`Error::Underflow`] when the damped normalization collapses below
/// 1e−150.
pub fn f_ml(state: &EigenbasisState, spec: &ShiftedSpectrum, t: f64) -> Result<BoundEvaluation> {
    debug_assert!(t > 0.0, "evaluation time must be positive");
    debug_assert_eq!(state.dim(), spec.len());
    let mut num = 0.0_f64;
    let mut denom = 0.0_f64;
    for ((&c, &w), &g) in state
        .coeffs()
        .iter()
        .zip(spec.omega().iter())
        .zip(spec.gamma().iter())
    {
        let p = c.norm_sqr();
        if p == 0.0 {
            continue;
        }
        let damp = libm::exp(-g * t) * p;
        num += w * damp;
        denom += damp;
    }
    if denom < UNDERFLOW_FLOOR {
        return Err(Error::Underflow { t });
    }
    Ok(BoundEvaluation {
        kind: BoundKind::Ml,
        t,
        value: t * num / denom,
    })
}

/// Assemble ΔΩ², R(t), D(t), and the decay-exponent rates.
///
/// # Errors
/// [`Error::Underflow`] when D(t) < 1e−150.
pub fn mt_components(
    state: &EigenbasisState,
    spec: &ShiftedSpectrum,
    t: f64,
) -> Result<MtComponents> {
    debug_assert!(t > 0.0, "evaluation time must be positive");
    debug_assert_eq!(state.dim(), spec.len());
    let populations = state.populations();
    let omega = spec.omega();
    let gamma = spec.gamma();
    let n = populations.len();

    // Single-sum accumulators: D = Σe^{−γt}p, A = Σγe^{−γt}p,
    // B = Σγe^{−2γt}p².
    let mut denom = 0.0_f64;
    let mut a = 0.0_f64;
    let mut b = 0.0_f64;
    for i in 0..n {
        let p = populations[i];
        if p == 0.0 {
            continue;
        }
        let damp = libm::exp(-gamma[i] * t);
        denom += p * damp;
        a += gamma[i] * p * damp;
        b += gamma[i] * p * p * damp * damp;
    }
    if denom < UNDERFLOW_FLOOR {
        return Err(Error::Underflow { t });
    }
    // R = 4Σγe^{−2γt}p² − 2Σ_{n,m}γ_n e^{−(γ_n+γ_m)t}p_n p_m = 4B − 2AD.
    let r_value = 4.0 * b - 2.0 * a * denom;

    // ΔΩ² as the cancellation-free double sum over distinct pairs.
    let mut variance = 0.0_f64;
    for i in 0..n {
        if populations[i] == 0.0 {
            continue;
        }
        for j in (i + 1)..n {
            if populations[j] == 0.0 {
                continue;
            }
            let dw = omega[i] - omega[j];
            variance += dw * dw * populations[i] * populations[j];
        }
    }

    // Two smallest decay rates on the support.
    let mut sigma0 = f64::INFINITY;
    let mut sigma1 = f64::INFINITY;
    for i in 0..n {
        if populations[i] == 0.0 {
            continue;
        }
        let g = gamma[i];
        if g < sigma0 {
            sigma1 = sigma0;
            sigma0 = g;
        } else if g < sigma1 {
            sigma1 = g;
        }
    }
    let support_decay_sum = if sigma1.is_finite() {
        sigma0 + sigma1
    } else {
        2.0 * sigma0 // single-level support: variance is zero anyway
    };

    let gamma_phi1 = if spec.len() > 1 { spec.gamma_phi(1) } else { 0.0 };
    Ok(MtComponents {
        variance,
        r_value,
        denom,
        gamma_phi1,
        support_decay_sum,
    })
}

/// MT-type functional:
/// 𝓕_MT(t) = √(−R(t)·t + ΔΩ²·t²·e^{−(σ₀+σ₁)t}) / D(t).
///
/// # Errors
/// [`Error::Underflow`] from the components; [`Error::NegativeRadicand`]
/// when the radicand falls below −1e−12 (the functional is out of its
/// domain at this t — it is only asserted at orthogonality times). Radicands
/// in [−1e−12, 0) clamp to zero.
pub fn f_mt(state: &EigenbasisState, spec: &ShiftedSpectrum, t: f64) -> Result<BoundEvaluation> {
    let parts = mt_components(state, spec, t)?;
    let radicand =
        -parts.r_value * t + parts.variance * t * t * libm::exp(-parts.support_decay_sum * t);
    let radicand = clamp_radicand(radicand, t, &parts)?;
    Ok(BoundEvaluation {
        kind: BoundKind::Mt,
        t,
        value: libm::sqrt(radicand) / parts.denom,
    })
}

fn clamp_radicand(radicand: f64, t: f64, parts: &MtComponents) -> Result<f64> {
    if radicand >= 0.0 {
        Ok(radicand)
    } else if radicand >= RADICAND_CLAMP {
        Ok(0.0)
    } else {
        Err(Error::NegativeRadicand {
            t,
            radicand,
            r_value: parts.r_value,
            variance: parts.variance,
        })
    }
}

/// Both weak bounds at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakBounds {
    /// 𝓕_wML(t) = ⟨Ω̂(0)⟩·t / e^{−γ′_max t} ≥ 𝓕_ML(t).
    pub wml: BoundEvaluation,
    /// 𝓕_wMT(t) = √(ΔΩ²·t²·e^{−γ′_φ(1)t} + 2γ′_max·t) / e^{−γ′_max t}
    /// ≥ 𝓕_MT(t).
    pub wmt: BoundEvaluation,
}

/// The weak (closed-form) bounds. Both dominate their strict counterparts
/// at every t, with equality exactly when the shifted spectrum has γ′ ≡ 0:
/// the chains replace each e^{−γ′_n t} by the extremal e^{−γ′_max t} (in the
/// denominators), drop R(t) against its lower bound −2γ′_max, and relax the
/// variance exponent from σ₀+σ₁ to the spectrum-wide γ′_φ(1).
///
/// # Errors
/// [`Error::Underflow`] when e^{−γ′_max t} < 1e−150.
pub fn f_weak(state: &EigenbasisState, spec: &ShiftedSpectrum, t: f64) -> Result<WeakBounds> {
    debug_assert!(t > 0.0, "evaluation time must be positive");
    debug_assert_eq!(state.dim(), spec.len());
    let gamma_max = spec.gamma_max();
    let envelope = libm::exp(-gamma_max * t);
    if envelope < UNDERFLOW_FLOOR {
        return Err(Error::Underflow { t });
    }
    let populations = state.populations();
    let mean_omega: f64 = populations
        .iter()
        .zip(spec.omega().iter())
        .map(|(&p, &w)| p * w)
        .sum();
    let wml = BoundEvaluation {
        kind: BoundKind::Wml,
        t,
        value: mean_omega * t / envelope,
    };

    let parts = mt_components(state, spec, t)?;
    let radicand =
        parts.variance * t * t * libm::exp(-parts.gamma_phi1 * t) + 2.0 * gamma_max * t;
    let wmt = BoundEvaluation {
        kind: BoundKind::Wmt,
        t,
        value: libm::sqrt(radicand) / envelope,
    };
    Ok(WeakBounds { wml, wmt })
}

/// Two-level geometric functional
/// 𝓕_G(t) = (√(μ²+ν²)/ν)·(arctan(e^{νt}·tanα) − α),
/// where μ is the frequency splitting, ν the decay-rate difference
/// γ′₀ − γ′₁, and α the mixing angle (tan²α = p₁/p₀).
///
/// The ν → 0 limit is analytic; for |νt| below 1e−6 the two-term series
/// 𝓕_G ≈ √(μ²+ν²)·sinα·cosα·(t + ν t²·cos2α/2) replaces the closed form,
/// which is 0/0 there.
pub fn f_g_two_level(mu: f64, nu: f64, alpha: f64, t: f64) -> BoundEvaluation {
    debug_assert!(t >= 0.0);
    debug_assert!((0.0..=FRAC_PI_2).contains(&alpha));
    let speed = libm::sqrt(mu * mu + nu * nu);
    let value = if libm::fabs(nu * t) < 1e-6 {
        let (s, c) = (libm::sin(alpha), libm::cos(alpha));
        speed * s * c * (t + 0.5 * nu * t * t * libm::cos(2.0 * alpha))
    } else {
        let swept = libm::atan(libm::exp(nu * t) * libm::tan(alpha)) - alpha;
        speed / nu * swept
    };
    BoundEvaluation {
        kind: BoundKind::G,
        t,
        value,
    }
}

/// Smallest τ ∈ (0, horizon] with 𝓕_kind(τ) = π/2, or `None` when the
/// functional never reaches π/2 there (amplified two-level systems cap
/// below it).
///
/// A log-spaced grid from 1e−4/ω′_N to the horizon brackets the first
/// upward crossing, refined by Brent's method. Grid points where the
/// functional is out of domain (negative radicand, underflow) are skipped;
/// if the functional is already above π/2 at its first in-domain point, the
/// domain boundary (where the radicand vanishes, so the functional is ~0)
/// is bisected to recover a bracket.
///
/// # Errors
/// [`Error::DimensionMismatch`] for [`BoundKind::G`] on a spectrum with
/// more than two levels (the geometric form is two-level only).
pub fn tau_bound(
    kind: BoundKind,
    state: &EigenbasisState,
    spec: &ShiftedSpectrum,
    horizon: f64,
) -> Result<Option<f64>> {
    assert!(horizon > 0.0, "horizon must be positive");
    let eval: &dyn Fn(f64) -> Option<f64> = match kind {
        BoundKind::Ml => &|t| f_ml(state, spec, t).ok().map(|b| b.value),
        BoundKind::Mt => &|t| f_mt(state, spec, t).ok().map(|b| b.value),
        BoundKind::Wml => &|t| f_weak(state, spec, t).ok().map(|b| b.wml.value),
        BoundKind::Wmt => &|t| f_weak(state, spec, t).ok().map(|b| b.wmt.value),
        BoundKind::G => {
            if spec.len() != 2 {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    got: spec.len(),
                });
            }
            let mu = spec.omega()[1];
            let nu = spec.gamma()[0] - spec.gamma()[1];
            let p = state.populations();
            let alpha = libm::atan2(libm::sqrt(p[1]), libm::sqrt(p[0]));
            return Ok(solve_crossing(
                &|t| Some(f_g_two_level(mu, nu, alpha, t).value),
                horizon,
                grid_start(spec, horizon),
            ));
        }
    };
    Ok(solve_crossing(eval, horizon, grid_start(spec, horizon)))
}

/// Combined bound time τ_comb = max{τ_ML, τ_MT}; absent when either piece
/// is absent (the combination is only as strong as both halves).
pub fn tau_comb(
    state: &EigenbasisState,
    spec: &ShiftedSpectrum,
    horizon: f64,
) -> Result<Option<f64>> {
    let ml = tau_bound(BoundKind::Ml, state, spec, horizon)?;
    let mt = tau_bound(BoundKind::Mt, state, spec, horizon)?;
    Ok(match (ml, mt) {
        (Some(a), Some(b)) => Some(a.max(b)),
        _ => None,
    })
}

fn grid_start(spec: &ShiftedSpectrum, horizon: f64) -> f64 {
    let w = spec.omega_max();
    let start = if w > 0.0 { 1e-4 / w } else { 1e-4 * horizon };
    start.min(horizon / 2.0)
}

/// Scan a log grid for the first upward π/2 crossing and refine it.
fn solve_crossing(
    eval: &dyn Fn(f64) -> Option<f64>,
    horizon: f64,
    start: f64,
) -> Option<f64> {
    const GRID: usize = 1024;
    let ratio = libm::log(horizon / start);
    let grid_t = |i: usize| -> f64 {
        if i + 1 == GRID {
            horizon
        } else {
            start * libm::exp(ratio * i as f64 / (GRID - 1) as f64)
        }
    };

    let mut below: Option<(f64, f64)> = None; // last in-domain point < π/2
    let mut last_invalid: Option<f64> = None;
    for i in 0..GRID {
        let t = grid_t(i);
        let Some(value) = eval(t) else {
            last_invalid = Some(t);
            continue;
        };
        if value < FRAC_PI_2 {
            below = Some((t, value));
            continue;
        }
        // First grid point at or above π/2.
        let lo = match below {
            Some((t_lo, _)) => t_lo,
            None => {
                // In-domain region opened at a value already ≥ π/2: bisect
                // toward the domain boundary, where the functional vanishes.
                let mut bad = last_invalid.unwrap_or(0.0);
                let mut good = t;
                let mut found = None;
                for _ in 0..200 {
                    let mid = 0.5 * (bad + good);
                    match eval(mid) {
                        None => bad = mid,
                        Some(v) if v >= FRAC_PI_2 => good = mid,
                        Some(_) => {
                            found = Some(mid);
                            break;
                        }
                    }
                    if good - bad <= f64::EPSILON * good {
                        break;
                    }
                }
                found?
            }
        };
        let f = |x: f64| eval(x).map_or(-1.0, |v| v - FRAC_PI_2);
        return find_root_bracketed(f, lo, t, 1e-10).ok();
    }
    None
}

// ─────────────────────────────────────────────────────────────────────────
