//! Fastest-initial-state construction, near-saturation state families, the
//! saturation-ratio diagnostic, and the two-level region scan.
//!
//! # Fastest initial state
//!
//! For an anchored spectrum with bandwidth ω′_N > 0, [`fis`] builds the
//! unique two-level superposition of the ω′ = 0 and ω′ = ω′_N levels whose
//! survival amplitude vanishes at τ = π/ω′_N — the earliest orthogonality
//! time any state of that spectrum can reach. The weights
//! |c̃_n| ∝ exp(πγ′_n/(2ω′_N)) tilt population toward the faster-decaying
//! level exactly enough that the two damped populations are equal at τ, and
//! both saturation functionals equal π/2 there.
//!
//! # Saturation ratio
//!
//! [`alpha_ratio`] evaluates α = 𝓕_MT(τ)/𝓕_ML(τ) at a state's
//! orthogonality time. The fastest state gives exactly 1; the two
//! constructive families below give α on either side of 1 and are named
//! accordingly.
//!
//! # Near-fastest families
//!
//! Both families are three-level constructions orthogonal at a prescribed
//! τ, approaching saturation of one functional while the other stays a
//! factor ≈ 1/α away:
//!
//! * **below-one** ([`near_fis_below_one`]): phases x₁ = π(1−α)/(2α) and
//!   x₂ = π + x₁ − δ·sin x₁ at τ, zero-frequency level undamped, middle
//!   level decaying fastest. As δ → 0 the zero-frequency population
//!   vanishes and 𝓕_MT(τ) → π/2 from above with slope `b_coefficient`
//!   (valid in the small-rate regime).
//! * **above-one** ([`near_fis_above_one`]): levels {0, 1, 2k+1} of a
//!   π/τ-spaced ladder, bottom level decaying fastest, top level undamped.
//!   As k → ∞ the high-mode weight β/k² vanishes and 𝓕_ML(τ) → π/2 from
//!   above with the printed 1/k coefficient.
//!
//! Both constructions solve the orthogonality conditions
//! Re S(τ) = Im S(τ) = 0 exactly, not only to the leading order used for
//! the printed coefficients.
//!
//! # Region scan
//!
//! [`delta_tau_scan`] classifies the two-level parameter plane
//! (θ, α) ↦ (μ′, ν′) = (sin θ, cos θ) by which bound time wins:
//! Δτ′ = τ′_comb − τ′_G is negative in region A, nonnegative in region B,
//! and undefined in region C (either time absent). τ′_G comes from the
//! closed form [`two_level_tau_g`]; τ′_comb from the grid-and-refine solver
//! in [`crate::bounds`].

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use crate::biortho::ShiftedSpectrum;
use crate::bounds::{f_ml, f_mt, tau_comb};
use crate::dynamics::EigenbasisState;
use crate::models::{relabeled, StateAngles, TwoLevelCanonical};
use crate::{c64, C64, Error, Result};

/// A constructive family of states near the fastest one, labeled by its
/// target saturation ratio α.
#[derive(Debug, Clone, PartialEq)]
pub enum NearFisFamily {
    /// Three-level construction with α < 1: the MT-type functional
    /// saturates while the ML-type stays above π/2 by the factor 1/α.
    AlphaBelowOne {
        /// Target saturation ratio α ∈ (1/3, 1).
        ratio_alpha: f64,
        /// Perturbation strength δ ∈ [0, 0.2); δ = 0 reduces the member to
        /// an effective two-level pair.
        delta: f64,
        /// The anchored three-level spectrum realizing the phase targets.
        spectrum: ShiftedSpectrum,
    },
    /// High-mode construction with α > 1 on ladder levels {0, 1, 2k+1}:
    /// the ML-type functional saturates as k → ∞.
    AlphaAboveOne {
        /// Target saturation ratio α > 1.
        ratio_alpha: f64,
        /// Mode index k ≥ 1 of the high ladder level.
        k: usize,
        /// The anchored spectrum of the three represented levels.
        spectrum: ShiftedSpectrum,
    },
}

impl NearFisFamily {
    /// Target saturation ratio α.
    pub fn ratio_alpha(&self) -> f64 {
        match self {
            Self::AlphaBelowOne { ratio_alpha, .. } | Self::AlphaAboveOne { ratio_alpha, .. } => {
                *ratio_alpha
            }
        }
    }

    /// The anchored spectrum the family member lives on.
    pub fn spectrum(&self) -> &ShiftedSpectrum {
        match self {
            Self::AlphaBelowOne { spectrum, .. } | Self::AlphaAboveOne { spectrum, .. } => {
                spectrum
            }
        }
    }

    /// Perturbation strength δ (below-one regime only).
    pub fn delta(&self) -> Option<f64> {
        match self {
            Self::AlphaBelowOne { delta, .. } => Some(*delta),
            Self::AlphaAboveOne { .. } => None,
        }
    }

    /// Mode index k (above-one regime only).
    pub fn k(&self) -> Option<usize> {
        match self {
            Self::AlphaBelowOne { .. } => None,
            Self::AlphaAboveOne { k, .. } => Some(*k),
        }
    }
}

/// A below-one family member.
#[derive(Debug, Clone)]
pub struct BelowOneMember {
    /// Family parameters and spectrum.
    pub family: NearFisFamily,
    /// The constructed state, exactly orthogonal at the family's τ.
    pub state: EigenbasisState,
    /// First-order overshoot coefficient B(τ):
    /// 𝓕_MT(τ) = π/2 + δ·B(τ) + O(δ²) when the decay rates are small
    /// against 1/τ. At order-one rates the third level's appearance also
    /// shifts the support-restored decay exponent, so the overshoot is no
    /// longer linear in δ alone.
    pub b_coefficient: f64,
}

/// An above-one family member.
#[derive(Debug, Clone)]
pub struct AboveOneMember {
    /// Family parameters and spectrum.
    pub family: NearFisFamily,
    /// The constructed state, exactly orthogonal at the family's τ.
    pub state: EigenbasisState,
    /// High-mode weight ratio β: the unnormalized top-level population is
    /// β/k².
    pub beta: f64,
    /// Leading-order prediction for 𝓕_ML(τ), approaching π/2 as 1/k.
    pub f_ml_predicted: f64,
    /// Compact-form prediction for 𝓕_MT(τ) ≈ α·π/2.
    pub f_mt_predicted: f64,
}

/// Fastest initial state of a spectrum: the two-level superposition of the
/// ω′ = 0 and ω′ = ω′_N levels with weights |c̃_n| ∝ exp(πγ′_n/(2ω′_N)),
/// real and normalized.
///
/// Its survival amplitude vanishes at τ = π/ω′_N (the spectrum's minimal
/// orthogonality time) where both saturation functionals equal π/2. The
/// support levels are argmin/argmax of ω′ — indices 0 and N in the anchored
/// ascending order. The weights are evaluated in log space relative to the
/// larger exponent, so extreme rate/bandwidth ratios cannot overflow.
///
/// # Errors
/// [`Error::ZeroBandwidth`] when ω′_N = 0 (no oscillation to become
/// orthogonal through).
pub fn fis(spec: &ShiftedSpectrum) -> Result<EigenbasisState> {
    let bandwidth = spec.omega_max();
    if bandwidth <= 0.0 {
        return Err(Error::ZeroBandwidth);
    }
    let n = spec.len();
    let gamma = spec.gamma();
    let scale = PI / (2.0 * bandwidth);
    let anchor = gamma[0].max(gamma[n - 1]);
    let mut coeffs = vec![C64::ZERO; n];
    coeffs[0] = c64(libm::exp(scale * (gamma[0] - anchor)), 0.0);
    coeffs[n - 1] = c64(libm::exp(scale * (gamma[n - 1] - anchor)), 0.0);
    EigenbasisState::new(coeffs)
}

/// Saturation ratio α = 𝓕_MT(τ)/𝓕_ML(τ) at the state's orthogonality
/// time τ.
///
/// Classifies which saturation functional sits at its π/2 threshold:
/// the fastest state gives exactly 1; below-one family members give their
/// target α < 1 (exactly so at δ = 0); above-one members give α > 1 up to
/// O(1/k). Equivalently it orders the two bound times — ratio < 1 means the
/// MT-type functional is at π/2 while the ML-type overshoots, so the
/// MT-type bound time is the later (binding) one, and conversely.
///
/// # Errors
/// Propagates [`Error::Underflow`] and [`Error::NegativeRadicand`] from the
/// functional evaluations.
pub fn alpha_ratio(state: &EigenbasisState, spec: &ShiftedSpectrum, tau: f64) -> Result<f64> {
    let ml = f_ml(state, spec, tau)?.value;
    let mt = f_mt(state, spec, tau)?.value;
    Ok(mt / ml)
}

/// Phase target x₁ = π(1−α)/(2α) of the below-one family.
fn below_one_x1(ratio_alpha: f64) -> f64 {
    PI * (1.0 - ratio_alpha) / (2.0 * ratio_alpha)
}

fn check_below_one_shape(ratio_alpha: f64, delta: f64) -> Result<()> {
    if !(ratio_alpha > 1.0 / 3.0 && ratio_alpha < 1.0) {
        return Err(Error::BadOrdering {
            detail: "below-one family needs ratio_alpha in (1/3, 1)",
        });
    }
    if !(0.0..0.2).contains(&delta) {
        return Err(Error::BadOrdering {
            detail: "below-one family needs delta in [0, 0.2)",
        });
    }
    Ok(())
}

/// Build the anchored three-level spectrum of the below-one family:
/// frequencies {0, x₁/τ, x₂/τ} with x₁ = π(1−α)/(2α) and
/// x₂ = π + x₁ − δ·sin x₁, decay rates (0, `gamma_mid`, `gamma_top`).
///
/// The zero-frequency level is undamped and the middle level decays
/// fastest — the ordering [`near_fis_below_one`] requires.
///
/// # Errors
/// [`Error::BadOrdering`] — parameters outside the family's domain
/// (needs `gamma_mid` > `gamma_top` > 0, `ratio_alpha` ∈ (1/3, 1),
/// `delta` ∈ [0, 0.2)).
pub fn below_one_spectrum(
    gamma_mid: f64,
    gamma_top: f64,
    ratio_alpha: f64,
    delta: f64,
    tau: f64,
) -> Result<ShiftedSpectrum> {
    assert!(tau > 0.0, "tau must be positive");
    if !(gamma_mid > gamma_top && gamma_top > 0.0) {
        return Err(Error::BadOrdering {
            detail: "below-one family needs gamma_mid > gamma_top > 0",
        });
    }
    check_below_one_shape(ratio_alpha, delta)?;
    let x1 = below_one_x1(ratio_alpha);
    let x2 = PI + x1 - delta * libm::sin(x1);
    ShiftedSpectrum::from_parts(
        vec![0.0, x1 / tau, x2 / tau],
        vec![0.0, gamma_mid, gamma_top],
    )
}

/// First-order MT-overshoot coefficient B(τ) of the below-one family, in
/// the rate variables g_m (middle level) and gap = g_m − g_t (middle/top
/// rate difference).
fn below_one_b(gamma_mid: f64, gap: f64, ratio_alpha: f64, tau: f64) -> f64 {
    let x1 = below_one_x1(ratio_alpha);
    let e2 = libm::exp(gap * tau);
    let d1 = 1.0 + e2;
    let prefactor = d1 / (2.0 * e2);
    let inv_a2 = 1.0 / (ratio_alpha * ratio_alpha);
    let terms = -(gamma_mid - gap) * tau * e2 / (PI * d1)
        - 2.0 * gap * tau * libm::exp((2.0 * gap - gamma_mid) * tau) / (PI * d1 * d1)
        - (gamma_mid + gap) * tau * libm::exp(-gamma_mid * tau) / (PI * d1)
        + PI * libm::exp(-gamma_mid * tau) * (1.0 + inv_a2) / (4.0 * d1)
        - PI * libm::exp((gap - gamma_mid) * tau) / (d1 * d1)
        - PI * (1.0 - e2) * libm::cos(x1) / (2.0 * d1 * d1)
        - libm::sin(x1) / d1;
    prefactor * terms
}

/// Construct the below-one family member on a matching spectrum: a state
/// exactly orthogonal at τ whose MT-type functional is just above π/2.
///
/// With x₁ = ω′₁τ, s₁ = sin x₁, the populations solving
/// Re S(τ) = Im S(τ) = 0 exactly are
///
/// ```text
/// p₀ ∝ e^{−γ′₂τ} · sin(δ·s₁)/s₁
/// p₁ ∝ e^{(γ′₁−γ′₂)τ} · sin(x₁ − δ·s₁)/s₁
/// p₂ ∝ 1
/// ```
///
/// δ = 0 empties the zero-frequency level, leaving an effective two-level
/// pair with 𝓕_MT(τ) = π/2 and α = 𝓕_MT/𝓕_ML = `ratio_alpha` exactly.
///
/// # Errors
/// [`Error::DimensionMismatch`] — spectrum is not three-level;
/// [`Error::BadOrdering`] — parameters outside the family's domain, decay
/// ordering not (0, fastest, intermediate), or phases ω′τ off the targets
/// (x₁, π + x₁ − δ·sin x₁) by more than 1e−9 relative.
pub fn near_fis_below_one(
    spec: &ShiftedSpectrum,
    ratio_alpha: f64,
    delta: f64,
    tau: f64,
) -> Result<BelowOneMember> {
    assert!(tau > 0.0, "tau must be positive");
    check_below_one_shape(ratio_alpha, delta)?;
    if spec.len() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: spec.len(),
        });
    }
    let gamma = spec.gamma();
    if !(gamma[0] == 0.0 && gamma[1] > gamma[2] && gamma[2] > 0.0) {
        return Err(Error::BadOrdering {
            detail: "below-one spectrum needs decay rates (0, gamma_mid, gamma_top) \
                     with gamma_mid > gamma_top > 0",
        });
    }
    let x1 = below_one_x1(ratio_alpha);
    let x2 = PI + x1 - delta * libm::sin(x1);
    let omega = spec.omega();
    if libm::fabs(omega[1] * tau - x1) > 1e-9 * x1.max(1.0)
        || libm::fabs(omega[2] * tau - x2) > 1e-9 * x2.max(1.0)
    {
        return Err(Error::BadOrdering {
            detail: "spectrum phases at tau do not match the below-one targets \
                     x1 and pi + x1 - delta*sin(x1)",
        });
    }

    let s1 = libm::sin(x1);
    let p0 = libm::exp(-gamma[2] * tau) * libm::sin(delta * s1) / s1;
    let p1 = libm::exp((gamma[1] - gamma[2]) * tau) * libm::sin(x1 - delta * s1) / s1;
    let state = EigenbasisState::from_populations(&[p0, p1, 1.0])?;
    let b_coefficient = below_one_b(gamma[1], gamma[1] - gamma[2], ratio_alpha, tau);
    Ok(BelowOneMember {
        family: NearFisFamily::AlphaBelowOne {
            ratio_alpha,
            delta,
            spectrum: spec.clone(),
        },
        state,
        b_coefficient,
    })
}

/// Build the anchored spectrum of the above-one family: ladder levels
/// {0, 1, 2k+1} at frequencies {0, π/τ, (2k+1)π/τ} with decay rates
/// (`gamma_bottom`, `gamma_mid`, 0) — the bottom level decays fastest and
/// the high mode is undamped.
///
/// # Errors
/// [`Error::BadOrdering`] — needs `gamma_bottom` > `gamma_mid` > 0 and
/// k ≥ 1.
pub fn above_one_spectrum(
    gamma_bottom: f64,
    gamma_mid: f64,
    k: usize,
    tau: f64,
) -> Result<ShiftedSpectrum> {
    assert!(tau > 0.0, "tau must be positive");
    if !(gamma_bottom > gamma_mid && gamma_mid > 0.0) {
        return Err(Error::BadOrdering {
            detail: "above-one family needs gamma_bottom > gamma_mid > 0",
        });
    }
    if k == 0 {
        return Err(Error::BadOrdering {
            detail: "above-one family needs mode index k >= 1",
        });
    }
    let top = (2 * k + 1) as f64;
    ShiftedSpectrum::from_parts(
        vec![0.0, PI / tau, top * PI / tau],
        vec![gamma_bottom, gamma_mid, 0.0],
    )
}

/// Construct the above-one family member: a state on ladder levels
/// {0, 1, 2k+1}, exactly orthogonal at τ, whose ML-type functional is just
/// above π/2.
///
/// In the rate gaps g₁ = `gamma_bottom` − `gamma_mid` and
/// g_K = `gamma_bottom`, the high-mode weight ratio is
///
/// ```text
/// β = ¼(α²−1) / (1 + e^{−g₁τ} − (α²/k)·e^{gamma_mid·τ})
/// ```
///
/// and the populations (p₀, p₁, p_K) ∝ ((1−β/k²)e^{g₁τ} + (β/k²)e^{g_Kτ},
/// 1−β/k², β/k²) satisfy the orthogonality constraint
/// p₀e^{−g_Kτ} = p₁e^{−gamma_mid·τ} + p_K exactly. The predictions are the
/// leading-order forms: f_ml_predicted = π/2 +
/// π(α²−1)e^{gamma_mid·τ}/(4k(1+e^{−g₁τ})) and
/// f_mt_predicted = (π/2)√(1+4β(1+e^{−g₁τ})).
///
/// # Errors
/// [`Error::BadOrdering`] — rate ordering, k = 0, or `ratio_alpha` ≤ 1;
/// [`Error::DenominatorSignFlip`] — the β denominator is not positive
/// (k too small for the requested α, τ, rates), including the borderline
/// case where the high-mode weight β/k² reaches 1.
pub fn near_fis_above_one(
    gamma_bottom: f64,
    gamma_mid: f64,
    k: usize,
    ratio_alpha: f64,
    tau: f64,
) -> Result<AboveOneMember> {
    if ratio_alpha <= 1.0 {
        return Err(Error::BadOrdering {
            detail: "above-one family needs ratio_alpha > 1",
        });
    }
    let spectrum = above_one_spectrum(gamma_bottom, gamma_mid, k, tau)?;

    let alpha_sq = ratio_alpha * ratio_alpha;
    let gap1 = gamma_bottom - gamma_mid;
    let e1 = libm::exp(-gap1 * tau);
    let denominator = 1.0 + e1 - (alpha_sq / k as f64) * libm::exp(gamma_mid * tau);
    if denominator <= 0.0 {
        return Err(Error::DenominatorSignFlip { denominator });
    }
    let beta = 0.25 * (alpha_sq - 1.0) / denominator;
    let weight = beta / (k * k) as f64;
    if weight >= 1.0 {
        return Err(Error::DenominatorSignFlip { denominator });
    }

    let p0 = (1.0 - weight) * libm::exp(gap1 * tau) + weight * libm::exp(gamma_bottom * tau);
    let state = EigenbasisState::from_populations(&[p0, 1.0 - weight, weight])?;

    let f_ml_predicted = FRAC_PI_2
        + PI * (alpha_sq - 1.0) * libm::exp(gamma_mid * tau) / (4.0 * k as f64 * (1.0 + e1));
    let f_mt_predicted = FRAC_PI_2 * libm::sqrt(1.0 + 4.0 * beta * (1.0 + e1));

    Ok(AboveOneMember {
        family: NearFisFamily::AlphaAboveOne {
            ratio_alpha,
            k,
            spectrum,
        },
        state,
        beta,
        f_ml_predicted,
        f_mt_predicted,
    })
}

/// Closed-form geometric-bound time of a canonical two-level pair: the τ
/// with 𝓕_G(τ) = π/2, or `None` when the functional never reaches π/2.
///
/// With r = √(μ²+ν²), the crossing condition inverts to
/// τ_G = ln(tan(α + πν/(2r)) / tan α) / ν, which exists iff the target
/// angle α + πν/(2r) lies in (0, π/2); the ν → 0 limit is π/(r·sin 2α).
/// 𝓕_G is strictly increasing in t, so the crossing is unique.
///
/// Expects the relabeled convention μ ≥ 0, α ∈ (0, π/2).
pub fn two_level_tau_g(mu: f64, nu: f64, alpha: f64) -> Option<f64> {
    debug_assert!(mu >= 0.0, "canonical gap must be relabeled to mu >= 0");
    debug_assert!(
        alpha > 0.0 && alpha < FRAC_PI_2,
        "state angle must lie in (0, pi/2)"
    );
    let speed = libm::hypot(mu, nu);
    if speed == 0.0 {
        return None;
    }
    let target = alpha + PI * nu / (2.0 * speed);
    if target <= 0.0 || target >= FRAC_PI_2 {
        return None;
    }
    if libm::fabs(nu) <= 1e-9 * speed {
        return Some(PI / (speed * libm::sin(2.0 * alpha)));
    }
    Some(libm::log(libm::tan(target) / libm::tan(alpha)) / nu)
}

/// Both bound times of a canonical two-level pair at state angle
/// α ∈ (0, π/2): (τ_comb from the saturation functionals, τ_G closed form).
///
/// τ_comb is searched on (0, horizon]; τ_G is analytic and unconstrained by
/// the horizon.
pub fn scan_point(
    canonical: &TwoLevelCanonical,
    alpha: f64,
    horizon: f64,
) -> (Option<f64>, Option<f64>) {
    let angles = StateAngles {
        alpha,
        phi: core::f64::consts::TAU,
    };
    let (spec, state) =
        models_canonical(canonical, &angles).expect("finite canonical inputs build");
    let comb = tau_comb(&state, &spec, horizon)
        .expect("combined bound solving cannot fail for two-level spectra");
    let (mu, nu, alpha) = relabeled(canonical, alpha);
    (comb, two_level_tau_g(mu, nu, alpha))
}

fn models_canonical(
    canonical: &TwoLevelCanonical,
    angles: &StateAngles,
) -> Result<(ShiftedSpectrum, EigenbasisState)> {
    crate::models::canonical_system(canonical, angles)
}

/// Which bound time wins in a scanned cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// Δτ′ < 0: the geometric time is the later (stronger) bound.
    A,
    /// Δτ′ ≥ 0: the combined saturation time is at least as strong.
    B,
    /// Either bound time absent — the geometric crossing condition has no
    /// solution, or neither saturation functional reaches π/2 on the
    /// horizon.
    C,
}

impl core::fmt::Display for Region {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Region::A => "A",
            Region::B => "B",
            Region::C => "C",
        })
    }
}

/// One cell of the two-level comparison scan.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionScanCell {
    /// Spectral angle θ ∈ (0, π).
    pub theta: f64,
    /// State angle α ∈ (0, π/2).
    pub alpha_angle: f64,
    /// Frequency gap μ′ = sin θ ≥ 0.
    pub mu: f64,
    /// Decay asymmetry ν′ = cos θ.
    pub nu: f64,
    /// Δτ′ = τ′_comb − τ′_G when both bound times exist.
    pub delta_tau: Option<f64>,
    /// Comparison region; C exactly when `delta_tau` is `None`.
    pub region: Region,
}

/// Classify one (θ, α) cell of the unit-speed two-level plane:
/// (μ′, ν′) = (sin θ, cos θ).
pub fn scan_cell(theta: f64, alpha_angle: f64, horizon: f64) -> RegionScanCell {
    let (mu, nu) = (libm::sin(theta), libm::cos(theta));
    let (comb, geometric) = scan_point(&TwoLevelCanonical { mu, nu }, alpha_angle, horizon);
    let delta_tau = match (comb, geometric) {
        (Some(c), Some(g)) => Some(c - g),
        _ => None,
    };
    let region = match delta_tau {
        Some(d) if d < 0.0 => Region::A,
        Some(_) => Region::B,
        None => Region::C,
    };
    RegionScanCell {
        theta,
        alpha_angle,
        mu,
        nu,
        delta_tau,
        region,
    }
}

/// Scan midpoint grids θ_i = (i+½)·π/`theta_cells`,
/// α_j = (j+½)·(π/2)/`alpha_cells` in row-major order (θ outer, α inner).
///
/// Midpoints keep every cell strictly inside the open parameter rectangle:
/// the poles θ ∈ {0, π} (zero bandwidth) and the α boundaries are never
/// evaluated. Cells are independent; this sequential driver is the
/// deterministic reference ordering for any parallel caller.
pub fn delta_tau_scan(theta_cells: usize, alpha_cells: usize, horizon: f64) -> Vec<RegionScanCell> {
    assert!(theta_cells > 0 && alpha_cells > 0, "grids must be nonempty");
    assert!(horizon > 0.0, "horizon must be positive");
    let mut cells = Vec::with_capacity(theta_cells * alpha_cells);
    for i in 0..theta_cells {
        let theta = (i as f64 + 0.5) * PI / theta_cells as f64;
        for j in 0..alpha_cells {
            let alpha = (j as f64 + 0.5) * FRAC_PI_2 / alpha_cells as f64;
            cells.push(scan_cell(theta, alpha, horizon));
        }
    }
    cells
}
