//! Concrete model families: a fully parametrized two-level system and a
//! balanced gain–loss three-level chain.
//!
//! # Two-level family
//!
//! [`build_two_level`] constructs the traceless two-level Hamiltonian
//!
//! ```text
//! Ĥ = ξ · [ cos ϑ·e^{iϱ}      sin ϱ·sin β ]
//!         [ sin ϱ·cos β    −cos ϑ·e^{iϱ} ]
//! ```
//!
//! whose eigenvalues are λ_± = ±ξ√(cos²ϑ·e^{i2ϱ} + ½ sin²ϱ·sin 2β). Every
//! bound functional of a two-level system depends on the Hamiltonian only
//! through the complex eigenvalue gap, so the family is summarized by the
//! canonical pair [`TwoLevelCanonical`] with μ + iν = λ_+ − λ_−. The
//! principal square root keeps μ ≥ 0; inputs with μ < 0 are accepted by the
//! evaluation ops and relabeled via (μ, ν, α) → (−μ, −ν, π/2 − α), which
//! swaps the two levels and leaves every functional unchanged.
//!
//! [`two_level_bounds`] evaluates the ML-type, MT-type, and two-level
//! geometric functionals for a pure state with population cos²α on the
//! lower level, by building the canonical shifted spectrum and delegating
//! to the [`crate::bounds`] ops. In debug builds the ML/MT values are
//! cross-checked against independently derived closed forms to 1e−9.
//!
//! # Gain–loss three-level chain
//!
//! [`build_wpt`] constructs the nearest-neighbour chain with gain +iη on
//! the first site, loss −iη on the last, and real coupling κ:
//!
//! ```text
//! Ĥ = [ ς + iη    κ       0    ]
//!     [   κ       ς       κ    ]
//!     [   0       κ     ς − iη ]
//! ```
//!
//! with eigenvalues ς and ς ∓ √(2κ² − η²). The spectrum is entirely real
//! (unbroken antilinear symmetry) iff 2κ² > η², collapses at the
//! exceptional point 2κ² = η², and acquires a conjugate gain/decay pair
//! when 2κ² < η². [`build_wpt`] classifies the regime with a relative
//! tolerance of 1e−12 on |2κ² − η²|.

use crate::biortho::ShiftedSpectrum;
use crate::bounds::{f_g_two_level, f_ml, f_mt};
use crate::dynamics::EigenbasisState;
use crate::linalg::{c64, ComplexMatrix};
use crate::{C64, Result};
use alloc::vec;

/// Parameters of the traceless two-level family.
///
/// Ranges: ξ > 0 sets the overall scale; ϑ ∈ [0, π], ϱ ∈ [0, 2π],
/// β ∈ [0, 2π] sweep the family. ϱ = 0 or π gives a Hermitian member.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelParams {
    /// Overall energy scale ξ > 0.
    pub xi: f64,
    /// Diagonal mixing angle ϑ ∈ [0, π].
    pub vartheta: f64,
    /// Non-Hermiticity phase ϱ ∈ [0, 2π].
    pub varrho: f64,
    /// Off-diagonal asymmetry angle β ∈ [0, 2π].
    pub beta_angle: f64,
}

/// Canonical complex eigenvalue gap μ + iν = λ_+ − λ_− of a two-level
/// system.
///
/// μ is the real frequency gap and ν the decay-rate asymmetry
/// ν = γ′_0 − γ′_1 between the anchored decay rates of the lower and upper
/// levels. Builders produce μ ≥ 0 (principal branch); evaluation ops accept
/// μ < 0 by relabeling the levels. μ = ν = 0 (an exceptional point of the
/// family) makes every functional vanish identically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelCanonical {
    /// Real part of the eigenvalue gap (frequency gap).
    pub mu: f64,
    /// Imaginary part of the eigenvalue gap (decay asymmetry γ′_0 − γ′_1).
    pub nu: f64,
}

/// Pure two-level state in the energy eigenbasis:
/// |ψ⟩ = cos α·|0⟩ + sin α·e^{iφ}|1⟩.
///
/// Ranges: α ∈ (0, π/2] (α = π/2 puts all population on the upper level),
/// φ ∈ (0, 2π]. The relative phase φ cancels from every population-only
/// functional; it is carried for completeness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateAngles {
    /// Population mixing angle α ∈ (0, π/2].
    pub alpha: f64,
    /// Relative phase φ ∈ (0, 2π].
    pub phi: f64,
}

/// Parameters of the gain–loss three-level chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WptParams {
    /// Common real site energy ς.
    pub sigma_res: f64,
    /// Gain/loss rate η ≥ 0 (+iη on site 0, −iη on site 2).
    pub eta: f64,
    /// Real nearest-neighbour coupling κ.
    pub kappa: f64,
}

/// Spectral regime of the gain–loss chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WptRegime {
    /// 2κ² > η²: all three eigenvalues real.
    PtSymmetric,
    /// |2κ² − η²| ≤ 1e−12·max(2κ², η², 1): coalescing eigenvalues.
    ExceptionalPoint,
    /// 2κ² < η²: a conjugate gain/decay pair appears.
    PtBroken,
}

impl core::fmt::Display for WptRegime {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            WptRegime::PtSymmetric => "pt-symmetric",
            WptRegime::ExceptionalPoint => "exceptional-point",
            WptRegime::PtBroken => "pt-broken",
        })
    }
}

/// All three two-level bound functionals at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelBounds {
    /// ML-type functional value.
    pub ml: f64,
    /// MT-type functional value.
    pub mt: f64,
    /// Two-level geometric functional value.
    pub g: f64,
}

/// Build the two-level Hamiltonian and its canonical eigenvalue gap.
///
/// The gap is computed analytically as μ + iν = 2ξ√(cos²ϑ·e^{i2ϱ} +
/// ½ sin²ϱ·sin 2β) with the principal branch (μ ≥ 0). Exact exceptional
/// points of the family (vanishing radicand) yield the degenerate canonical
/// pair (0, 0), on which every bound functional vanishes.
pub fn build_two_level(p: &TwoLevelParams) -> (ComplexMatrix, TwoLevelCanonical) {
    debug_assert!(p.xi > 0.0, "energy scale must be positive");
    let phase = C64::from_polar(1.0, p.varrho);
    let diag = phase * libm::cos(p.vartheta) * p.xi;
    let sin_r = libm::sin(p.varrho);
    let h = ComplexMatrix::new(
        2,
        vec![
            diag,
            c64(p.xi * sin_r * libm::sin(p.beta_angle), 0.0),
            c64(p.xi * sin_r * libm::cos(p.beta_angle), 0.0),
            -diag,
        ],
    )
    .expect("2x2 entry list is square");

    let cos_t = libm::cos(p.vartheta);
    let radicand = C64::from_polar(cos_t * cos_t, 2.0 * p.varrho)
        + 0.5 * sin_r * sin_r * libm::sin(2.0 * p.beta_angle);
    let gap = 2.0 * p.xi * radicand.sqrt();
    (
        h,
        TwoLevelCanonical {
            mu: gap.re,
            nu: gap.im,
        },
    )
}

/// Relabel (μ, ν, α) so that μ ≥ 0, swapping the two levels if needed.
///
/// Negative frequency gaps describe the same physical pair with the level
/// labels exchanged; every closed form in this crate assumes μ ≥ 0 and
/// reaches the μ < 0 inputs through this map.
pub fn relabeled(c: &TwoLevelCanonical, alpha: f64) -> (f64, f64, f64) {
    if c.mu < 0.0 {
        (-c.mu, -c.nu, core::f64::consts::FRAC_PI_2 - alpha)
    } else {
        (c.mu, c.nu, alpha)
    }
}

/// Build the anchored two-level spectrum and eigenbasis state for a
/// canonical gap and state angles.
///
/// The anchored spectrum is ω′ = {0, μ} with γ′ = {ν, 0} for ν > 0 (lower
/// level decays faster) and γ′ = {0, −ν} otherwise. Gaps with μ < 0 are
/// relabeled first, swapping the populations accordingly.
///
/// # Errors
/// Propagates spectrum-validation errors (unreachable for finite inputs).
pub fn canonical_system(
    c: &TwoLevelCanonical,
    s: &StateAngles,
) -> Result<(ShiftedSpectrum, EigenbasisState)> {
    let (mu, nu, alpha) = relabeled(c, s.alpha);
    let gamma = if nu > 0.0 {
        vec![nu, 0.0]
    } else {
        vec![0.0, -nu]
    };
    let spec = ShiftedSpectrum::from_parts(vec![0.0, mu], gamma)?;
    let state = EigenbasisState::new(vec![
        c64(libm::cos(alpha), 0.0),
        C64::from_polar(libm::sin(alpha), s.phi),
    ])?;
    Ok((spec, state))
}

/// Evaluate the ML-type, MT-type, and geometric bound functionals for a
/// canonical two-level system at time t > 0.
///
/// Delegates to [`f_ml`], [`f_mt`], and [`f_g_two_level`] on the canonical
/// spectrum; in debug builds the ML/MT values are cross-checked against
/// closed forms in the gap parameters to a relative 1e−9.
///
/// # Errors
/// [`crate::Error::Underflow`] when the damped normalization collapses;
/// [`crate::Error::NegativeRadicand`] when the MT radicand is out of its
/// domain at this t (e.g. small t with dominant population on the
/// faster-decaying level).
pub fn two_level_bounds(
    c: &TwoLevelCanonical,
    s: &StateAngles,
    t: f64,
) -> Result<TwoLevelBounds> {
    let (mu, nu, alpha) = relabeled(c, s.alpha);
    let (spec, state) = canonical_system(c, s)?;
    let ml = f_ml(&state, &spec, t)?.value;
    let mt = f_mt(&state, &spec, t)?.value;
    let g = f_g_two_level(mu, nu, alpha, t).value;

    #[cfg(debug_assertions)]
    {
        let ml_ref = ml_closed(mu, nu, alpha, t);
        debug_assert!(
            (ml - ml_ref).abs() <= 1e-9 * ml_ref.abs().max(1.0),
            "ML pipeline/closed-form mismatch: {ml} vs {ml_ref}"
        );
        if let Some(mt_ref) = mt_closed(mu, nu, alpha, t) {
            debug_assert!(
                (mt - mt_ref).abs() <= 1e-9 * mt_ref.abs().max(1.0),
                "MT pipeline/closed-form mismatch: {mt} vs {mt_ref}"
            );
        }
    }

    Ok(TwoLevelBounds { ml, mt, g })
}

/// Closed-form ML functional in the gap parameters:
/// 𝓕_ML = μt·sin²α / (e^{−νt}cos²α + sin²α), written overflow-free for
/// either sign of ν.
#[cfg(any(debug_assertions, test))]
fn ml_closed(mu: f64, nu: f64, alpha: f64, t: f64) -> f64 {
    let (sin_a, cos_a) = (libm::sin(alpha), libm::cos(alpha));
    let (s2, c2) = (sin_a * sin_a, cos_a * cos_a);
    if nu >= 0.0 {
        mu * t * s2 / (libm::exp(-nu * t) * c2 + s2)
    } else {
        let e = libm::exp(nu * t);
        mu * t * s2 * e / (c2 + s2 * e)
    }
}

/// Closed-form MT functional in the gap parameters. Written for ν ≤ 0
/// (upper level decays):
///
/// 𝓕_MT = √(2νt·e^{2νt}sin⁴α − 2νt·e^{νt}sin²αcos²α
///          + μ²t²·e^{νt}sin²αcos²α) / (cos²α + e^{νt}sin²α),
///
/// with ν > 0 mapped onto it by the level relabel (ν, α) → (−ν, π/2 − α).
/// Returns `None` where the radicand is negative (out of domain).
#[cfg(any(debug_assertions, test))]
fn mt_closed(mu: f64, nu: f64, alpha: f64, t: f64) -> Option<f64> {
    let (nu, alpha) = if nu > 0.0 {
        (-nu, core::f64::consts::FRAC_PI_2 - alpha)
    } else {
        (nu, alpha)
    };
    let (sin_a, cos_a) = (libm::sin(alpha), libm::cos(alpha));
    let (s2, c2) = (sin_a * sin_a, cos_a * cos_a);
    let e = libm::exp(nu * t);
    let radicand =
        2.0 * nu * t * e * e * s2 * s2 - 2.0 * nu * t * e * s2 * c2 + mu * mu * t * t * e * s2 * c2;
    if radicand < 0.0 {
        return None;
    }
    Some(libm::sqrt(radicand) / (c2 + e * s2))
}

/// Build the gain–loss three-level chain and classify its spectral regime.
pub fn build_wpt(p: &WptParams) -> (ComplexMatrix, WptRegime) {
    let s = p.sigma_res;
    let k = c64(p.kappa, 0.0);
    let zero = C64::ZERO;
    let h = ComplexMatrix::new(
        3,
        vec![
            c64(s, p.eta),
            k,
            zero,
            k,
            c64(s, 0.0),
            k,
            zero,
            k,
            c64(s, -p.eta),
        ],
    )
    .expect("3x3 entry list is square");

    let disc = 2.0 * p.kappa * p.kappa - p.eta * p.eta;
    let tol = 1e-12 * (2.0 * p.kappa * p.kappa).max(p.eta * p.eta).max(1.0);
    let regime = if disc.abs() <= tol {
        WptRegime::ExceptionalPoint
    } else if disc > 0.0 {
        WptRegime::PtSymmetric
    } else {
        WptRegime::PtBroken
    };
    (h, regime)
}
