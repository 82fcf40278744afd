//! Biorthogonal state dynamics: c_n coefficients, the normalization K(t),
//! the survival amplitude S(t), and the first-orthogonality-time search.
//!
//! With |ψ(0)⟩ = Σ c_n|ψ_n⟩ (Σ|c_n|² = 1) evolving under the shifted
//! Hamiltonian, the normalized survival amplitude is
//!
//! ```text
//! S(t) = (1/K(t)) Σ_n |c_n|² e^{−iω′_n t} e^{−γ′_n t},
//! K(t) = √(Σ_n |c_n|² e^{−2γ′_n t}),
//! ```
//!
//! which satisfies S(0) = 1 and, by the Cauchy–Schwarz inequality applied to
//! the weights |c_n|e^{−γ′_n t}, |S(t)| ≤ 1 for every spectrum. The system
//! reaches a state orthogonal to where it started at the first τ > 0 with
//! S(τ) = 0; that zero is detected on |S| by a dense grid scan tied to the
//! fastest oscillation ω′_N, refined by golden-section search.

use crate::biortho::{BiorthogonalSystem, ShiftedSpectrum};
use crate::linalg::{golden_section_min, ComplexVector};
use crate::{C64, Error, Result};
use alloc::vec::Vec;

/// Squared-overlap floor below which a decomposition input counts as the
/// zero state.
const ZERO_STATE_FLOOR: f64 = 1e-24;

/// K(t) floor below which the normalized amplitude is no longer
/// representable.
const UNDERFLOW_FLOOR: f64 = 1e-150;

/// Default |S| threshold declaring orthogonality reached.
pub const DEFAULT_ORTHO_EPS: f64 = 1e-8;

/// Initial state expressed in the biorthogonal eigenbasis.
///
/// Invariant: Σ|c_n|² = 1 (enforced by renormalization at construction).
#[derive(Debug, Clone, PartialEq)]
pub struct EigenbasisState {
    coeffs: Vec<C64>,
}

impl EigenbasisState {
    /// Build from raw coefficients, renormalizing to Σ|c_n|² = 1.
    ///
    /// # Errors
    /// [`Error::ZeroState`] when Σ|c_n|² < 1e−24.
    pub fn new(coeffs: Vec<C64>) -> Result<Self> {
        let norm_sq: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        if !(norm_sq >= ZERO_STATE_FLOOR) {
            return Err(Error::ZeroState { norm_sq });
        }
        let inv = 1.0 / libm::sqrt(norm_sq);
        Ok(Self {
            coeffs: coeffs.iter().map(|c| c.scale(inv)).collect(),
        })
    }

    /// Build a real-coefficient state from level populations (c_n = √p_n).
    ///
    /// # Errors
    /// [`Error::ZeroState`] when the populations sum below 1e−24.
    pub fn from_populations(populations: &[f64]) -> Result<Self> {
        debug_assert!(populations.iter().all(|&p| p >= 0.0));
        Self::new(
            populations
                .iter()
                .map(|&p| C64::new(libm::sqrt(p), 0.0))
                .collect(),
        )
    }

    /// Number of levels.
    #[inline]
    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficients c_n.
    #[inline]
    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Level populations p_n = |c_n|².
    pub fn populations(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.norm_sqr()).collect()
    }
}

/// One sample of the normalized survival amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurvivalSample {
    /// Sample time.
    pub t: f64,
    /// S(t), with |S| ≤ 1 up to rounding.
    pub s: C64,
    /// The normalization K(t) > 0.
    pub k: f64,
}

/// Expand `psi` in the biorthogonal basis: c_n ∝ ⟨ψ̃_n|psi⟩, renormalized.
///
/// # Errors
/// [`Error::ZeroState`] when every overlap (numerically) vanishes;
/// [`Error::DimensionMismatch`] when `psi` has the wrong dimension.
pub fn decompose_state(sys: &BiorthogonalSystem, psi: &ComplexVector) -> Result<EigenbasisState> {
    if psi.dim() != sys.dim() {
        return Err(Error::DimensionMismatch {
            expected: sys.dim(),
            got: psi.dim(),
        });
    }
    let overlaps: Vec<C64> = sys
        .left_vectors()
        .iter()
        .map(|left| left.inner(psi).expect("dims checked"))
        .collect();
    EigenbasisState::new(overlaps)
}

/// Evaluate S(t) and K(t).
///
/// # Errors
/// [`Error::Underflow`] when K(t) < 1e−150 — every populated level has
/// decayed beyond representability.
pub fn survival_amplitude(
    state: &EigenbasisState,
    spec: &ShiftedSpectrum,
    t: f64,
) -> Result<SurvivalSample> {
    debug_assert_eq!(state.dim(), spec.len(), "state/spectrum dimension");
    debug_assert!(t >= 0.0, "time must be nonnegative");
    let mut k_sq = 0.0_f64;
    let mut s = C64::ZERO;
    for ((&c, &w), &g) in state
        .coeffs
        .iter()
        .zip(spec.omega().iter())
        .zip(spec.gamma().iter())
    {
        let p = c.norm_sqr();
        if p == 0.0 {
            continue;
        }
        let damp = libm::exp(-g * t);
        k_sq += p * damp * damp;
        s += C64::from_polar(p * damp, -w * t);
    }
    let k = libm::sqrt(k_sq);
    if k < UNDERFLOW_FLOOR {
        return Err(Error::Underflow { t });
    }
    let s = s.scale(1.0 / k);
    // Cauchy–Schwarz on the weights |c_n|e^{−γ′_n t} gives |S| ≤ 1; anything
    // beyond rounding noise would mean the amplitude itself is wrong.
    debug_assert!(s.norm() <= 1.0 + 1e-9, "|S| = {} > 1", s.norm());
    Ok(SurvivalSample { t, s, k })
}

/// Default search horizon: eight beats of the slowest spectral period,
/// 8π/ω′_N. `None` when the spectrum has zero bandwidth (no oscillation to
/// set a scale — the caller must choose).
pub fn default_horizon(spec: &ShiftedSpectrum) -> Option<f64> {
    let w = spec.omega_max();
    (w > 0.0).then(|| 8.0 * core::f64::consts::PI / w)
}

/// First orthogonality time: the smallest τ ∈ (0, horizon] with
/// |S(τ)| ≤ eps, or `None` when the amplitude never dips that low.
///
/// Two stages: a dense grid with step π/(64·ω′_N) (horizon/4096 for a
/// zero-bandwidth spectrum) locates local minima of |S|; golden-section
/// refinement then resolves each candidate, earliest first. The refinement
/// handles the |linear| kink |S| has at an actual zero. If K(t) underflows
/// inside the horizon the scan stops there — beyond that time the state has
/// decayed below representability.
pub fn orthogonality_time(
    state: &EigenbasisState,
    spec: &ShiftedSpectrum,
    horizon: f64,
    eps: f64,
) -> Option<f64> {
    assert!(horizon > 0.0, "horizon must be positive");
    assert!(eps > 0.0, "eps must be positive");
    let omega_max = spec.omega_max();
    let raw_step = if omega_max > 0.0 {
        core::f64::consts::PI / (64.0 * omega_max)
    } else {
        horizon / 4096.0
    };
    // Keep the scan bounded even for horizons spanning many periods.
    const MAX_GRID: usize = 1 << 22;
    let steps = libm::ceil(horizon / raw_step).min(MAX_GRID as f64) as usize;
    let step = horizon / steps as f64;

    let magnitude = |t: f64| -> f64 {
        survival_amplitude(state, spec, t)
            .map(|sample| sample.s.norm())
            .unwrap_or(f64::INFINITY)
    };

    // Grid magnitudes; |S(0)| = 1 pads the left end.
    let mut mags = Vec::with_capacity(steps + 1);
    mags.push(1.0_f64);
    for i in 1..=steps {
        let t = if i == steps { horizon } else { i as f64 * step };
        let m = magnitude(t);
        if m.is_infinite() {
            break; // underflow: truncate the scan here
        }
        mags.push(m);
    }

    let scanned = mags.len() - 1; // index of the last valid grid point
    for i in 1..=scanned {
        let here = mags[i];
        let before = mags[i - 1];
        let after = if i + 1 <= scanned { mags[i + 1] } else { f64::INFINITY };
        if here <= before && here <= after {
            let lo = (i - 1) as f64 * step;
            let hi = if i + 1 >= steps {
                horizon
            } else {
                (i + 1) as f64 * step
            };
            let (tau, value) = golden_section_min(magnitude, lo, hi.min(horizon));
            if value <= eps && tau > 0.0 {
                return Some(tau);
            }
        }
    }
    None
}

// ─────────────────────────────────────────────────────────────────────────

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biortho::build_biorthogonal;
    use crate::linalg::ComplexMatrix;
    use crate::c64;
    use approx::assert_relative_eq;

    fn wpt_matrix(kappa: f64) -> ComplexMatrix {
        let s = c64(1.0, 0.0);
        let e = c64(0.0, 1.0);
        let k = c64(kappa, 0.0);
        ComplexMatrix::new(
            3,
            vec![s + e, k, C64::ZERO, k, s, k, C64::ZERO, k, s - e],
        )
        .unwrap()
    }

    /// Two-level spectrum ω′={0,2}, γ′={0,1} with the weights that zero the
    /// amplitude at τ = π/2: p₀ = p₁·e^{−π/2}.
    fn fastest_two_level() -> (EigenbasisState, ShiftedSpectrum) {
        let spec = ShiftedSpectrum::from_parts(vec![0.0, 2.0], vec![0.0, 1.0]).unwrap();
        let tau = core::f64::consts::FRAC_PI_2;
        let p1 = 1.0 / (1.0 + libm::exp(-tau));
        let p0 = 1.0 - p1;
        let state = EigenbasisState::from_populations(&[p0, p1]).unwrap();
        (state, spec)
    }

    #[test]
    fn amplitude_starts_at_one() {
        let spec = ShiftedSpectrum::from_parts(vec![0.0, 1.0, 2.5], vec![0.3, 0.0, 1.1]).unwrap();
        let state =
            EigenbasisState::new(vec![c64(0.5, 0.1), c64(-0.3, 0.4), c64(0.2, -0.6)]).unwrap();
        let sample = survival_amplitude(&state, &spec, 0.0).unwrap();
        assert!((sample.s - C64::ONE).norm() < 1e-14);
        assert_relative_eq!(sample.k, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn fastest_state_amplitude_vanishes_at_half_period() {
        let (state, spec) = fastest_two_level();
        let sample = survival_amplitude(&state, &spec, core::f64::consts::FRAC_PI_2).unwrap();
        assert!(sample.s.norm() <= 1e-10, "|S| = {}", sample.s.norm());
    }

    #[test]
    fn hermitian_equal_superposition_orthogonality_is_half_period() {
        let w = 2.0;
        let spec = ShiftedSpectrum::from_parts(vec![0.0, w], vec![0.0, 0.0]).unwrap();
        let state = EigenbasisState::from_populations(&[0.5, 0.5]).unwrap();
        let tau = orthogonality_time(&state, &spec, 8.0, 1e-8).unwrap();
        assert_relative_eq!(tau, core::f64::consts::PI / w, epsilon = 1e-8);
    }

    #[test]
    fn fastest_state_reaches_orthogonality_at_pi_over_bandwidth() {
        let (state, spec) = fastest_two_level();
        let horizon = default_horizon(&spec).unwrap();
        let tau = orthogonality_time(&state, &spec, horizon, 1e-8).unwrap();
        assert_relative_eq!(tau, core::f64::consts::FRAC_PI_2, epsilon = 1e-8);
    }

    #[test]
    fn generic_damped_state_never_reaches_orthogonality() {
        // Unequal damped weights keep |S| strictly positive.
        let spec = ShiftedSpectrum::from_parts(vec![0.0, 2.0], vec![0.0, 1.0]).unwrap();
        let state = EigenbasisState::from_populations(&[0.9, 0.1]).unwrap();
        assert_eq!(orthogonality_time(&state, &spec, 20.0, 1e-8), None);
    }

    #[test]
    fn basis_state_decomposes_to_a_unit_coefficient() {
        let sys = build_biorthogonal(&wpt_matrix(2.5), 1e-9).unwrap();
        let psi = sys.right_vectors()[0].clone();
        let state = decompose_state(&sys, &psi).unwrap();
        assert!((state.coeffs()[0].norm() - 1.0).abs() < 1e-10);
        assert!(state.coeffs()[1].norm() < 1e-10);
        assert!(state.coeffs()[2].norm() < 1e-10);
    }

    #[test]
    fn symmetric_superposition_decomposes_evenly() {
        let sys = build_biorthogonal(&wpt_matrix(2.5), 1e-9).unwrap();
        let lo = &sys.right_vectors()[0];
        let hi = &sys.right_vectors()[2];
        let mut entries = Vec::new();
        for i in 0..3 {
            entries.push((lo[i] + hi[i]).scale(core::f64::consts::FRAC_1_SQRT_2));
        }
        let state = decompose_state(&sys, &ComplexVector::new(entries)).unwrap();
        let p = state.populations();
        assert_relative_eq!(p[0], 0.5, epsilon = 1e-10);
        assert!(p[1] < 1e-10);
        assert_relative_eq!(p[2], 0.5, epsilon = 1e-10);
    }

    #[test]
    fn random_decomposition_is_normalized() {
        let sys = build_biorthogonal(&wpt_matrix(0.5), 1e-9).unwrap();
        let psi = ComplexVector::new(vec![c64(0.31, -0.7), c64(-0.2, 0.05), c64(0.9, 0.4)]);
        let state = decompose_state(&sys, &psi).unwrap();
        let total: f64 = state.populations().iter().sum();
        assert_relative_eq!(total, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn zero_vector_is_rejected() {
        let sys = build_biorthogonal(&wpt_matrix(2.5), 1e-9).unwrap();
        let psi = ComplexVector::new(vec![C64::ZERO; 3]);
        match decompose_state(&sys, &psi) {
            Err(Error::ZeroState { .. }) => {}
            other => panic!("expected ZeroState, got {other:?}"),
        }
    }

    #[test]
    fn fully_decayed_normalization_underflows() {
        let spec = ShiftedSpectrum::from_parts(vec![0.0, 2.0], vec![0.0, 5.0]).unwrap();
        let state = EigenbasisState::new(vec![C64::ZERO, C64::ONE]).unwrap();
        match survival_amplitude(&state, &spec, 100.0) {
            Err(Error::Underflow { t }) => assert_eq!(t, 100.0),
            other => panic!("expected Underflow, got {other:?}"),
        }
    }

    #[test]
    fn amplitude_magnitude_never_exceeds_one() {
        let spec =
            ShiftedSpectrum::from_parts(vec![0.0, 1.0, 3.7], vec![0.8, 0.0, 2.2]).unwrap();
        let state = EigenbasisState::new(vec![c64(0.2, 0.4), c64(-0.5, 0.3), c64(0.6, -0.1)])
            .unwrap();
        let mut t = 0.0;
        while t < 30.0 {
            let sample = survival_amplitude(&state, &spec, t).unwrap();
            assert!(sample.s.norm() <= 1.0 + 1e-12, "|S({t})| = {}", sample.s.norm());
            t += 0.037;
        }
    }

    #[test]
    fn bounded_horizon_truncates_instead_of_panicking() {
        // Underflow partway through the horizon: the scan must stop cleanly.
        let spec = ShiftedSpectrum::from_parts(vec![0.0, 1.0], vec![0.0, 40.0]).unwrap();
        let state = EigenbasisState::new(vec![C64::ZERO, C64::ONE]).unwrap();
        assert_eq!(orthogonality_time(&state, &spec, 50.0, 1e-8), None);
    }
}
