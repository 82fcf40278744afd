//! Deterministic, counter-based sampling of eigenbasis states and anchored
//! spectra for scatter experiments and property tests.
//!
//! Reproducibility is the point: every draw is a pure function of
//! (seed, counter), so a sequence can be regenerated from its seed alone,
//! independent of platform, thread schedule, or how many draws preceded it.
//! The generator is the 64-bit golden-ratio counter mix (SplitMix64-style
//! finalizer), which passes standard statistical batteries and needs no
//! state beyond the counter.
//!
//! States are drawn by populations, not raw amplitudes: populations are
//! uniform on the probability simplex (exponential-normalization method)
//! and phases are uniform on [0, 2π). This matches how scatter experiments
//! read states — through |c̃_n|² in the eigenbasis — and is the
//! least-informative choice on that data.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use crate::biortho::ShiftedSpectrum;
use crate::dynamics::EigenbasisState;
use crate::C64;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer: bijective avalanche mix of one 64-bit word.
fn mix(mut z: u64) -> u64 {
    z ^= z >> 30;
    z = z.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z ^= z >> 27;
    z = z.wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Counter-based deterministic generator keyed by a 64-bit seed.
///
/// The n-th output is `mix(seed + (n+1)·golden)` — a pure function of
/// (seed, n), so sequences are reproducible and independent draws can be
/// indexed directly.
#[derive(Debug, Clone)]
pub struct CounterRng {
    seed: u64,
    counter: u64,
}

impl CounterRng {
    /// Generator producing the sequence keyed by `seed`, starting at
    /// counter 0.
    pub fn new(seed: u64) -> Self {
        Self { seed, counter: 0 }
    }

    /// Next raw 64-bit word.
    pub fn next_u64(&mut self) -> u64 {
        self.counter += 1;
        mix(self
            .seed
            .wrapping_add(self.counter.wrapping_mul(GOLDEN_GAMMA)))
    }

    /// Next uniform double in [0, 1), with the standard 53-bit mantissa
    /// construction.
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Draw one `dim`-level state: populations uniform on the (dim−1)-simplex,
/// phases uniform on [0, 2π).
///
/// The simplex draw uses the exponential-normalization method:
/// p_n = e_n/Σe_m with e_n = −ln(1−u_n) i.i.d. standard exponentials.
pub fn sample_state(dim: usize, rng: &mut CounterRng) -> EigenbasisState {
    debug_assert!(dim >= 2, "states need at least two levels");
    let exponentials: Vec<f64> = (0..dim)
        .map(|_| -libm::log(1.0 - rng.next_unit()))
        .collect();
    let total: f64 = exponentials.iter().sum();
    let coeffs: Vec<C64> = exponentials
        .iter()
        .map(|&e| C64::from_polar(libm::sqrt(e / total), TAU * rng.next_unit()))
        .collect();
    EigenbasisState::new(coeffs).expect("simplex populations sum to one")
}

/// Draw `n` states with `sample_state`, sequentially from the counter
/// stream keyed by `seed`. Same (dim, n, seed) → identical sequence.
pub fn sample_random_states(dim: usize, n: usize, seed: u64) -> Vec<EigenbasisState> {
    debug_assert!(n >= 1, "empty corpora are never useful");
    let mut rng = CounterRng::new(seed);
    (0..n).map(|_| sample_state(dim, &mut rng)).collect()
}

/// Draw one anchored `dim`-level spectrum: bandwidth ω′_N uniform in
/// `[omega_max_lo, omega_max_hi]`, interior frequencies uniform on
/// (0, ω′_N) and sorted, decay rates uniform on [0, `gamma_span`] and then
/// re-anchored so the smallest is exactly zero.
pub fn sample_spectrum(
    dim: usize,
    omega_max_lo: f64,
    omega_max_hi: f64,
    gamma_span: f64,
    rng: &mut CounterRng,
) -> ShiftedSpectrum {
    debug_assert!(dim >= 2, "spectra need at least two levels");
    debug_assert!(0.0 < omega_max_lo && omega_max_lo <= omega_max_hi);
    debug_assert!(gamma_span >= 0.0);

    let bandwidth = omega_max_lo + (omega_max_hi - omega_max_lo) * rng.next_unit();
    let mut interior: Vec<f64> = (1..dim.saturating_sub(1))
        .map(|_| bandwidth * rng.next_unit())
        .collect();
    interior.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite frequencies"));
    let mut omega = Vec::with_capacity(dim);
    omega.push(0.0);
    omega.extend(interior);
    omega.push(bandwidth);

    let mut gamma: Vec<f64> = (0..dim).map(|_| gamma_span * rng.next_unit()).collect();
    let floor = gamma.iter().copied().fold(f64::INFINITY, f64::min);
    for g in &mut gamma {
        *g -= floor;
    }

    ShiftedSpectrum::from_parts(omega, gamma).expect("sampled parts respect anchoring")
}
