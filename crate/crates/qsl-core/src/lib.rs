//! Quantum-speed-limit (QSL) bounds for non-Hermitian quantum systems.
//!
//! This crate computes how fast a finite-dimensional system governed by a
//! non-Hermitian Hamiltonian Ĥ can evolve into a state orthogonal to its
//! initial state, and evaluates the family of lower bounds that control that
//! time:
//!
//! * the **ML-type bound** 𝓕_ML(t), controlled by the weighted mean of the
//!   Hermitian part of the (shifted) Hamiltonian — the Margolus–Levitin
//!   analogue;
//! * the **MT-type bound** 𝓕_MT(t), controlled by the frequency variance
//!   ΔΩ² plus a dissipative correction R(t) — the Mandelstam–Tamm analogue;
//! * the **weak bounds** 𝓕_wML, 𝓕_wMT, looser closed forms obtained by
//!   extremizing the decay-rate dependence;
//! * the **geometric bound** 𝓕_G for two-level systems, from the accumulated
//!   geometric phase.
//!
//! The pipeline is: diagonalize Ĥ into a biorthogonal eigenbasis
//! ([`biortho`]), shift the spectrum so both frequency and decay parts are
//! nonnegative, expand the initial state in that basis ([`dynamics`]), follow
//! the normalized survival amplitude S(t) to its first zero, and compare the
//! orthogonality time against the bound times solved from 𝓕_X(τ) = π/2
//! ([`bounds`]). The [`analysis`] module constructs the fastest initial state
//! (FIS), the near-FIS perturbative families on either side of the bound
//! ratio α = 𝓕_MT/𝓕_ML = 1, and the Δτ′ region classification of the
//! two-level parameter plane. [`models`] builds the two concrete systems used
//! throughout: the general two-level non-Hermitian family and the three-coil
//! wireless-power-transfer (WPT) three-level system with PT-symmetric,
//! exceptional-point, and PT-broken regimes.
//!
//! Everything is pure: no global state, no interior mutability, no threads.
//! The crate is `no_std` (with `alloc`); all transcendental math goes through
//! `libm`.
//!
//! # Conventions
//!
//! * Eigenvalues are written E_n = ω_n − iγ_n, so γ_n > 0 decays.
//! * The shifted Hamiltonian is Ĥ′ = Ĥ − (ω_min − iγ_min)𝕀, giving
//!   ω′_n ≥ 0 and γ′_n ≥ 0 with both minima exactly zero.
//! * Eigenvalues are ordered by ascending real part, ties by ascending
//!   imaginary part, so ω′_0 = 0 and ω′_N is the spectral bandwidth.
//! * ħ = 1 throughout; times are inverse energies.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod analysis;
pub mod biortho;
pub mod bounds;
pub mod dynamics;
pub mod linalg;
pub mod models;
pub mod sample;

use core::fmt;

pub use linalg::c64;

/// Complex scalar used everywhere in this crate.
pub type C64 = num_complex::Complex<f64>;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Error taxonomy for the whole computation pipeline.
///
/// Every variant is a *diagnosable* condition: either a caller contract
/// violation (dimensions, orderings) or a numerical domain boundary that the
/// theory itself defines (exceptional points, underflowed norms, negative
/// MT radicands).
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A square-matrix operation received a non-square matrix.
    NonSquare { rows: usize, cols: usize },
    /// Two operands that must share a dimension do not.
    DimensionMismatch { expected: usize, got: usize },
    /// The right-eigenvector set is numerically rank-deficient: the
    /// eigenvector-matrix condition number exceeds 1/tol. This is the
    /// signature of an exceptional point, where eigenvectors coalesce.
    DefectiveMatrix { condition: f64 },
    /// Two eigenvalues are closer than the non-degeneracy threshold
    /// (1e−9 relative to the spectral width).
    Degenerate { gap: f64, threshold: f64 },
    /// Bracketed root finding was invoked with f(lo)·f(hi) > 0.
    NoBracket { f_lo: f64, f_hi: f64 },
    /// State decomposition received a vector with no weight in the basis
    /// (Σ|⟨ψ̃_n|ψ⟩|² below 1e−24).
    ZeroState { norm_sq: f64 },
    /// The biorthogonal norm K(t) fell below 1e−150: t is beyond the
    /// representable evolution horizon for this spectrum.
    Underflow { t: f64 },
    /// The MT-type radicand −R·t + ΔΩ²·t²·e^{−(σ₀+σ₁)t} came out below
    /// −1e−12. The bound functional is undefined at this time; the fields
    /// carry the components for triage.
    NegativeRadicand {
        t: f64,
        radicand: f64,
        r_value: f64,
        variance: f64,
    },
    /// FIS construction needs spectral bandwidth, but ω′_N = 0.
    ZeroBandwidth,
    /// A near-FIS constructor received a spectrum that violates its regime
    /// (decay-rate ordering or the ω′·τ phase targets).
    BadOrdering { detail: &'static str },
    /// The β denominator of the above-one family crossed zero: k is too
    /// small for the requested (α, τ, rates).
    DenominatorSignFlip { denominator: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonSquare { rows, cols } => {
                write!(f, "matrix is not square: {rows}×{cols}")
            }
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::DefectiveMatrix { condition } => write!(
                f,
                "eigenvector matrix is numerically rank-deficient \
                 (condition {condition:.3e}); matrix is at or near an exceptional point"
            ),
            Error::Degenerate { gap, threshold } => write!(
                f,
                "eigenvalue gap {gap:.3e} below non-degeneracy threshold {threshold:.3e}"
            ),
            Error::NoBracket { f_lo, f_hi } => write!(
                f,
                "root bracket invalid: f(lo)={f_lo:.3e} and f(hi)={f_hi:.3e} share a sign"
            ),
            Error::ZeroState { norm_sq } => write!(
                f,
                "state has no weight in the eigenbasis (Σ|c|² = {norm_sq:.3e})"
            ),
            Error::Underflow { t } => write!(
                f,
                "biorthogonal norm K(t) underflowed below 1e-150 at t = {t:.6e}"
            ),
            Error::NegativeRadicand {
                t,
                radicand,
                r_value,
                variance,
            } => write!(
                f,
                "MT-type radicand {radicand:.6e} < -1e-12 at t = {t:.6e} \
                 (R = {r_value:.6e}, ΔΩ² = {variance:.6e}); bound undefined here"
            ),
            Error::ZeroBandwidth => {
                write!(f, "spectral bandwidth ω′_N is zero; no fastest initial state")
            }
            Error::BadOrdering { detail } => {
                write!(f, "spectrum violates the regime: {detail}")
            }
            Error::DenominatorSignFlip { denominator } => write!(
                f,
                "β denominator {denominator:.6e} is not positive; \
                 k too small for the requested ratio and time"
            ),
        }
    }
}

impl core::error::Error for Error {}
