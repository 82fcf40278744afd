//! Biorthogonal eigensystems and the anchored spectrum split.
//!
//! A non-Hermitian Hamiltonian Ĥ with non-degenerate spectrum has right and
//! left eigenvectors forming a dual pair, ⟨ψ̃_n|ψ_m⟩ = δ_nm. Writing the
//! eigenvalues as E_n = ω_n − iγ_n (γ_n > 0 decays), the shifted operator
//! Ĥ′ = Ĥ − (ω_min − iγ_min)𝕀 has ω′_n ≥ 0 and γ′_n ≥ 0 with both minima
//! exactly zero; the shift changes dynamics only by a global complex factor,
//! which drops out of every normalized quantity. Ĥ′ splits as Ω̂ − iΓ̂ with
//! Ω̂ = Σ ω′_n X_n, Γ̂ = Σ γ′_n X_n over the (non-orthogonal) projectors
//! X_n = |ψ_n⟩⟨ψ̃_n|.

use crate::linalg::{eig_general, ComplexMatrix, ComplexVector};
use crate::{c64, C64, Error, Result};
use alloc::vec::Vec;

/// Relative eigenvalue-gap threshold below which a spectrum is treated as
/// degenerate: the biorthogonal construction is ill-posed when two
/// eigenvalues are closer than 1e−9 of the spectral width.
const DEGENERACY_REL_GAP: f64 = 1e-9;

/// Dual eigenbasis of a non-Hermitian Hamiltonian.
///
/// `right_vectors[n]` is unit 2-norm; `left_vectors[n]` is scaled so that
/// ⟨ψ̃_n|ψ_m⟩ = δ_nm (left vectors are conjugated rows of the inverse
/// right-eigenvector matrix). Eigenvalues are sorted by ascending real part,
/// ties by ascending imaginary part, and the vector sequences share that
/// order.
#[derive(Debug, Clone)]
pub struct BiorthogonalSystem {
    dim: usize,
    eigenvalues: Vec<C64>,
    right_vectors: Vec<ComplexVector>,
    left_vectors: Vec<ComplexVector>,
}

impl BiorthogonalSystem {
    /// Hilbert-space dimension.
    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Eigenvalues E_n, sorted.
    #[inline]
    pub fn eigenvalues(&self) -> &[C64] {
        &self.eigenvalues
    }

    /// Unit-norm right eigenvectors |ψ_n⟩.
    #[inline]
    pub fn right_vectors(&self) -> &[ComplexVector] {
        &self.right_vectors
    }

    /// Left eigenvectors |ψ̃_n⟩ with ⟨ψ̃_n|ψ_m⟩ = δ_nm.
    #[inline]
    pub fn left_vectors(&self) -> &[ComplexVector] {
        &self.left_vectors
    }
}

/// Shifted spectrum of Ĥ′ = Ĥ − (ω_min − iγ_min)𝕀.
///
/// `omega[n]` = ω′_n (ascending, first entry exactly 0) and `gamma[n]` = γ′_n
/// (nonnegative, minimum exactly 0) share the eigenvalue ordering of the
/// system they came from; `order_phi` is the permutation sorting γ′
/// ascending, so `gamma[order_phi[1]]` is the second-smallest decay rate.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftedSpectrum {
    omega: Vec<f64>,
    gamma: Vec<f64>,
    shift: C64,
    order_phi: Vec<usize>,
}

impl ShiftedSpectrum {
    /// Build directly from anchored frequencies and decay rates (for model
    /// spectra constructed in closed form rather than diagonalized).
    ///
    /// # Errors
    /// [`Error::BadOrdering`] unless `omega` is ascending and starts at
    /// exactly 0, `gamma` is nonnegative with minimum exactly 0, and the two
    /// sequences have equal nonzero length.
    pub fn from_parts(omega: Vec<f64>, gamma: Vec<f64>) -> Result<Self> {
        if omega.is_empty() || omega.len() != gamma.len() {
            return Err(Error::BadOrdering {
                detail: "omega and gamma must have equal nonzero length",
            });
        }
        if omega[0] != 0.0 || omega.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::BadOrdering {
                detail: "omega must ascend from exactly 0",
            });
        }
        if gamma.iter().any(|&g| !(g >= 0.0)) {
            return Err(Error::BadOrdering {
                detail: "gamma must be nonnegative",
            });
        }
        if gamma.iter().cloned().fold(f64::INFINITY, f64::min) != 0.0 {
            return Err(Error::BadOrdering {
                detail: "minimum gamma must be exactly 0",
            });
        }
        let order_phi = sort_permutation(&gamma);
        Ok(Self {
            omega,
            gamma,
            shift: C64::ZERO,
            order_phi,
        })
    }

    /// Number of levels.
    #[inline]
    pub fn len(&self) -> usize {
        self.omega.len()
    }

    /// True when the spectrum has a single level.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    /// Anchored frequencies ω′_n (ascending, ω′_0 = 0).
    #[inline]
    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    /// Anchored decay rates γ′_n ≥ 0 (min exactly 0).
    #[inline]
    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    /// The subtracted eigenvalue ω_min − iγ_min.
    #[inline]
    pub fn shift(&self) -> C64 {
        self.shift
    }

    /// Permutation φ with γ′_φ(0) ≤ γ′_φ(1) ≤ …
    #[inline]
    pub fn order_phi(&self) -> &[usize] {
        &self.order_phi
    }

    /// Bandwidth ω′_N (largest anchored frequency).
    #[inline]
    pub fn omega_max(&self) -> f64 {
        *self.omega.last().expect("nonempty")
    }

    /// Largest decay rate γ′_max.
    #[inline]
    pub fn gamma_max(&self) -> f64 {
        self.gamma.iter().cloned().fold(0.0, f64::max)
    }

    /// k-th smallest decay rate γ′_φ(k).
    #[inline]
    pub fn gamma_phi(&self, k: usize) -> f64 {
        self.gamma[self.order_phi[k]]
    }
}

/// Stable permutation sorting `values` ascending.
fn sort_permutation(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
    idx
}

/// Diagonalize `h` and build the dual basis.
///
/// Right eigenvectors keep unit 2-norm; left vectors are conjugated rows of
/// the inverse right-eigenvector matrix, rescaled so ⟨ψ̃_n|ψ_n⟩ = 1 to
/// linear-solve accuracy.
///
/// # Errors
/// [`Error::Degenerate`] when an eigenvalue gap falls below 1e−9 of the
/// spectral width; [`Error::DefectiveMatrix`] passed through from the
/// eigensolver.
pub fn build_biorthogonal(h: &ComplexMatrix, tol: f64) -> Result<BiorthogonalSystem> {
    let eig = eig_general(h, tol)?;
    let n = h.dim();

    // Degeneracy gate: the dual basis is ill-conditioned long before the gap
    // reaches zero, but below the relative threshold it is ill-posed.
    if n > 1 {
        let width = spectral_width(&eig.values).max(f64::MIN_POSITIVE);
        let threshold = DEGENERACY_REL_GAP * width;
        for i in 0..n {
            for j in (i + 1)..n {
                let gap = (eig.values[i] - eig.values[j]).norm();
                if gap < threshold {
                    return Err(Error::Degenerate { gap, threshold });
                }
            }
        }
    }

    // Left vectors: conjugated rows of V⁻¹, so the conjugating inner product
    // ⟨ψ̃_n|ψ_m⟩ = Σ_j (V⁻¹)_{n,j} V_{j,m} = δ_nm.
    let mut vmat = ComplexMatrix::zeros(n);
    for (j, v) in eig.right_vectors.iter().enumerate() {
        for i in 0..n {
            vmat[(i, j)] = v[i];
        }
    }
    let vinv = vmat.inverse()?;
    let mut left_vectors = Vec::with_capacity(n);
    for i in 0..n {
        let row: Vec<C64> = (0..n).map(|j| vinv[(i, j)].conj()).collect();
        left_vectors.push(ComplexVector::new(row));
    }

    // Polish the pairing ⟨ψ̃_n|ψ_n⟩ = 1 exactly (inverse is accurate to
    // solve error; one rescale removes the diagonal residue).
    for (left, right) in left_vectors.iter_mut().zip(eig.right_vectors.iter()) {
        let pairing = left.inner(right).expect("same dim");
        *left = left.scale((C64::ONE / pairing).conj());
    }

    Ok(BiorthogonalSystem {
        dim: n,
        eigenvalues: eig.values,
        right_vectors: eig.right_vectors,
        left_vectors,
    })
}

/// Largest pairwise eigenvalue distance.
fn spectral_width(values: &[C64]) -> f64 {
    let mut width = 0.0_f64;
    for i in 0..values.len() {
        for j in (i + 1)..values.len() {
            width = width.max((values[i] - values[j]).norm());
        }
    }
    width
}

/// Anchor the spectrum: ω′_n = ω_n − ω_min and γ′_n = γ_n − γ_min with
/// E_n = ω_n − iγ_n, so both sequences are nonnegative with minimum exactly
/// zero. The removed global factor e^{−i·shift·t} does not change any
/// normalized dynamical quantity.
pub fn shift_spectrum(sys: &BiorthogonalSystem) -> ShiftedSpectrum {
    let omega_raw: Vec<f64> = sys.eigenvalues.iter().map(|e| e.re).collect();
    let gamma_raw: Vec<f64> = sys.eigenvalues.iter().map(|e| -e.im).collect();
    let omega_min = omega_raw.iter().cloned().fold(f64::INFINITY, f64::min);
    let gamma_min = gamma_raw.iter().cloned().fold(f64::INFINITY, f64::min);
    // x − x_min is exact for the minimizer and IEEE-nonnegative elsewhere;
    // the +0.0 normalizes any −0.0.
    let omega: Vec<f64> = omega_raw.iter().map(|w| (w - omega_min) + 0.0).collect();
    let gamma: Vec<f64> = gamma_raw.iter().map(|g| (g - gamma_min) + 0.0).collect();
    let order_phi = sort_permutation(&gamma);
    ShiftedSpectrum {
        omega,
        gamma,
        shift: c64(omega_min, -gamma_min),
        order_phi,
    }
}

/// The spectral split of the shifted Hamiltonian: Ω̂, Γ̂, and the projectors
/// X_n = |ψ_n⟩⟨ψ̃_n| with Ĥ′ = Ω̂ − iΓ̂.
#[derive(Debug, Clone)]
pub struct SpectralSplit {
    /// Ω̂ = Σ ω′_n X_n (the Hermitian part in the biorthogonal sense).
    pub omega_op: ComplexMatrix,
    /// Γ̂ = Σ γ′_n X_n (the decay part).
    pub gamma_op: ComplexMatrix,
    /// Projectors X_n, idempotent and mutually annihilating.
    pub projectors: Vec<ComplexMatrix>,
}

/// Assemble Ω̂, Γ̂, and the projectors from a system and its anchored
/// spectrum.
///
/// # Errors
/// [`Error::DimensionMismatch`] when `spec` has a different level count than
/// `sys`.
pub fn spectral_operators(sys: &BiorthogonalSystem, spec: &ShiftedSpectrum) -> Result<SpectralSplit> {
    let n = sys.dim();
    if spec.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: spec.len(),
        });
    }
    let mut projectors = Vec::with_capacity(n);
    let mut omega_op = ComplexMatrix::zeros(n);
    let mut gamma_op = ComplexMatrix::zeros(n);
    for m in 0..n {
        let right = &sys.right_vectors[m];
        let left = &sys.left_vectors[m];
        let mut proj = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                // |ψ⟩⟨ψ̃| in components: ψ_i · conj(ψ̃_j).
                proj[(i, j)] = right[i] * left[j].conj();
            }
        }
        for i in 0..n {
            for j in 0..n {
                omega_op[(i, j)] += proj[(i, j)].scale(spec.omega[m]);
                gamma_op[(i, j)] += proj[(i, j)].scale(spec.gamma[m]);
            }
        }
        projectors.push(proj);
    }
    Ok(SpectralSplit {
        omega_op,
        gamma_op,
        projectors,
    })
}

// ─────────────────────────────────────────────────────────────────────────
