//! Dense complex linear algebra for small matrices.
//!
//! Provides the three primitives every other module builds on:
//!
//! * [`eig_general`] — eigendecomposition of a general (non-Hermitian)
//!   complex matrix, analytic for dim ≤ 3 and shifted-QR for 4 ≤ dim ≤ 16;
//! * [`expm_apply`] — the action exp(m·t)·v by scaling-and-squaring, used as
//!   an independent evolution oracle;
//! * [`find_root_bracketed`] / [`golden_section_min`] — bracketed scalar
//!   root-finding (Brent) and derivative-free minimization, used to solve
//!   𝓕(τ) = π/2 and to locate survival-amplitude minima.
//!
//! All operations are pure functions; values are freely shareable.
//! Design scope is dim ≤ 16 dense matrices — the models in this crate are
//! dim ≤ 3, and the generic path exists for library use.

use crate::{C64, Error, Result};
use alloc::vec;
use alloc::vec::Vec;

/// Machine epsilon for f64.
const EPS: f64 = f64::EPSILON;

/// Convenience constructor for a complex scalar.
#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

// ─────────────────────────────────────────────────────────────────────────
// Domain types
// ─────────────────────────────────────────────────────────────────────────

/// Square complex matrix, row-major, dim ≥ 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<C64>,
}

impl ComplexMatrix {
    /// Build from row-major entries. `entries.len()` must equal `dim²`.
    ///
    /// # Errors
    /// [`Error::NonSquare`] when the entry count does not fill a dim×dim
    /// square.
    pub fn new(dim: usize, entries: Vec<C64>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::NonSquare {
                rows: dim,
                cols: if dim == 0 { 0 } else { entries.len() / dim },
            });
        }
        debug_assert!(
            entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()),
            "matrix entries must be finite"
        );
        Ok(Self { dim, entries })
    }

    /// dim×dim zero matrix.
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "dim must be positive");
        Self {
            dim,
            entries: vec![C64::ZERO; dim * dim],
        }
    }

    /// Identity matrix.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::ONE;
        }
        m
    }

    /// Matrix dimension.
    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major entry slice.
    #[inline]
    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    /// Matrix–vector product `self · v`.
    ///
    /// # Errors
    /// [`Error::DimensionMismatch`] when `v.dim() != self.dim()`.
    pub fn mul_vec(&self, v: &ComplexVector) -> Result<ComplexVector> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.dim(),
            });
        }
        let mut out = vec![C64::ZERO; self.dim];
        for i in 0..self.dim {
            let row = &self.entries[i * self.dim..(i + 1) * self.dim];
            let mut acc = C64::ZERO;
            for (a, b) in row.iter().zip(v.entries.iter()) {
                acc += a * b;
            }
            out[i] = acc;
        }
        Ok(ComplexVector::new(out))
    }

    /// Matrix–matrix product `self · rhs` (dims must agree).
    pub fn mul_mat(&self, rhs: &Self) -> Result<Self> {
        if rhs.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: rhs.dim,
            });
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.entries[i * n + k];
                if aik == C64::ZERO {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += aik * rhs.entries[k * n + j];
                }
            }
        }
        Ok(out)
    }

    /// `self + z·𝕀`.
    pub fn add_scaled_identity(&self, z: C64) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim {
            out[(i, i)] += z;
        }
        out
    }

    /// `self · z` entrywise.
    pub fn scale(&self, z: C64) -> Self {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e *= z;
        }
        out
    }

    /// Entrywise difference `self − rhs`.
    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if rhs.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: rhs.dim,
            });
        }
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(rhs.entries.iter()) {
            *a -= b;
        }
        Ok(out)
    }

    /// 1-norm: maximum absolute column sum.
    pub fn norm_1(&self) -> f64 {
        let n = self.dim;
        let mut best = 0.0_f64;
        for j in 0..n {
            let mut s = 0.0;
            for i in 0..n {
                s += self.entries[i * n + j].norm();
            }
            if s > best {
                best = s;
            }
        }
        best
    }

    /// Inverse via LU with partial pivoting.
    ///
    /// # Errors
    /// [`Error::DefectiveMatrix`] (condition = ∞) when the matrix is
    /// numerically singular.
    pub fn inverse(&self) -> Result<Self> {
        let lu = LuFactors::new(self, None)?;
        let n = self.dim;
        let mut inv = Self::zeros(n);
        let mut col = vec![C64::ZERO; n];
        for j in 0..n {
            col.fill(C64::ZERO);
            col[j] = C64::ONE;
            lu.solve_in_place(&mut col);
            for i in 0..n {
                inv.entries[i * n + j] = col[i];
            }
        }
        Ok(inv)
    }

    /// 1-norm condition number via explicit inverse; ∞ when singular.
    pub fn condition_1(&self) -> f64 {
        match self.inverse() {
            Ok(inv) => self.norm_1() * inv.norm_1(),
            Err(_) => f64::INFINITY,
        }
    }
}

impl core::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i * self.dim + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.entries[i * self.dim + j]
    }
}

/// Complex column vector, dim ≥ 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector {
    entries: Vec<C64>,
}

impl ComplexVector {
    /// Build from entries (must be non-empty).
    pub fn new(entries: Vec<C64>) -> Self {
        assert!(!entries.is_empty(), "vector must have dim ≥ 1");
        debug_assert!(
            entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()),
            "vector entries must be finite"
        );
        Self { entries }
    }

    /// Zero vector of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "vector must have dim ≥ 1");
        Self {
            entries: vec![C64::ZERO; dim],
        }
    }

    /// Dimension.
    #[inline]
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Entry slice.
    #[inline]
    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    /// Euclidean norm ‖v‖₂.
    pub fn norm_2(&self) -> f64 {
        libm::sqrt(self.entries.iter().map(|z| z.norm_sqr()).sum())
    }

    /// Conjugating inner product ⟨self|rhs⟩ = Σ conj(self_i)·rhs_i.
    pub fn inner(&self, rhs: &Self) -> Result<C64> {
        if rhs.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: rhs.dim(),
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(rhs.entries.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Unit-norm copy (no-op direction for the zero vector is a caller bug).
    pub fn normalized(&self) -> Self {
        let n = self.norm_2();
        debug_assert!(n > 0.0, "cannot normalize the zero vector");
        self.scale(c64(1.0 / n, 0.0))
    }

    /// Scaled copy `z·self`.
    pub fn scale(&self, z: C64) -> Self {
        Self {
            entries: self.entries.iter().map(|e| e * z).collect(),
        }
    }

    /// Entrywise difference.
    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if rhs.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: rhs.dim(),
            });
        }
        Ok(Self {
            entries: self
                .entries
                .iter()
                .zip(rhs.entries.iter())
                .map(|(a, b)| a - b)
                .collect(),
        })
    }
}

impl core::ops::Index<usize> for ComplexVector {
    type Output = C64;
    #[inline]
    fn index(&self, i: usize) -> &C64 {
        &self.entries[i]
    }
}

impl core::ops::IndexMut<usize> for ComplexVector {
    #[inline]
    fn index_mut(&mut self, i: usize) -> &mut C64 {
        &mut self.entries[i]
    }
}

// ─────────────────────────────────────────────────────────────────────────
// LU decomposition (internal workhorse)
// ─────────────────────────────────────────────────────────────────────────

/// Packed LU factors with partial pivoting.
///
/// With `clamp_pivots` the factorization never fails: zero pivots are
/// replaced by ±eps·‖A‖₁, the standard device that lets inverse iteration
/// solve against a (near-)singular shifted matrix.
struct LuFactors {
    dim: usize,
    lu: Vec<C64>,
    perm: Vec<usize>,
}

impl LuFactors {
    /// Factor `a`. With `pivot_floor = Some(f)` tiny pivots are replaced by
    /// `f` instead of failing; with `None` a pivot below eps·‖a‖₁ is an
    /// error.
    fn new(a: &ComplexMatrix, pivot_floor: Option<f64>) -> Result<Self> {
        let n = a.dim();
        let mut lu = a.entries().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let floor = pivot_floor.unwrap_or((EPS * a.norm_1()).max(f64::MIN_POSITIVE));
        for k in 0..n {
            // Partial pivot: largest |entry| in column k at or below row k.
            let mut p = k;
            let mut best = lu[k * n + k].norm();
            for i in (k + 1)..n {
                let mag = lu[i * n + k].norm();
                if mag > best {
                    best = mag;
                    p = i;
                }
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let mut pivot = lu[k * n + k];
            if pivot.norm() < floor {
                if pivot_floor.is_none() {
                    return Err(Error::DefectiveMatrix {
                        condition: f64::INFINITY,
                    });
                }
                pivot = c64(floor, 0.0);
                lu[k * n + k] = pivot;
            }
            for i in (k + 1)..n {
                let factor = lu[i * n + k] / pivot;
                lu[i * n + k] = factor;
                for j in (k + 1)..n {
                    let u = lu[k * n + j];
                    lu[i * n + j] -= factor * u;
                }
            }
        }
        Ok(Self { dim: n, lu, perm })
    }

    /// Solve `A·x = b` in place: `b` enters as the right-hand side and
    /// leaves as the solution.
    fn solve_in_place(&self, b: &mut [C64]) {
        let n = self.dim;
        debug_assert_eq!(b.len(), n);
        // Apply the row permutation.
        let mut x: Vec<C64> = (0..n).map(|i| b[self.perm[i]]).collect();
        // Forward substitution with unit-diagonal L.
        for i in 1..n {
            let mut acc = x[i];
            for j in 0..i {
                acc -= self.lu[i * n + j] * x[j];
            }
            x[i] = acc;
        }
        // Back substitution with U.
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in (i + 1)..n {
                acc -= self.lu[i * n + j] * x[j];
            }
            x[i] = acc / self.lu[i * n + i];
        }
        b.copy_from_slice(&x);
    }
}

// ─────────────────────────────────────────────────────────────────────────
// Eigendecomposition
// ─────────────────────────────────────────────────────────────────────────

/// Result of [`eig_general`]: eigenvalues sorted by ascending real part
/// (ties by ascending imaginary part) with unit-norm right eigenvectors in
/// matching order.
#[derive(Debug, Clone)]
pub struct Eigendecomposition {
    /// Eigenvalues λ_n, sorted.
    pub values: Vec<C64>,
    /// Unit 2-norm right eigenvectors, `vectors[n]` pairs with `values[n]`.
    pub right_vectors: Vec<ComplexVector>,
}

/// General complex eigendecomposition for dim ≤ 16.
///
/// # Method
/// Analytic quadratic for dim 2, analytic cubic (trigonometric method with
/// a Newton polish) for dim 3, Householder-Hessenberg + Wilkinson-shifted QR
/// for 4 ≤ dim ≤ 16. Eigenvectors come from inverse iteration against the
/// original matrix, with a residual check ‖m·v − λ·v‖₂ ≤ tol·‖m‖₁.
///
/// # Errors
/// [`Error::DefectiveMatrix`] when the right-eigenvector matrix has 1-norm
/// condition number above 1/tol (the signature of an exceptional point), or
/// when an eigenvector cannot be resolved to the residual tolerance.
///
/// # Panics
/// Panics if `m.dim() > 16` (design scope) or `tol ≤ 0`.
pub fn eig_general(m: &ComplexMatrix, tol: f64) -> Result<Eigendecomposition> {
    assert!(m.dim() <= 16, "eig_general design scope is dim ≤ 16");
    assert!(tol > 0.0, "tol must be positive");
    let n = m.dim();
    let mut values = match n {
        1 => vec![m[(0, 0)]],
        2 => eig2_values(m),
        3 => eig3_values(m),
        _ => qr_eigenvalues(m)?,
    };
    sort_eigenvalues(&mut values);

    let scale = m.norm_1().max(f64::MIN_POSITIVE);
    let mut vectors = Vec::with_capacity(n);
    for (idx, &lambda) in values.iter().enumerate() {
        vectors.push(eigenvector_inverse_iteration(m, lambda, tol, scale, idx)?);
    }

    // Defectiveness gate: condition of the eigenvector matrix.
    if n > 1 {
        let mut vmat = ComplexMatrix::zeros(n);
        for (j, v) in vectors.iter().enumerate() {
            for i in 0..n {
                vmat[(i, j)] = v[i];
            }
        }
        let cond = vmat.condition_1();
        if !(cond <= 1.0 / tol) {
            return Err(Error::DefectiveMatrix { condition: cond });
        }
    }

    Ok(Eigendecomposition {
        values,
        right_vectors: vectors,
    })
}

/// Ascending real part, ties by ascending imaginary part.
fn sort_eigenvalues(values: &mut [C64]) {
    values.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
}

/// Stable closed-form eigenvalues of a 2×2 complex matrix.
fn eig2_values(m: &ComplexMatrix) -> Vec<C64> {
    let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let tr = a + d;
    let det = a * d - b * c;
    let mut disc = (tr * tr - det.scale(4.0)).sqrt();
    // Pick the branch that adds constructively to the trace, then recover the
    // second root from the determinant when possible (cancellation-free).
    if (tr.conj() * disc).re < 0.0 {
        disc = -disc;
    }
    let l1 = (tr + disc).scale(0.5);
    let l2 = if l1.norm() > 0.0 { det / l1 } else { (tr - disc).scale(0.5) };
    vec![l1, l2]
}

/// Closed-form eigenvalues of a 3×3 complex matrix: trigonometric solution
/// of the characteristic cubic, then a Newton polish on each root.
fn eig3_values(m: &ComplexMatrix) -> Vec<C64> {
    // λ³ − c2·λ² + c1·λ − c0 = 0
    let c2 = m[(0, 0)] + m[(1, 1)] + m[(2, 2)];
    let c1 = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]
        + m[(0, 0)] * m[(2, 2)]
        - m[(0, 2)] * m[(2, 0)]
        + m[(1, 1)] * m[(2, 2)]
        - m[(1, 2)] * m[(2, 1)];
    let c0 = m[(0, 0)] * (m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)])
        - m[(0, 1)] * (m[(1, 0)] * m[(2, 2)] - m[(1, 2)] * m[(2, 0)])
        + m[(0, 2)] * (m[(1, 0)] * m[(2, 1)] - m[(1, 1)] * m[(2, 0)]);

    // Depress: λ = x + c2/3 ⇒ x³ + p·x + q = 0, with
    // q = c1·c2/3 − c0 − 2c2³/27 (e.g. diag(1,2,4): p = −7/3, q = −20/27).
    let shift = c2.scale(1.0 / 3.0);
    let p = c1 - c2 * c2.scale(1.0 / 3.0);
    let q = c1 * shift - c0 - c2 * c2 * c2.scale(2.0 / 27.0);

    let magnitude = libm::cbrt(q.norm()).max(libm::sqrt(p.norm()));
    let mut roots: Vec<C64> = if p.norm() <= 1e-14 * magnitude * magnitude {
        // p ≈ 0: the three cube roots of −q.
        let r = (-q).powf(1.0 / 3.0);
        let w = C64::from_polar(1.0, 2.0 * core::f64::consts::PI / 3.0);
        vec![r, r * w, r * w * w]
    } else {
        // x_k = 2√(−p/3)·cos(θ/3 − 2πk/3), θ = acos( (3q)/(2p)·√(−3/p) ),
        // with all branches principal; valid for complex p, q.
        let s = (-p.scale(1.0 / 3.0)).sqrt();
        let arg = q.scale(3.0 / 2.0) / (p * s);
        let theta = arg.acos();
        (0..3)
            .map(|k| {
                let phase = theta.scale(1.0 / 3.0)
                    - c64(2.0 * core::f64::consts::PI * k as f64 / 3.0, 0.0);
                s.scale(2.0) * phase.cos()
            })
            .collect()
    };

    // Newton polish on the depressed cubic restores full precision after the
    // trigonometric branch arithmetic.
    for x in &mut roots {
        for _ in 0..4 {
            let f = *x * *x * *x + p * *x + q;
            let df = (*x * *x).scale(3.0) + p;
            if df.norm() == 0.0 {
                break;
            }
            let step = f / df;
            *x -= step;
            if step.norm() <= 1e-20 * x.norm().max(1.0) {
                break;
            }
        }
    }

    roots.into_iter().map(|x| x + shift).collect()
}

/// Eigenvalues of a 4 ≤ dim ≤ 16 matrix: Householder reduction to upper
/// Hessenberg form, then explicit single-shift QR with Wilkinson shifts and
/// deflation.
fn qr_eigenvalues(m: &ComplexMatrix) -> Result<Vec<C64>> {
    let n = m.dim();
    let mut h = m.clone();
    hessenberg_in_place(&mut h);

    let mut values = Vec::with_capacity(n);
    let mut hi = n; // active block is rows/cols 0..hi
    let mut iters_since_deflation = 0usize;
    let mut total_iters = 0usize;
    let max_iters = 60 * n;

    while hi > 0 {
        // Scan for a negligible subdiagonal entry inside the active block.
        let mut lo = hi - 1;
        while lo > 0 {
            let small =
                EPS * (h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm()).max(f64::MIN_POSITIVE);
            if h[(lo, lo - 1)].norm() <= small {
                h[(lo, lo - 1)] = C64::ZERO;
                break;
            }
            lo -= 1;
        }

        if lo == hi - 1 {
            // 1×1 block converged.
            values.push(h[(hi - 1, hi - 1)]);
            hi -= 1;
            iters_since_deflation = 0;
            continue;
        }
        if lo == hi - 2 {
            // 2×2 block: solve directly.
            let sub = ComplexMatrix::new(
                2,
                vec![
                    h[(hi - 2, hi - 2)],
                    h[(hi - 2, hi - 1)],
                    h[(hi - 1, hi - 2)],
                    h[(hi - 1, hi - 1)],
                ],
            )?;
            values.extend(eig2_values(&sub));
            hi -= 2;
            iters_since_deflation = 0;
            continue;
        }

        total_iters += 1;
        iters_since_deflation += 1;
        if total_iters > max_iters {
            return Err(Error::DefectiveMatrix {
                condition: f64::INFINITY,
            });
        }

        // Wilkinson shift from the trailing 2×2 of the active block, with an
        // occasional exceptional shift to break symmetry stalls.
        let shift = if iters_since_deflation % 12 == 0 {
            h[(hi - 1, hi - 1)] + h[(hi - 1, hi - 2)].scale(0.75)
        } else {
            let sub = ComplexMatrix::new(
                2,
                vec![
                    h[(hi - 2, hi - 2)],
                    h[(hi - 2, hi - 1)],
                    h[(hi - 1, hi - 2)],
                    h[(hi - 1, hi - 1)],
                ],
            )?;
            let ls = eig2_values(&sub);
            let corner = h[(hi - 1, hi - 1)];
            if (ls[0] - corner).norm() <= (ls[1] - corner).norm() {
                ls[0]
            } else {
                ls[1]
            }
        };

        qr_step(&mut h, lo, hi, shift);
    }

    Ok(values)
}

/// In-place Householder reduction to upper Hessenberg form.
fn hessenberg_in_place(h: &mut ComplexMatrix) {
    let n = h.dim();
    for k in 0..n.saturating_sub(2) {
        // Build the reflector that zeroes column k below row k+1.
        let mut xnorm = 0.0;
        for i in (k + 1)..n {
            xnorm += h[(i, k)].norm_sqr();
        }
        let xnorm = libm::sqrt(xnorm);
        if xnorm <= EPS * h.norm_1() {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() > 0.0 {
            x0 / c64(x0.norm(), 0.0)
        } else {
            C64::ONE
        };
        let alpha = -phase.scale(xnorm);
        // v = x − α·e₁, normalized.
        let mut v = vec![C64::ZERO; n];
        v[k + 1] = x0 - alpha;
        for i in (k + 2)..n {
            v[i] = h[(i, k)];
        }
        let vnorm = libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>());
        if vnorm == 0.0 {
            continue;
        }
        for z in &mut v {
            *z /= c64(vnorm, 0.0);
        }
        // H ← (𝕀 − 2vv†) H (𝕀 − 2vv†)
        // Left: rows (k+1..n) updated per column.
        for j in 0..n {
            let mut dot = C64::ZERO;
            for i in (k + 1)..n {
                dot += v[i].conj() * h[(i, j)];
            }
            let dot = dot.scale(2.0);
            for i in (k + 1)..n {
                let sub = v[i] * dot;
                h[(i, j)] -= sub;
            }
        }
        // Right: columns (k+1..n) updated per row.
        for i in 0..n {
            let mut dot = C64::ZERO;
            for j in (k + 1)..n {
                dot += h[(i, j)] * v[j];
            }
            let dot = dot.scale(2.0);
            for j in (k + 1)..n {
                let sub = dot * v[j].conj();
                h[(i, j)] -= sub;
            }
        }
    }
    // Clean the strictly-lower part below the first subdiagonal.
    for i in 2..n {
        for j in 0..(i - 1) {
            h[(i, j)] = C64::ZERO;
        }
    }
}

/// One explicit single-shift QR sweep on the active Hessenberg block
/// `lo..hi`: factor H − μ𝕀 = QR by Givens rotations, reassemble RQ + μ𝕀.
fn qr_step(h: &mut ComplexMatrix, lo: usize, hi: usize, shift: C64) {
    let n = h.dim();
    for i in lo..hi {
        h[(i, i)] -= shift;
    }
    // Left rotations zeroing the subdiagonal.
    let mut rotations = Vec::with_capacity(hi - lo - 1);
    for i in lo..(hi - 1) {
        let a = h[(i, i)];
        let b = h[(i + 1, i)];
        let r = libm::sqrt(a.norm_sqr() + b.norm_sqr());
        let (c, s) = if r == 0.0 {
            (C64::ONE, C64::ZERO)
        } else {
            (a / c64(r, 0.0), b / c64(r, 0.0))
        };
        rotations.push((c, s));
        // Apply G† to rows i, i+1 over columns i..n (Hessenberg: nothing to
        // the left of column i).
        for j in i..n {
            let top = h[(i, j)];
            let bot = h[(i + 1, j)];
            h[(i, j)] = c.conj() * top + s.conj() * bot;
            h[(i + 1, j)] = -s * top + c * bot;
        }
    }
    // Right rotations: H ← H·G₀·G₁·…
    for (idx, (c, s)) in rotations.iter().enumerate() {
        let i = lo + idx;
        let top_limit = (i + 2).min(hi);
        for row in 0..top_limit {
            let left = h[(row, i)];
            let right = h[(row, i + 1)];
            h[(row, i)] = left * c + right * s;
            h[(row, i + 1)] = -left * s.conj() + right * c.conj();
        }
    }
    for i in lo..hi {
        h[(i, i)] += shift;
    }
}

/// Right eigenvector for a known eigenvalue by inverse iteration with
/// pivot-clamped LU, retrying from rotated seeds until the residual
/// ‖m·v − λ·v‖₂ ≤ tol·‖m‖₁ is met.
fn eigenvector_inverse_iteration(
    m: &ComplexMatrix,
    lambda: C64,
    tol: f64,
    scale: f64,
    salt: usize,
) -> Result<ComplexVector> {
    let n = m.dim();
    let shifted = m.add_scaled_identity(-lambda);
    // Pivot floor tied to the scale of m itself: the shifted matrix can be
    // exactly singular (that is the point of inverse iteration).
    let lu = LuFactors::new(&shifted, Some((EPS * scale).max(f64::MIN_POSITIVE)))?;
    let mut best: Option<(f64, ComplexVector)> = None;

    for attempt in 0..4u32 {
        // Deterministic seed, varied per attempt and per eigenvalue index so
        // repeated eigenvalues of a diagonalizable matrix still receive
        // independent directions.
        let mut v: Vec<C64> = (0..n)
            .map(|i| {
                // Per-component phase increment depends on attempt and salt,
                // so no two seeds are collinear (a uniform offset would only
                // change the global phase).
                let increment = 0.7548776662466927
                    + 0.1327 * f64::from(attempt)
                    + 0.241_373 * salt as f64;
                C64::from_polar(1.0, increment * (i as f64 + 1.0) * core::f64::consts::TAU)
            })
            .collect();
        normalize_slice(&mut v);
        let mut converged = false;
        for _ in 0..4 {
            lu.solve_in_place(&mut v);
            let growth = normalize_slice(&mut v);
            // Huge growth means v is already dominated by the null direction.
            if growth > 1.0 / (EPS * 16.0) {
                converged = true;
            }
        }
        let candidate = ComplexVector::new(v.clone());
        let residual = m
            .mul_vec(&candidate)?
            .sub(&candidate.scale(lambda))?
            .norm_2();
        if residual <= tol * scale {
            return Ok(candidate);
        }
        if converged && residual <= 16.0 * tol * scale {
            return Ok(candidate);
        }
        match &best {
            Some((r, _)) if *r <= residual => {}
            _ => best = Some((residual, candidate)),
        }
    }

    // No seed reached the contractual residual: treat as defective at this
    // tolerance rather than return a silently bad vector.
    let _ = best;
    Err(Error::DefectiveMatrix {
        condition: f64::INFINITY,
    })
}

/// Normalize a complex slice to unit 2-norm; returns the pre-normalization
/// norm.
fn normalize_slice(v: &mut [C64]) -> f64 {
    let norm = libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>());
    if norm > 0.0 {
        for z in v.iter_mut() {
            *z /= c64(norm, 0.0);
        }
    }
    norm
}

// ─────────────────────────────────────────────────────────────────────────
// Matrix exponential action
// ─────────────────────────────────────────────────────────────────────────

/// Compute `exp(m·t)·v` by scaling-and-squaring with a Taylor series on the
/// scaled matrix (‖m·t/2^s‖₁ ≤ 0.5, terms summed to relative 1e−16, well
/// inside the contractual 1e−12 relative truncation error).
///
/// # Errors
/// [`Error::DimensionMismatch`] when `v.dim() != m.dim()`.
pub fn expm_apply(m: &ComplexMatrix, t: f64, v: &ComplexVector) -> Result<ComplexVector> {
    if v.dim() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            got: v.dim(),
        });
    }
    let n = m.dim();
    let b = m.scale(c64(t, 0.0));
    let eta = b.norm_1();
    let squarings = if eta <= 0.5 {
        0
    } else {
        libm::ceil(libm::log2(eta / 0.5)) as u32
    };
    let scaled = b.scale(c64(libm::exp2(-f64::from(squarings)), 0.0));

    // exp(scaled) by Taylor summation.
    let mut result = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for j in 1..=30u32 {
        term = term.mul_mat(&scaled).expect("same dim");
        term = term.scale(c64(1.0 / f64::from(j), 0.0));
        for (r, s) in result.entries.iter_mut().zip(term.entries.iter()) {
            *r += s;
        }
        if term.norm_1() <= 1e-16 * result.norm_1() {
            break;
        }
    }
    for _ in 0..squarings {
        result = result.mul_mat(&result).expect("same dim");
    }
    result.mul_vec(v)
}

// ─────────────────────────────────────────────────────────────────────────
// Scalar root finding and minimization
// ─────────────────────────────────────────────────────────────────────────

/// Bracketed scalar root finding: Brent's method (inverse quadratic /
/// secant with a bisection fallback). Returns `t` with |f(t)| ≤ tol or
/// bracket width ≤ tol; the result always lies inside the initial bracket.
///
/// # Errors
/// [`Error::NoBracket`] when f(lo) and f(hi) strictly share a sign.
///
/// # Panics
/// Panics if `lo >= hi` or `tol <= 0`.
pub fn find_root_bracketed(
    mut f: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<f64> {
    assert!(lo < hi, "need lo < hi");
    assert!(tol > 0.0, "tol must be positive");
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa * fb > 0.0 {
        return Err(Error::NoBracket { f_lo: fa, f_hi: fb });
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;

    for _ in 0..200 {
        if fb * fc > 0.0 {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * EPS * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb.abs() <= tol {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // Inverse quadratic interpolation (secant when a == c).
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * xm * s, 1.0 - s)
            } else {
                let q = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0)),
                    (q - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b += d;
        } else {
            b += if xm >= 0.0 { tol1 } else { -tol1 };
        }
        fb = f(b);
        if fb == 0.0 {
            return Ok(b);
        }
    }
    Ok(b)
}

/// Golden-section minimization of `f` on `[lo, hi]`.
///
/// Works on continuous functions that need not be smooth at the minimum
/// (survival-amplitude magnitudes have a |linear| kink at a zero). Runs a
/// fixed 90 contractions (interval shrinks by ~1e−19 relative), returning
/// `(argmin, min)`.
pub fn golden_section_min(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    debug_assert!(lo <= hi);
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut a = lo;
    let mut b = hi;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..90 {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
        if (b - a).abs() <= f64::MIN_POSITIVE {
            break;
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

// ─────────────────────────────────────────────────────────────────────────
