use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Relative Hermiticity tolerance applied at construction.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Jacobi stops once the off-diagonal Frobenius norm drops below this fraction of `‖H‖_F`.
pub const JACOBI_TOL: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Default relative tolerance for [`loewner_leq`].
pub const DEFAULT_LOEWNER_TOL: f64 = 1e-9;

/// Complex matrix with `H = H*`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(ComplexMatrix);

impl HermitianMatrix {
    /// Accepts `m` if its Hermitian defect is within
    /// `1e-12 · (1 + max|m_ij|)` and returns the symmetrized `(m + m*)/2`.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let defect = m.hermitian_defect();
        let tolerance = HERMITIAN_TOL * (1.0 + m.max_abs());
        if defect > tolerance {
            return Err(Error::NotHermitian { defect, tolerance });
        }
        Ok(Self::hermitian_part(&m))
    }

    /// `(m + m*)/2` with no defect check.
    ///
    /// Used for products that are Hermitian in exact arithmetic, such as `S G S`
    /// with `S` and `G` Hermitian.
    pub fn hermitian_part(m: &ComplexMatrix) -> Self {
        let n = m.dim();
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            out.set(i, i, Complex64::new(m.get(i, i).re, 0.0));
            for j in i + 1..n {
                let z = (m.get(i, j) + m.get(j, i).conj()) * 0.5;
                out.set(i, j, z);
                out.set(j, i, z.conj());
            }
        }
        Self(out)
    }

    pub fn identity(n: usize) -> Self {
        Self(ComplexMatrix::identity(n))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        Self(ComplexMatrix::from_real_diagonal(diag))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn eigh(&self) -> Result<EigenDecomposition> {
        jacobi_eigh(self)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self(self.0.try_add(&other.0)?))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(Self(self.0.try_sub(&other.0)?))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.scale(s))
    }

    /// Real trace.
    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    /// `S* H S`.
    pub fn congruence(&self, s: &ComplexMatrix) -> Result<Self> {
        let hs = self.0.try_mul(s)?;
        Ok(Self::hermitian_part(&s.adjoint().try_mul(&hs)?))
    }

    /// `max |λ_i|`.
    pub fn spectral_norm(&self) -> Result<f64> {
        Ok(self.eigh()?.spectral_radius())
    }

    /// `Σ_i w_i H_i`, all terms of the same dimension.
    pub fn linear_combination(terms: &[(f64, &HermitianMatrix)]) -> Result<Self> {
        let (first, rest) = terms.split_first().ok_or_else(|| Error::domain("empty linear combination"))?;
        let mut acc = first.1.scale(first.0);
        for (w, h) in rest {
            acc = acc.add(&h.scale(*w))?;
        }
        Ok(acc)
    }
}

/// Eigenvalues in ascending order together with a unitary matrix whose
/// columns are the matching eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// Sorts `(values, columns of vectors)` jointly into ascending order.
    fn sorted(values: Vec<f64>, vectors: ComplexMatrix) -> Self {
        let n = values.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        if order.iter().enumerate().all(|(i, &k)| i == k) {
            return Self { eigenvalues: values, eigenvectors: vectors };
        }
        let mut q = ComplexMatrix::zeros(n);
        for (new_col, &old_col) in order.iter().enumerate() {
            for row in 0..n {
                q.set(row, new_col, vectors.get(row, old_col));
            }
        }
        Self { eigenvalues: order.iter().map(|&k| values[k]).collect(), eigenvectors: q }
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[self.dim() - 1]
    }

    pub fn spectral_radius(&self) -> f64 {
        self.min().abs().max(self.max().abs())
    }

    /// `Q · diag(d) · Q*`.
    pub fn synthesize(&self, d: &[f64]) -> HermitianMatrix {
        let n = self.dim();
        let q = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &dk) in d.iter().enumerate() {
                    acc += q.get(i, k) * dk * q.get(j, k).conj();
                }
                if i == j {
                    out.set(i, i, Complex64::new(acc.re, 0.0));
                } else {
                    out.set(i, j, acc);
                    out.set(j, i, acc.conj());
                }
            }
        }
        HermitianMatrix(out)
    }

    pub fn reconstruct(&self) -> HermitianMatrix {
        self.synthesize(&self.eigenvalues)
    }

    /// Eigenvalues after applying `phi`, failing on any non-finite image.
    pub fn mapped_values(&self, phi: impl Fn(f64) -> f64) -> Result<Vec<f64>> {
        self.eigenvalues
            .iter()
            .map(|&l| {
                let v = phi(l);
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(Error::NonFinite(format!("spectral function at eigenvalue {l:e}")))
                }
            })
            .collect()
    }

    /// `Q · diag(φ(λ_i)) · Q*`.
    pub fn map(&self, phi: impl Fn(f64) -> f64) -> Result<HermitianMatrix> {
        Ok(self.synthesize(&self.mapped_values(phi)?))
    }
}

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
///
/// Each rotation first removes the phase of the pivot `h_pq`, then applies a
/// real plane rotation; the combined 2×2 unitary is
/// `[[c, s·e^{iφ}], [−s·e^{−iφ}, c]]`.
pub fn jacobi_eigh(h: &HermitianMatrix) -> Result<EigenDecomposition> {
    let n = h.dim();
    let mut a: Vec<Complex64> = h.as_matrix().as_slice().to_vec();
    let mut v = ComplexMatrix::identity(n);
    let norm = h.as_matrix().frobenius_norm();
    let threshold = JACOBI_TOL * norm;

    let off_norm = |a: &[Complex64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = norm == 0.0 || n == 1;
    let mut sweeps = 0;
    while !converged {
        if off_norm(&a) < threshold {
            converged = true;
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off_norm: off_norm(&a) });
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                let phase = apq / mag;
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let theta = (aqq - app) / (2.0 * mag);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let s_phase = phase * s;
                let s_phase_conj = s_phase.conj();

                // A ← A U (columns p, q)
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * c - akq * s_phase_conj;
                    a[k * n + q] = akp * s_phase + akq * c;
                }
                // A ← U* A (rows p, q)
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = apk * c - aqk * s_phase;
                    a[q * n + k] = apk * s_phase_conj + aqk * c;
                }
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);
                a[p * n + p] = Complex64::new(app - t * mag, 0.0);
                a[q * n + q] = Complex64::new(aqq + t * mag, 0.0);

                // V ← V U
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, vkp * c - vkq * s_phase_conj);
                    v.set(k, q, vkp * s_phase + vkq * c);
                }
            }
        }
    }
    debug_assert!(converged);
    let values = (0..n).map(|i| a[i * n + i].re).collect();
    Ok(EigenDecomposition::sorted(values, v))
}

/// `Q · diag(φ(λ_i)) · Q*` for the eigendecomposition of `h`.
pub fn apply_spectral(h: &HermitianMatrix, phi: impl Fn(f64) -> f64) -> Result<HermitianMatrix> {
    h.eigh()?.map(phi)
}

/// Strictly positive definite Hermitian matrix. Carries its eigendecomposition
/// so that repeated powers cost one matrix synthesis each.
#[derive(Debug, Clone, PartialEq)]
pub struct SpdMatrix {
    matrix: HermitianMatrix,
    eig: EigenDecomposition,
}

impl SpdMatrix {
    pub fn new(h: HermitianMatrix) -> Result<Self> {
        let eig = h.eigh()?;
        Self::from_parts(h, eig)
    }

    /// Builds from a matrix and a matching eigendecomposition.
    pub(crate) fn from_parts(matrix: HermitianMatrix, eig: EigenDecomposition) -> Result<Self> {
        let min = eig.min();
        if !(min > 0.0) {
            return Err(Error::NotPositiveDefinite { min_eigenvalue: min });
        }
        Ok(Self { matrix, eig })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: HermitianMatrix::identity(n),
            eig: EigenDecomposition { eigenvalues: vec![1.0; n], eigenvectors: ComplexMatrix::identity(n) },
        }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Result<Self> {
        Self::new(HermitianMatrix::from_real_diagonal(diag))
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn as_hermitian(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        self.matrix.as_matrix()
    }

    pub fn eigen(&self) -> &EigenDecomposition {
        &self.eig
    }

    pub fn condition_number(&self) -> f64 {
        self.eig.max() / self.eig.min()
    }

    /// Spectral function with a positive image, keeping the decomposition.
    pub fn map_positive(&self, phi: impl Fn(f64) -> f64) -> Result<SpdMatrix> {
        let values = self.eig.mapped_values(phi)?;
        let matrix = self.eig.synthesize(&values);
        let eig = EigenDecomposition::sorted(values, self.eig.eigenvectors.clone());
        Self::from_parts(matrix, eig)
    }

    /// `A^t` through the spectral calculus; `A^0 = I` and `A^1 = A` exactly.
    pub fn pow(&self, t: f64) -> SpdMatrix {
        if t == 0.0 {
            return Self::identity(self.dim());
        }
        if t == 1.0 {
            return self.clone();
        }
        self.map_positive(|l| l.powf(t)).expect("positive powers of a positive spectrum stay positive and finite")
    }

    pub fn inverse(&self) -> SpdMatrix {
        self.pow(-1.0)
    }

    pub fn sqrt(&self) -> SpdMatrix {
        self.pow(0.5)
    }
}

/// `spd_pow(A, t) = A^t`.
pub fn spd_pow(a: &SpdMatrix, t: f64) -> SpdMatrix {
    a.pow(t)
}

/// Outcome of a Loewner-order comparison `X ≤ Y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoewnerVerdict {
    pub holds: bool,
    /// Smallest eigenvalue of `Y − X`.
    pub witness_eigenvalue: f64,
    pub tolerance_used: f64,
}

/// Tests `X ≤ Y`, i.e. `Y − X` positive semidefinite up to
/// `rel_tol · max(1, ‖X‖₂, ‖Y‖₂)`.
pub fn loewner_leq(x: &HermitianMatrix, y: &HermitianMatrix, rel_tol: f64) -> Result<LoewnerVerdict> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch { expected: x.dim(), found: y.dim() });
    }
    let diff = y.sub(x)?;
    let witness = diff.eigh()?.min();
    let scale = 1f64.max(x.spectral_norm()?).max(y.spectral_norm()?);
    let tolerance_used = rel_tol * scale;
    Ok(LoewnerVerdict { holds: witness >= -tolerance_used, witness_eigenvalue: witness, tolerance_used })
}
