use crate::error::{Error, Result};
use crate::linalg::{EigenDecomposition, HermitianMatrix, SpdMatrix};

use super::OperatorChain;

/// The pair `(A^{1/2}, eig(A^{−1/2} B A^{−1/2}))`, from which any spectral
/// function `φ` yields `A^{1/2} φ(X) A^{1/2}`.
#[derive(Debug, Clone)]
pub struct SpectralTransfer {
    a_half: SpdMatrix,
    relative: EigenDecomposition,
}

impl SpectralTransfer {
    pub fn new(a: &SpdMatrix, b: &SpdMatrix) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
        }
        let a_neg_half = a.pow(-0.5);
        let x = b.as_hermitian().congruence(a_neg_half.as_matrix())?;
        Ok(Self { a_half: a.sqrt(), relative: x.eigh()? })
    }

    pub fn dim(&self) -> usize {
        self.a_half.dim()
    }

    /// Eigenvalues of `A^{−1/2} B A^{−1/2}`, ascending.
    pub fn relative_spectrum(&self) -> &[f64] {
        &self.relative.eigenvalues
    }

    /// `A^{1/2} φ(X) A^{1/2}`.
    pub fn apply(&self, phi: impl Fn(f64) -> f64) -> Result<HermitianMatrix> {
        self.relative.map(phi)?.congruence(self.a_half.as_matrix())
    }

    /// Evaluates a scalar chain at every eigenvalue of `X` and transports each
    /// position of the chain.
    pub fn apply_chain(
        &self,
        labels: Vec<&'static str>,
        chain_at: impl Fn(f64) -> Result<Vec<f64>>,
    ) -> Result<OperatorChain> {
        let per_eigenvalue: Vec<Vec<f64>> =
            self.relative.eigenvalues.iter().map(|&y| chain_at(y)).collect::<Result<_>>()?;
        let matrices = (0..labels.len())
            .map(|k| {
                let d: Vec<f64> = per_eigenvalue.iter().map(|v| v[k]).collect();
                if let Some(bad) = d.iter().find(|v| !v.is_finite()) {
                    return Err(Error::NonFinite(format!("chain entry `{}` = {bad}", labels[k])));
                }
                self.relative.synthesize(&d).congruence(self.a_half.as_matrix())
            })
            .collect::<Result<Vec<_>>>()?;
        OperatorChain::new(labels, matrices)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::{random_spd_with, rng_from_seed};

    #[test]
    fn identity_and_linear_maps() {
        let mut rng = rng_from_seed(4);
        let a = random_spd_with(&mut rng, 4, 50.0);
        let b = random_spd_with(&mut rng, 4, 50.0);
        let t = SpectralTransfer::new(&a, &b).unwrap();
        let one = t.apply(|_| 1.0).unwrap();
        let lin = t.apply(|y| y).unwrap();
        let s = a.as_matrix().max_abs().max(b.as_matrix().max_abs());
        assert!(one.as_matrix().try_sub(a.as_matrix()).unwrap().max_abs() <= 1e-12 * s);
        assert!(lin.as_matrix().try_sub(b.as_matrix()).unwrap().max_abs() <= 1e-12 * s);
        assert!(t.relative_spectrum().iter().all(|&y| y > 0.0));
    }
}
