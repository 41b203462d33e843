//! Weighted operator means of positive definite matrices and the
//! Loewner-order chains obtained from scalar inequalities by spectral
//! transfer.
//!
//! For `A, B > 0` put `X = A^{−1/2} B A^{−1/2}`. If a scalar inequality
//! `φ(y) ≤ ψ(y)` holds on the spectrum of `X`, then
//! `A^{1/2} φ(X) A^{1/2} ≤ A^{1/2} ψ(X) A^{1/2}`. Every chain here is built
//! that way ([`SpectralTransfer`]); the `*_composed` functions rebuild the
//! same matrices from mean operations and serve as an independent check.

mod chains;
mod trace;
mod transfer;

use std::fmt;

pub use chains::{
    harm_operator_chain, harm_operator_composed, kantorovich_hypothesis, kantorovich_literal_product,
    kantorovich_operator_check, operator_reverse_chain, operator_reverse_composed, operator_square_chain,
    operator_square_composed, KANTOROVICH_HYPOTHESIS_READING,
};
pub use trace::{trace_chain, trace_power, TraceChains};
pub use transfer::SpectralTransfer;

use crate::error::{Error, Result};
use crate::linalg::{loewner_leq, ComplexMatrix, HermitianMatrix, LoewnerVerdict, SpdMatrix};
use crate::scalar::{s_arith, s_geom, s_harm};

/// A weighted mean together with its weight `ν`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeanKind {
    Arithmetic(f64),
    Geometric(f64),
    Harmonic(f64),
}

impl MeanKind {
    /// `arith`, `geom` or `harm` (full names accepted too).
    pub fn from_name(name: &str, nu: f64) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "arith" | "arithmetic" => Ok(Self::Arithmetic(nu)),
            "geom" | "geometric" => Ok(Self::Geometric(nu)),
            "harm" | "harmonic" => Ok(Self::Harmonic(nu)),
            _ => Err(Error::Config(format!("unknown mean `{name}` (arith, geom, harm)"))),
        }
    }

    pub fn weight(self) -> f64 {
        match self {
            Self::Arithmetic(nu) | Self::Geometric(nu) | Self::Harmonic(nu) => nu,
        }
    }

    pub fn apply(self, a: &SpdMatrix, b: &SpdMatrix) -> Result<HermitianMatrix> {
        match self {
            Self::Arithmetic(nu) => m_arith(a, b, nu),
            Self::Geometric(nu) => geom_hermitian(a, b, nu),
            Self::Harmonic(nu) => Ok(m_harm(a, b, nu)?.as_hermitian().clone()),
        }
    }

    pub fn apply_scalar(self, x: f64, y: f64) -> Result<f64> {
        match self {
            Self::Arithmetic(nu) => Ok(s_arith(x, y, nu)),
            Self::Geometric(nu) => s_geom(x, y, nu),
            Self::Harmonic(nu) => s_harm(x, y, nu),
        }
    }
}

impl fmt::Display for MeanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Arithmetic(nu) => write!(f, "arith({nu})"),
            Self::Geometric(nu) => write!(f, "geom({nu})"),
            Self::Harmonic(nu) => write!(f, "harm({nu})"),
        }
    }
}

fn check_same_dim(a: &SpdMatrix, b: &SpdMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    Ok(())
}

/// `A∇_ν B = (1−ν)A + νB`.
pub fn m_arith(a: &SpdMatrix, b: &SpdMatrix, nu: f64) -> Result<HermitianMatrix> {
    check_same_dim(a, b)?;
    if a.as_matrix() == b.as_matrix() {
        return Ok(a.as_hermitian().clone());
    }
    HermitianMatrix::linear_combination(&[(1.0 - nu, a.as_hermitian()), (nu, b.as_hermitian())])
}

/// `A#_ν B = A^{1/2}(A^{−1/2}BA^{−1/2})^ν A^{1/2}`, any real `ν`.
pub fn m_geom(a: &SpdMatrix, b: &SpdMatrix, nu: f64) -> Result<SpdMatrix> {
    check_same_dim(a, b)?;
    if nu == 0.0 || a.as_matrix() == b.as_matrix() {
        return Ok(a.clone());
    }
    if nu == 1.0 {
        return Ok(b.clone());
    }
    SpdMatrix::new(geom_hermitian(a, b, nu)?)
}

/// `A#_ν B` without the final positivity check, for weights so extreme that
/// rounding can leave a tiny negative eigenvalue.
pub fn geom_hermitian(a: &SpdMatrix, b: &SpdMatrix, nu: f64) -> Result<HermitianMatrix> {
    check_same_dim(a, b)?;
    if nu == 0.0 || a.as_matrix() == b.as_matrix() {
        return Ok(a.as_hermitian().clone());
    }
    if nu == 1.0 {
        return Ok(b.as_hermitian().clone());
    }
    SpectralTransfer::new(a, b)?.apply(|y| y.powf(nu))
}

/// `A!_ν B = ((1−ν)A^{−1} + νB^{−1})^{−1}`; the resolvent must be positive definite.
pub fn m_harm(a: &SpdMatrix, b: &SpdMatrix, nu: f64) -> Result<SpdMatrix> {
    check_same_dim(a, b)?;
    if nu == 0.0 || a.as_matrix() == b.as_matrix() {
        return Ok(a.clone());
    }
    if nu == 1.0 {
        return Ok(b.clone());
    }
    let resolvent = HermitianMatrix::linear_combination(&[
        (1.0 - nu, a.inverse().as_hermitian()),
        (nu, b.inverse().as_hermitian()),
    ])?;
    match SpdMatrix::new(resolvent) {
        Ok(r) => Ok(r.inverse()),
        Err(Error::NotPositiveDefinite { min_eigenvalue }) => Err(Error::domain(format!(
            "harmonic mean undefined at ν = {nu}: resolvent has eigenvalue {min_eigenvalue:e}"
        ))),
        Err(e) => Err(e),
    }
}

/// Hermitian matrices claimed to ascend in the Loewner order.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorChain {
    labels: Vec<&'static str>,
    matrices: Vec<HermitianMatrix>,
}

impl OperatorChain {
    pub fn new(labels: Vec<&'static str>, matrices: Vec<HermitianMatrix>) -> Result<Self> {
        if labels.len() != matrices.len() || matrices.is_empty() {
            return Err(Error::domain("chain labels and matrices must have equal, nonzero length"));
        }
        let n = matrices[0].dim();
        if let Some(m) = matrices.iter().find(|m| m.dim() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: m.dim() });
        }
        Ok(Self { labels, matrices })
    }

    pub fn labels(&self) -> &[&'static str] {
        &self.labels
    }

    pub fn matrices(&self) -> &[HermitianMatrix] {
        &self.matrices
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.matrices[0].dim()
    }

    /// `loewner_leq` on each consecutive pair.
    pub fn verify(&self, rel_tol: f64) -> Result<Vec<LoewnerVerdict>> {
        self.matrices.windows(2).map(|w| loewner_leq(&w[0], &w[1], rel_tol)).collect()
    }

    pub fn holds(&self, rel_tol: f64) -> Result<bool> {
        Ok(self.verify(rel_tol)?.iter().all(|v| v.holds))
    }

    /// Largest entrywise distance to another chain of the same shape.
    pub fn max_distance(&self, other: &OperatorChain) -> Result<f64> {
        if self.len() != other.len() {
            return Err(Error::domain("chains differ in length"));
        }
        let mut worst = 0.0f64;
        for (p, q) in self.matrices.iter().zip(&other.matrices) {
            worst = worst.max(p.as_matrix().try_sub(q.as_matrix())?.max_abs());
        }
        Ok(worst)
    }

    /// `max(1, max_i ‖M_i‖_max)`.
    pub fn scale(&self) -> f64 {
        self.matrices.iter().fold(1.0f64, |s, m| s.max(m.as_matrix().max_abs()))
    }
}

/// Product of the factors, symmetrized; for products such as `BA⁻¹B` that are Hermitian in exact arithmetic.
pub(crate) fn hermitian_product(factors: &[&ComplexMatrix]) -> Result<HermitianMatrix> {
    let (first, rest) = factors.split_first().ok_or_else(|| Error::domain("empty product"))?;
    let mut acc = (*first).clone();
    for f in rest {
        acc = acc.try_mul(f)?;
    }
    Ok(HermitianMatrix::hermitian_part(&acc))
}
