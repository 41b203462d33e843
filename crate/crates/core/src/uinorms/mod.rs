//! Singular values and unitarily invariant norms, with the norm-functional
//! inequality chains built on them.

mod chains;
mod heinz;

use std::fmt;
use std::str::FromStr;

pub use chains::{combined_norm_chain, norm_functional, norm_heinz_chain, norm_reverse_chain};
pub use heinz::{
    heinz_interpolated, heinz_interpolated_grid, heinz_norm, heinz_pq_check, heinz_reverse_chain, heinz_shape_checks,
    HeinzShapeReport, HEINZ_GRID_POINTS, HEINZ_NU_RANGE,
};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianMatrix, SpdMatrix};

/// A unitarily invariant norm on square matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormKind {
    /// `(Σ σᵢᵖ)^{1/p}`, `p ≥ 1`.
    SchattenP(f64),
    /// Sum of the `k` largest singular values; `k` is clamped to the dimension.
    KyFan(usize),
    Spectral,
    TraceNorm,
    Frobenius,
}

impl NormKind {
    /// One representative of every family, used by the harness.
    pub const SAMPLE: [NormKind; 5] =
        [NormKind::Spectral, NormKind::TraceNorm, NormKind::Frobenius, NormKind::SchattenP(3.0), NormKind::KyFan(2)];

    pub fn validate(self) -> Result<Self> {
        match self {
            NormKind::SchattenP(p) if !(p >= 1.0) || p.is_nan() => {
                Err(Error::domain(format!("Schatten exponent p = {p} must be at least 1")))
            }
            NormKind::KyFan(0) => Err(Error::domain("Ky Fan index k must be at least 1")),
            k => Ok(k),
        }
    }
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormKind::SchattenP(p) => write!(f, "schatten:{p}"),
            NormKind::KyFan(k) => write!(f, "kyfan:{k}"),
            NormKind::Spectral => f.write_str("spectral"),
            NormKind::TraceNorm => f.write_str("trace"),
            NormKind::Frobenius => f.write_str("frobenius"),
        }
    }
}

impl FromStr for NormKind {
    type Err = Error;

    /// `spectral`, `trace`, `frobenius`, `schatten:<p>` or `kyfan:<k>`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let bad = || Error::Config(format!("unknown norm `{s}` (spectral, trace, frobenius, schatten:<p>, kyfan:<k>)"));
        let kind = match lower.split_once(':') {
            None => match lower.as_str() {
                "spectral" | "operator" => NormKind::Spectral,
                "trace" | "nuclear" => NormKind::TraceNorm,
                "frobenius" | "hs" => NormKind::Frobenius,
                _ => return Err(bad()),
            },
            Some(("schatten", p)) => NormKind::SchattenP(p.parse().map_err(|_| bad())?),
            Some(("kyfan", k)) => NormKind::KyFan(k.parse().map_err(|_| bad())?),
            Some(_) => return Err(bad()),
        };
        kind.validate()
    }
}

/// Singular values in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSpectrum(Vec<f64>);

impl SingularSpectrum {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn largest(&self) -> f64 {
        self.0.first().copied().unwrap_or(0.0)
    }

    pub fn norm(&self, kind: NormKind) -> f64 {
        let s = &self.0;
        match kind {
            NormKind::Spectral => self.largest(),
            NormKind::TraceNorm => s.iter().sum(),
            NormKind::Frobenius => s.iter().map(|v| v * v).sum::<f64>().sqrt(),
            NormKind::KyFan(k) => s.iter().take(k.max(1)).sum(),
            NormKind::SchattenP(p) => {
                let top = self.largest();
                if top == 0.0 {
                    return 0.0;
                }
                top * s.iter().map(|v| (v / top).powf(p)).sum::<f64>().powf(1.0 / p)
            }
        }
    }
}

/// Square roots of the eigenvalues of `X*X`, descending; tiny negative
/// rounding is clamped to zero.
pub fn singular_values(x: &ComplexMatrix) -> Result<SingularSpectrum> {
    let gram = HermitianMatrix::hermitian_part(&x.adjoint().try_mul(x)?);
    let mut values: Vec<f64> = gram.eigh()?.eigenvalues.into_iter().map(|l| l.max(0.0).sqrt()).collect();
    values.reverse();
    Ok(SingularSpectrum(values))
}

pub fn ui_norm(x: &ComplexMatrix, kind: NormKind) -> Result<f64> {
    let kind = kind.validate()?;
    Ok(singular_values(x)?.norm(kind))
}

/// `Aˢ X Bᵗ`.
pub(crate) fn sandwich(a: &SpdMatrix, s: f64, x: &ComplexMatrix, b: &SpdMatrix, t: f64) -> Result<ComplexMatrix> {
    if a.dim() != x.dim() || b.dim() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: if a.dim() != x.dim() { a.dim() } else { b.dim() },
        });
    }
    a.pow(s).as_matrix().try_mul(x)?.try_mul(b.pow(t).as_matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::{random_complex, random_unitary, rng_from_seed};
    use num_complex::Complex64;
    use proptest::prelude::*;

    #[test]
    fn identity_and_diagonal() {
        let s = singular_values(&ComplexMatrix::identity(3)).unwrap();
        assert!(s.values().iter().all(|v| (v - 1.0).abs() < 1e-15));
        let d = ComplexMatrix::from_real_diagonal(&[3.0, -4.0]);
        let s = singular_values(&d).unwrap();
        assert!((s.values()[0] - 4.0).abs() < 1e-14 && (s.values()[1] - 3.0).abs() < 1e-14);
        assert_eq!(ui_norm(&ComplexMatrix::identity(3), NormKind::TraceNorm).unwrap(), 3.0);
        let d = ComplexMatrix::from_real_diagonal(&[3.0, 4.0]);
        assert!((ui_norm(&d, NormKind::SchattenP(2.0)).unwrap() - 5.0).abs() < 1e-14);
        assert!((ui_norm(&d, NormKind::Frobenius).unwrap() - 5.0).abs() < 1e-14);
        assert!((ui_norm(&d, NormKind::KyFan(7)).unwrap() - 7.0).abs() < 1e-14);
        assert!((ui_norm(&d, NormKind::Spectral).unwrap() - 4.0).abs() < 1e-14);
    }

    #[test]
    fn frobenius_identity() {
        let mut rng = rng_from_seed(5);
        for n in 1..=7 {
            let x = random_complex(&mut rng, n);
            let s = singular_values(&x).unwrap();
            let sum: f64 = s.values().iter().map(|v| v * v).sum();
            let f2 = x.frobenius_norm().powi(2);
            assert!((sum - f2).abs() <= 1e-12 * f2);
            assert!(s.values().windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn kind_aliases_agree() {
        let mut rng = rng_from_seed(9);
        let x = random_complex(&mut rng, 4);
        let n = |k| ui_norm(&x, k).unwrap();
        assert!((n(NormKind::Spectral) - n(NormKind::KyFan(1))).abs() < 1e-12);
        assert!((n(NormKind::TraceNorm) - n(NormKind::SchattenP(1.0))).abs() < 1e-12);
        assert!((n(NormKind::Frobenius) - n(NormKind::SchattenP(2.0))).abs() < 1e-12);
    }

    #[test]
    fn parse_round_trip() {
        for k in NormKind::SAMPLE {
            assert_eq!(k.to_string().parse::<NormKind>().unwrap(), k);
        }
        assert!("schatten:0.5".parse::<NormKind>().is_err());
        assert!("kyfan:0".parse::<NormKind>().is_err());
        assert!("bogus".parse::<NormKind>().is_err());
    }

    #[test]
    fn unitary_invariance() {
        let mut rng = rng_from_seed(11);
        for trial in 0..100 {
            let n = 1 + trial % 6;
            let x = random_complex(&mut rng, n);
            let u = random_unitary(&mut rng, n);
            let v = random_unitary(&mut rng, n);
            let uxv = &(&u * &x) * &v;
            for k in NormKind::SAMPLE {
                let a = ui_norm(&x, k).unwrap();
                let b = ui_norm(&uxv, k).unwrap();
                assert!((a - b).abs() <= 1e-9 * a, "{k}: {a} vs {b}");
            }
        }
    }

    proptest! {
        #[test]
        fn triangle_and_homogeneity(seed in 0u64..10_000, n in 1usize..6, c in -5.0f64..5.0, k in 0usize..5) {
            let mut rng = rng_from_seed(seed);
            let x = random_complex(&mut rng, n);
            let y = random_complex(&mut rng, n);
            let kind = NormKind::SAMPLE[k];
            let nx = ui_norm(&x, kind).unwrap();
            let ny = ui_norm(&y, kind).unwrap();
            let sum = ui_norm(&x.try_add(&y).unwrap(), kind).unwrap();
            prop_assert!(sum <= (nx + ny) * (1.0 + 1e-12));
            let cx = ComplexMatrix::new(n, x.as_slice().iter().map(|z| z * Complex64::new(0.0, c)).collect()).unwrap();
            prop_assert!((ui_norm(&cx, kind).unwrap() - c.abs() * nx).abs() <= 1e-12 * nx.max(1.0) * c.abs().max(1.0));
        }
    }
}
