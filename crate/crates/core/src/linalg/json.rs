//! `{"n": int, "re": [[...]], "im": [[...]]}` matrix files. `im` is optional
//! on input and omitted on output when every imaginary part is zero.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let n = m.dim();
        let rows = |f: fn(Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..n).map(|i| (0..n).map(|j| f(m.get(i, j))).collect()).collect()
        };
        let has_imag = m.as_slice().iter().any(|z| z.im != 0.0);
        Self { n, re: rows(|z| z.re), im: has_imag.then(|| rows(|z| z.im)) }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let n = self.n;
        let check = |rows: &Vec<Vec<f64>>, part: &str| -> Result<()> {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::Config(format!("`{part}` must be an {n}×{n} array")));
            }
            Ok(())
        };
        check(&self.re, "re")?;
        if let Some(im) = &self.im {
            check(im, "im")?;
        }
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let im = self.im.as_ref().map_or(0.0, |m| m[i][j]);
                data.push(Complex64::new(self.re[i][j], im));
            }
        }
        ComplexMatrix::new(n, data)
    }
}

pub fn matrix_to_json(m: &ComplexMatrix) -> String {
    serde_json::to_string(&MatrixJson::from_matrix(m)).expect("matrix JSON serialization")
}

pub fn matrix_from_json(s: &str) -> Result<ComplexMatrix> {
    serde_json::from_str::<MatrixJson>(s)?.to_matrix()
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix> {
    matrix_from_json(&std::fs::read_to_string(path)?)
}

pub fn write_matrix(path: &Path, m: &ComplexMatrix) -> Result<()> {
    std::fs::write(path, matrix_to_json(m) + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::random_spd;

    #[test]
    fn real_matrix_omits_im() {
        let m = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 5.0]]).unwrap();
        let s = matrix_to_json(&m);
        assert_eq!(s, r#"{"n":2,"re":[[1.0,2.0],[2.0,5.0]]}"#);
        assert_eq!(matrix_from_json(&s).unwrap(), m);
    }

    #[test]
    fn complex_round_trip_is_exact() {
        let a = random_spd(4, 100.0, 11);
        let back = matrix_from_json(&matrix_to_json(a.as_matrix())).unwrap();
        assert_eq!(&back, a.as_matrix());
    }

    #[test]
    fn rejects_ragged_rows() {
        let err = matrix_from_json(r#"{"n":2,"re":[[1.0],[0.0,1.0]]}"#).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
    }
}
