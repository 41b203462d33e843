//! Seeded random instances: Gaussian matrices, Haar-like unitaries, and SPD
//! matrices with a prescribed condition-number cap.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::hermitian::{EigenDecomposition, HermitianMatrix, SpdMatrix};
use super::matrix::ComplexMatrix;

pub type InstanceRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Matrix of i.i.d. standard complex Gaussians.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let data = (0..n * n).map(|_| gaussian(rng)).collect();
    ComplexMatrix::new(n, data).expect("gaussian samples are finite")
}

/// Unitary from modified Gram–Schmidt on the columns of a complex Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    loop {
        let g = random_complex(rng, n);
        let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| (0..n).map(|i| g.get(i, j)).collect()).collect();
        let mut ok = true;
        for k in 0..n {
            for j in 0..k {
                let (done, rest) = cols.split_at_mut(k);
                let qj = &done[j];
                let r: Complex64 = qj.iter().zip(rest[0].iter()).map(|(q, v)| q.conj() * v).sum();
                for (v, q) in rest[0].iter_mut().zip(qj) {
                    *v -= r * q;
                }
            }
            let norm = cols[k].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-8 {
                ok = false;
                break;
            }
            for v in cols[k].iter_mut() {
                *v /= norm;
            }
        }
        if ok {
            let mut q = ComplexMatrix::zeros(n);
            for (j, col) in cols.iter().enumerate() {
                for (i, &z) in col.iter().enumerate() {
                    q.set(i, j, z);
                }
            }
            return q;
        }
    }
}

/// Hermitian matrix `(G + G*)/2 · scale` from a Gaussian `G`.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> HermitianMatrix {
    HermitianMatrix::hermitian_part(&random_complex(rng, n).scale(scale))
}

/// Spectrum log-uniform in `[1/√cond_max, √cond_max]`, ascending.
pub fn log_uniform_spectrum<R: Rng + ?Sized>(rng: &mut R, n: usize, cond_max: f64) -> Vec<f64> {
    let half = 0.5 * cond_max.ln();
    let mut values: Vec<f64> = (0..n).map(|_| (rng.random::<f64>() * 2.0 * half - half).exp()).collect();
    values.sort_by(f64::total_cmp);
    values
}

/// `Q Λ Q*` with `Q` unitary and `Λ` log-uniform in `[1/√cond_max, √cond_max]`.
pub fn random_spd_with<R: Rng + ?Sized>(rng: &mut R, n: usize, cond_max: f64) -> SpdMatrix {
    assert!(n >= 1, "dimension must be positive");
    assert!(cond_max >= 1.0, "condition cap must be at least 1");
    let q = random_unitary(rng, n);
    let values = log_uniform_spectrum(rng, n, cond_max);
    let eig = EigenDecomposition { eigenvalues: values, eigenvectors: q };
    let m = eig.reconstruct();
    SpdMatrix::new(m).expect("synthesized spectrum is positive")
}

/// Deterministic per `seed`.
pub fn random_spd(n: usize, cond_max: f64, seed: u64) -> SpdMatrix {
    random_spd_with(&mut rng_from_seed(seed), n, cond_max)
}

/// Diagonal SPD matrix with a log-uniform spectrum in random order.
pub fn random_diagonal_spd<R: Rng + ?Sized>(rng: &mut R, n: usize, cond_max: f64) -> SpdMatrix {
    let half = 0.5 * cond_max.ln();
    let d: Vec<f64> = (0..n).map(|_| (rng.random::<f64>() * 2.0 * half - half).exp()).collect();
    SpdMatrix::from_real_diagonal(&d).expect("positive diagonal")
}
