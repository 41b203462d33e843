//! Dense complex matrices, Hermitian spectral calculus, and Loewner-order
//! comparison.

mod hermitian;
pub mod json;
mod matrix;
pub mod random;

pub use hermitian::{
    apply_spectral, jacobi_eigh, loewner_leq, spd_pow, EigenDecomposition, HermitianMatrix, LoewnerVerdict, SpdMatrix,
    DEFAULT_LOEWNER_TOL, HERMITIAN_TOL, JACOBI_MAX_SWEEPS, JACOBI_TOL,
};
pub use matrix::{trace_of_product, ComplexMatrix};
pub use random::{random_spd, random_spd_with};
