//! Weighted arithmetic, geometric and harmonic means of numbers and of
//! positive definite matrices, unitarily invariant norms, and the refinement
//! and reversal inequalities that relate them.
//!
//! Every inequality is exposed as a *chain*: an ordered list of values (or
//! Hermitian matrices) that should be ascending. The [`harness`] module
//! samples seeded random instances and measures how much slack each link of
//! each chain has.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod matrix_means;
pub mod scalar;
pub mod uinorms;

pub use error::{Error, Result};
pub use num_complex::Complex64;
