//! Scalar means and the scalar inequality chains: dyadic refinements of the
//! affine bound for convex and log-convex functions, the reverse Young
//! family, and the harmonic-mean reversals.

mod convex;
mod means;

pub use convex::{
    line_through, logconvex_chain, logconvex_chain_reflected, refined_lower, refined_lower_reflected, ConvexFn,
    LogConvexFn, RefinedBound,
};
pub use means::{
    harm_geom_chain, harm_reverse_chain, harmonic_weight_second_derivative, kantorovich, kantorovich_bound, s_arith,
    s_geom, s_harm, young_refined_t, young_reverse_chain, young_square_chain,
};
pub(crate) use means::{harm_reverse_values, kantorovich_values};

use crate::error::{Error, Result};

/// Largest refinement depth; keeps every `2^j` exact.
pub const MAX_DEPTH: u32 = 32;

/// Any `f: ℝ → ℝ`. Convexity (or log-convexity) is the caller's obligation.
pub trait RealFunction: Fn(f64) -> f64 {}
impl<F: Fn(f64) -> f64> RealFunction for F {}

/// Ordered values claimed to be ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarChain {
    labels: Vec<&'static str>,
    values: Vec<f64>,
}

impl ScalarChain {
    pub fn new(labels: Vec<&'static str>, values: Vec<f64>) -> Result<Self> {
        if labels.len() != values.len() || values.is_empty() {
            return Err(Error::domain("chain labels and values must have equal, nonzero length"));
        }
        if let Some((l, v)) = labels.iter().zip(&values).find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite(format!("chain entry `{l}` = {v}")));
        }
        Ok(Self { labels, values })
    }

    pub fn labels(&self) -> &[&'static str] {
        &self.labels
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn first(&self) -> f64 {
        self.values[0]
    }

    pub fn last(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn get(&self, label: &str) -> Option<f64> {
        self.labels.iter().position(|l| *l == label).map(|i| self.values[i])
    }

    /// `max(1, max |v_i|)`.
    pub fn scale(&self) -> f64 {
        self.values.iter().fold(1.0f64, |m, v| m.max(v.abs()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightDomain {
    /// `ν ≥ 0`
    NonNegative,
    /// `ν ≤ −1`
    AtMostMinusOne,
}

/// Extrapolation weight `ν` restricted to `ν ≥ 0` or `ν ≤ −1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Weight {
    nu: f64,
    domain: WeightDomain,
}

impl Weight {
    pub fn new(nu: f64) -> Result<Self> {
        if nu >= 0.0 {
            Ok(Self { nu, domain: WeightDomain::NonNegative })
        } else if nu <= -1.0 {
            Ok(Self { nu, domain: WeightDomain::AtMostMinusOne })
        } else {
            Err(Error::domain(format!("weight ν = {nu} must satisfy ν ≥ 0 or ν ≤ −1")))
        }
    }

    pub fn non_negative(nu: f64) -> Result<Self> {
        match Self::new(nu)? {
            w @ Self { domain: WeightDomain::NonNegative, .. } => Ok(w),
            _ => Err(Error::domain(format!("weight ν = {nu} must be nonnegative"))),
        }
    }

    pub fn at_most_minus_one(nu: f64) -> Result<Self> {
        match Self::new(nu)? {
            w @ Self { domain: WeightDomain::AtMostMinusOne, .. } => Ok(w),
            _ => Err(Error::domain(format!("weight ν = {nu} must be at most −1"))),
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.nu
    }

    #[inline]
    pub fn domain(self) -> WeightDomain {
        self.domain
    }
}

pub(crate) fn check_depth(depth: u32) -> Result<()> {
    if depth == 0 || depth > MAX_DEPTH {
        return Err(Error::domain(format!("depth N = {depth} must lie in 1..={MAX_DEPTH}")));
    }
    Ok(())
}

#[inline]
pub(crate) fn pow2(j: u32) -> f64 {
    2f64.powi(j as i32)
}

pub(crate) fn finite(v: f64, what: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(what.to_string()))
    }
}
