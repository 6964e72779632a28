use serde::Serialize;

use crate::{Error, Result};

/// Ensemble parameters `(β, m, a₁, a₂)`; `a₂` is absent for pure Laguerre use.
///
/// Construction validates `a₁ > β(m−1)/2` and, when present,
/// `a₂ > β(m−1)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EnsembleParams {
    beta: f64,
    m: usize,
    a1: f64,
    a2: Option<f64>,
}

impl EnsembleParams {
    pub fn laguerre(beta: f64, m: usize, a1: f64) -> Result<Self> {
        Self::new(beta, m, a1, None)
    }

    pub fn jacobi(beta: f64, m: usize, a1: f64, a2: f64) -> Result<Self> {
        Self::new(beta, m, a1, Some(a2))
    }

    pub fn new(beta: f64, m: usize, a1: f64, a2: Option<f64>) -> Result<Self> {
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::InvalidParams(format!("β must be positive and finite, got {beta}")));
        }
        if m == 0 {
            return Err(Error::InvalidParams("m must be at least 1".into()));
        }
        let bound = 0.5 * beta * (m as f64 - 1.0);
        if !(a1 > bound) || !a1.is_finite() {
            return Err(Error::InvalidParams(format!("a1 must exceed β(m−1)/2 = {bound} (got a1 = {a1})")));
        }
        if let Some(a2) = a2 {
            // a2 > 0 matters for m = 1, where the bound is zero
            if !(a2 > bound) || !(a2 > 0.0) || !a2.is_finite() {
                return Err(Error::InvalidParams(format!("a2 must exceed β(m−1)/2 = {bound} (got a2 = {a2})")));
            }
        }
        if !(a1 > 0.0) {
            return Err(Error::InvalidParams(format!("a1 must be positive, got {a1}")));
        }
        Ok(Self { beta, m, a1, a2 })
    }

    /// The same parameters with `a₂` replaced.
    pub fn with_a2(&self, a2: f64) -> Result<Self> {
        Self::new(self.beta, self.m, self.a1, Some(a2))
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn a1(&self) -> f64 {
        self.a1
    }

    pub fn a2_opt(&self) -> Option<f64> {
        self.a2
    }

    /// `a₂`, or an error when the parameters were built for Laguerre only.
    pub fn a2(&self) -> Result<f64> {
        self.a2.ok_or_else(|| Error::InvalidParams("a2 is required for the Jacobi ensemble".into()))
    }

    /// a = a₁ + a₂.
    pub fn a(&self) -> Result<f64> {
        Ok(self.a1 + self.a2()?)
    }

    /// η = β/2.
    pub fn eta(&self) -> f64 {
        0.5 * self.beta
    }

    /// r = 1 + (β/2)(m−1).
    pub fn r(&self) -> f64 {
        1.0 + self.eta() * (self.m as f64 - 1.0)
    }
}
