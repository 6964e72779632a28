use serde::Serialize;

use super::{eigenvalues, gram_tridiagonal, sample_jacobi_bidiagonal, sample_laguerre_bidiagonal, EnsembleParams};
use crate::numerics::RngStream;
use crate::{Error, Result};

/// Largest overshoot past `[0, 1]` tolerated (and clamped) for Jacobi values.
pub const JACOBI_OVERSHOOT: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumKind {
    /// `λ ∈ [0, 1]^m`
    JacobiUnit,
    /// `θ = 2aλ`
    JacobiScaled,
    /// `μ ≥ 0`
    Laguerre,
}

/// One sampled spectrum, sorted nonincreasing.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    values: Vec<f64>,
    kind: SpectrumKind,
}

impl Spectrum {
    /// Wraps precomputed values after sorting them.
    pub fn new(mut values: Vec<f64>, kind: SpectrumKind) -> Self {
        values.sort_unstable_by(|a, b| b.total_cmp(a));
        Self { values, kind }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

pub fn sample_spectrum(kind: SpectrumKind, params: &EnsembleParams, rng: &mut RngStream) -> Result<Spectrum> {
    match kind {
        SpectrumKind::Laguerre => {
            let a = sample_laguerre_bidiagonal(params, rng)?;
            let mut values = eigenvalues(&gram_tridiagonal(&a.factor()));
            // the Gram matrix is positive semidefinite; tiny negatives are rounding
            for v in &mut values {
                *v = v.max(0.0);
            }
            Ok(Spectrum { values, kind })
        }
        SpectrumKind::JacobiUnit | SpectrumKind::JacobiScaled => {
            let b = sample_jacobi_bidiagonal(params, rng)?;
            let mut values = eigenvalues(&gram_tridiagonal(&b.factor()));
            clamp_unit(&mut values)?;
            if kind == SpectrumKind::JacobiScaled {
                let two_a = 2.0 * params.a()?;
                for v in &mut values {
                    *v *= two_a;
                }
            }
            Ok(Spectrum { values, kind })
        }
    }
}

pub(crate) fn clamp_unit(values: &mut [f64]) -> Result<()> {
    for v in values.iter_mut() {
        if *v < -JACOBI_OVERSHOOT || *v > 1.0 + JACOBI_OVERSHOOT || v.is_nan() {
            return Err(Error::Consistency(format!("Jacobi eigenvalue {v} outside [0, 1]")));
        }
        *v = v.clamp(0.0, 1.0);
    }
    Ok(())
}
