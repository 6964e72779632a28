use rand_distr::{Distribution, Gamma};

use super::RngStream;
use crate::{Error, Result};

/// One Gamma(shape, 1) variate.
///
/// Marsaglia-Tsang squeeze/rejection for shape >= 1; smaller shapes are
/// boosted by drawing Gamma(shape + 1) and multiplying by U^(1/shape).
pub fn sample_gamma(shape: f64, rng: &mut RngStream) -> Result<f64> {
    if !(shape > 0.0) || !shape.is_finite() {
        return Err(Error::Domain(format!("gamma shape must be positive, got {shape}")));
    }
    let dist = Gamma::new(shape, 1.0).map_err(|e| Error::Domain(format!("gamma shape {shape}: {e}")))?;
    Ok(dist.sample(rng))
}

/// One χ²_dof variate for any real `dof > 0`, realized as 2·Gamma(dof/2).
pub fn sample_chi_square(dof: f64, rng: &mut RngStream) -> Result<f64> {
    if !(dof > 0.0) || !dof.is_finite() {
        return Err(Error::Domain(format!("chi-square degrees of freedom must be positive, got {dof}")));
    }
    Ok(2.0 * sample_gamma(0.5 * dof, rng)?)
}

/// One Beta(alpha, beta_param) variate as G₁/(G₁+G₂).
pub fn sample_beta(alpha: f64, beta_param: f64, rng: &mut RngStream) -> Result<f64> {
    if !(alpha > 0.0) || !(beta_param > 0.0) {
        return Err(Error::Domain(format!("beta parameters must be positive, got ({alpha}, {beta_param})")));
    }
    let g1 = sample_gamma(alpha, rng)?;
    let g2 = sample_gamma(beta_param, rng)?;
    let total = g1 + g2;
    if total == 0.0 {
        // both gammas underflowed (tiny shapes); fall back to the mean
        return Ok(alpha / (alpha + beta_param));
    }
    Ok(g1 / total)
}
