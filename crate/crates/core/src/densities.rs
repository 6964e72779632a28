//! Joint log-densities, their normalizing constants, and the ratio terms
//! `K_m`, `L_m`, `K'_m`, `L'_m` for the scaled Jacobi law against the Laguerre
//! law.
//!
//! Everything stays in log space. The rebalanced pair moves the factor
//! `(1 + a₁/a₂)^{m(a₂−r)}` from `K_m` into `L_m`, after which each term of
//! `log L'_m` is `ln(1 + (2a₁ − v_i)/(2a₂))` and can be evaluated without
//! cancellation.

use serde::Serialize;

use crate::ensembles::{EnsembleParams, SymmetricTridiagonal};
use crate::numerics::{ln_gamma, ln_gamma_ratio};
use crate::{Error, Result};

/// The four log ratio terms at one point `v`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LogRatioTerms {
    pub log_km: f64,
    pub log_lm: f64,
    pub log_km_prime: f64,
    pub log_lm_prime: f64,
    pub in_support: bool,
}

impl LogRatioTerms {
    /// `log K_m L_m(v)`, identical to the primed sum up to rounding.
    pub fn log_ratio(&self) -> f64 {
        self.log_km_prime + self.log_lm_prime
    }
}

fn checked_ln_gamma(x: f64, what: &str) -> Result<f64> {
    ln_gamma(x).map_err(|_| Error::InvalidParams(format!("{what}: Γ argument {x} is not positive")))
}

/// ln C_J, the Jacobi normalizer over the full cube `[0, 1]^m`.
pub fn log_cj(params: &EnsembleParams) -> Result<f64> {
    let (eta, m, a1, a2) = (params.eta(), params.m(), params.a1(), params.a2()?);
    let a = a1 + a2;
    let lg_eta = checked_ln_gamma(1.0 + eta, "log_cj")?;
    let mut acc = 0.0;
    for j in 1..=m {
        let s = eta * (m - j) as f64;
        acc += lg_eta + checked_ln_gamma(a - s, "log_cj")?
            - checked_ln_gamma(1.0 + eta * j as f64, "log_cj")?
            - checked_ln_gamma(a1 - s, "log_cj")?
            - checked_ln_gamma(a2 - s, "log_cj")?;
    }
    Ok(acc)
}

/// ln C_L, the Laguerre normalizer over `[0, ∞)^m`.
pub fn log_cl(params: &EnsembleParams) -> Result<f64> {
    let (eta, m, a1) = (params.eta(), params.m(), params.a1());
    let lg_eta = checked_ln_gamma(1.0 + eta, "log_cl")?;
    let mut acc = -(m as f64) * a1 * std::f64::consts::LN_2;
    for j in 1..=m {
        acc += lg_eta
            - checked_ln_gamma(1.0 + eta * j as f64, "log_cl")?
            - checked_ln_gamma(a1 - eta * (m - j) as f64, "log_cl")?;
    }
    Ok(acc)
}

fn check_len(params: &EnsembleParams, v: &[f64]) -> Result<()> {
    if v.len() != params.m() {
        return Err(Error::Domain(format!("point has {} coordinates, expected m = {}", v.len(), params.m())));
    }
    Ok(())
}

/// β Σ_{i<j} ln|v_i − v_j|; −∞ on ties.
fn log_vandermonde(beta: f64, v: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let d = (v[i] - v[j]).abs();
            if d == 0.0 {
                return f64::NEG_INFINITY;
            }
            acc += d.ln();
        }
    }
    beta * acc
}

/// Laguerre joint log-density at `v`; −∞ off `(0, ∞)^m` or on ties.
pub fn log_density_laguerre(params: &EnsembleParams, v: &[f64]) -> Result<f64> {
    check_len(params, v)?;
    if v.iter().any(|x| !(*x > 0.0) || !x.is_finite()) {
        return Ok(f64::NEG_INFINITY);
    }
    let e = params.a1() - params.r();
    let weights: f64 = v.iter().map(|x| e * x.ln() - 0.5 * x).sum();
    Ok(log_cl(params)? + log_vandermonde(params.beta(), v) + weights)
}

/// Jacobi joint log-density at `v`; −∞ off `(0, 1)^m` or on ties.
pub fn log_density_jacobi(params: &EnsembleParams, v: &[f64]) -> Result<f64> {
    check_len(params, v)?;
    if v.iter().any(|x| !(*x > 0.0 && *x < 1.0)) {
        return Ok(f64::NEG_INFINITY);
    }
    let r = params.r();
    let (e1, e2) = (params.a1() - r, params.a2()? - r);
    let weights: f64 = v.iter().map(|x| e1 * x.ln() + e2 * (-x).ln_1p()).sum();
    Ok(log_cj(params)? + log_vandermonde(params.beta(), v) + weights)
}

/// ln K_m = −m a₁ ln a + Σ_{i<m} [ln Γ(a − ηi) − ln Γ(a₂ − ηi)].
pub fn log_km_exact(params: &EnsembleParams) -> Result<f64> {
    let (eta, m, a1, a2) = (params.eta(), params.m(), params.a1(), params.a2()?);
    let ln_a = (a1 + a2).ln();
    let mut acc = 0.0;
    for i in 0..m {
        let x = a2 - eta * i as f64;
        let term = ln_gamma_ratio(x, a1)
            .map_err(|_| Error::InvalidParams(format!("log_km: Γ argument {x} is not positive")))?;
        acc += term - a1 * ln_a;
    }
    Ok(acc)
}

/// Stirling asymptotic −a₁m + m(a₂ − r/2) ln(1 + a₁/a₂) − β²a₁m³/(24a²).
pub fn log_km_asymptotic(params: &EnsembleParams) -> Result<f64> {
    let (beta, a1, a2) = (params.beta(), params.a1(), params.a2()?);
    let m = params.m() as f64;
    let a = a1 + a2;
    Ok(-a1 * m + m * (a2 - 0.5 * params.r()) * (a1 / a2).ln_1p() - beta * beta * a1 * m.powi(3) / (24.0 * a * a))
}

/// m(a₂ − r) ln(1 + a₁/a₂), the log factor moved from `K_m` to `L'_m`.
pub fn log_transfer(params: &EnsembleParams) -> Result<f64> {
    let a2 = params.a2()?;
    Ok(params.m() as f64 * (a2 - params.r()) * (params.a1() / a2).ln_1p())
}

/// ln K'_m = ln K_m − m(a₂ − r) ln(1 + a₁/a₂).
pub fn log_km_prime(params: &EnsembleParams) -> Result<f64> {
    Ok(log_km_exact(params)? - log_transfer(params)?)
}

/// ln L_m(v) = ½Σv_i + (a₂ − r) Σ ln(1 − v_i/2a); −∞ once max v_i ≥ 2a.
pub fn log_lm(params: &EnsembleParams, v: &[f64]) -> Result<f64> {
    check_len(params, v)?;
    let two_a = 2.0 * params.a()?;
    if v.iter().any(|x| !(*x < two_a)) {
        return Ok(f64::NEG_INFINITY);
    }
    let c = params.a2()? - params.r();
    Ok(v.iter().map(|x| 0.5 * x + c * (-x / two_a).ln_1p()).sum())
}

/// ln L'_m(v) − a₁m = ½Σ(v_i − 2a₁) + (a₂ − r) Σ ln(1 + (2a₁ − v_i)/(2a₂)).
///
/// The offset removes the a₁m-scale part so that it can be paired with
/// `log_km_prime + a₁m` without cancellation.
pub fn log_lm_prime_centered(params: &EnsembleParams, v: &[f64]) -> Result<f64> {
    check_len(params, v)?;
    let (a1, a2) = (params.a1(), params.a2()?);
    if v.iter().any(|x| !(*x < 2.0 * (a1 + a2))) {
        return Ok(f64::NEG_INFINITY);
    }
    let c = a2 - params.r();
    Ok(v.iter()
        .map(|x| {
            let d = 2.0 * a1 - x;
            -0.5 * d + c * (d / (2.0 * a2)).ln_1p()
        })
        .sum())
}

pub fn log_lm_prime(params: &EnsembleParams, v: &[f64]) -> Result<f64> {
    Ok(log_lm_prime_centered(params, v)? + params.a1() * params.m() as f64)
}

/// [`log_lm_prime_centered`] evaluated on the spectrum of `t` without
/// diagonalizing it: the sums become a trace and a log-determinant.
pub fn log_lm_prime_centered_gram(params: &EnsembleParams, t: &SymmetricTridiagonal) -> Result<f64> {
    if t.m() != params.m() {
        return Err(Error::Domain(format!("matrix order {} differs from m = {}", t.m(), params.m())));
    }
    let (a1, a2) = (params.a1(), params.a2()?);
    let (lin, _) = t.centered_power_sums(2.0 * a1);
    Ok(match t.log1p_shifted_sum(2.0 * a1, 2.0 * a2) {
        Some(s) => 0.5 * lin + (a2 - params.r()) * s,
        None => f64::NEG_INFINITY,
    })
}

/// All four ratio logs at `v`.
pub fn log_ratio_terms(params: &EnsembleParams, v: &[f64]) -> Result<LogRatioTerms> {
    let log_km = log_km_exact(params)?;
    let transfer = log_transfer(params)?;
    let log_lm = log_lm(params, v)?;
    let in_support = log_lm > f64::NEG_INFINITY;
    let log_lm_prime = if in_support { log_lm_prime(params, v)? } else { f64::NEG_INFINITY };
    Ok(LogRatioTerms { log_km, log_lm, log_km_prime: log_km - transfer, log_lm_prime, in_support })
}
