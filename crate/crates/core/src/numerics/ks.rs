use serde::Serialize;

use crate::{Error, Result};

/// Smallest sample size for which the asymptotic Kolmogorov distribution is
/// accepted as a p-value.
pub const KS_MIN_SAMPLES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KsReport {
    pub statistic_d: f64,
    pub p_value: f64,
    pub n: usize,
}

/// P(K > λ) for the Kolmogorov distribution.
pub fn kolmogorov_survival(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    if lambda < 1.18 {
        // Jacobi theta form converges fast for small λ
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        let mut cdf = 0.0;
        for k in 1..=20 {
            let j = (2 * k - 1) as f64;
            cdf += (-j * j * pi2 / (8.0 * lambda * lambda)).exp();
        }
        cdf *= (2.0 * std::f64::consts::PI).sqrt() / lambda;
        (1.0 - cdf).clamp(0.0, 1.0)
    } else {
        let mut q = 0.0;
        let mut sign = 1.0;
        for k in 1..=100 {
            let kf = k as f64;
            let term = (-2.0 * kf * kf * lambda * lambda).exp();
            q += sign * term;
            if term < 1e-18 {
                break;
            }
            sign = -sign;
        }
        (2.0 * q).clamp(0.0, 1.0)
    }
}

fn stephens_lambda(n_eff: f64, d: f64) -> f64 {
    let sn = n_eff.sqrt();
    (sn + 0.12 + 0.11 / sn) * d
}

fn sorted_finite(samples: &[f64], what: &str) -> Result<Vec<f64>> {
    if samples.is_empty() {
        return Err(Error::Domain(format!("{what}: empty sample")));
    }
    if samples.len() < KS_MIN_SAMPLES {
        return Err(Error::Domain(format!(
            "{what}: need at least {KS_MIN_SAMPLES} samples for the asymptotic p-value, got {}",
            samples.len()
        )));
    }
    if samples.iter().any(|x| x.is_nan()) {
        return Err(Error::Domain(format!("{what}: sample contains NaN")));
    }
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    Ok(xs)
}

/// One-sample Kolmogorov-Smirnov test of `samples` against `cdf`.
pub fn ks_test<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> Result<KsReport> {
    let xs = sorted_finite(samples, "ks_test")?;
    let n = xs.len();
    let nf = n as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        let above = (i + 1) as f64 / nf - f;
        let below = f - i as f64 / nf;
        d = d.max(above).max(below);
    }
    let d = d.clamp(0.0, 1.0);
    Ok(KsReport { statistic_d: d, p_value: kolmogorov_survival(stephens_lambda(nf, d)), n })
}

/// Two-sample Kolmogorov-Smirnov test; `n` in the report is the effective
/// size n_a n_b / (n_a + n_b), rounded down.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<KsReport> {
    let xa = sorted_finite(a, "ks_two_sample")?;
    let xb = sorted_finite(b, "ks_two_sample")?;
    let (na, nb) = (xa.len() as f64, xb.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < xa.len() && j < xb.len() {
        let x = xa[i].min(xb[j]);
        while i < xa.len() && xa[i] <= x {
            i += 1;
        }
        while j < xb.len() && xb[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    let n_eff = na * nb / (na + nb);
    Ok(KsReport { statistic_d: d, p_value: kolmogorov_survival(stephens_lambda(n_eff, d)), n: n_eff as usize })
}
