//! wasm-bindgen exports for the static page in `www/`.
//!
//! Every export returns a JSON string; errors come back as a JS exception
//! carrying the library's message.

use beta_ensembles::distances::{
    clt_harness, kl_estimate, limit_tv_reference, tv_estimate, CltMode, CltRegime, ShardPlan,
};
use beta_ensembles::ensembles::{sample_spectrum, EnsembleParams, SpectrumKind};
use beta_ensembles::numerics::RngStream;
use serde::Serialize;
use wasm_bindgen::prelude::*;

fn js_err(e: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&e.to_string())
}

fn to_json<T: Serialize>(v: &T) -> Result<String, JsValue> {
    serde_json::to_string(v).map_err(js_err)
}

#[derive(Serialize)]
struct Histogram {
    edges: Vec<f64>,
    counts: Vec<u64>,
}

fn histogram(values: &[f64], bins: usize) -> Histogram {
    let bins = bins.max(1);
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if values.is_empty() || hi <= lo || hi.is_nan() || lo.is_nan() {
        return Histogram { edges: vec![lo, hi], counts: vec![values.len() as u64] };
    }
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0u64; bins];
    for v in values {
        let k = (((v - lo) / width) as usize).min(bins - 1);
        counts[k] += 1;
    }
    Histogram { edges: (0..=bins).map(|k| lo + k as f64 * width).collect(), counts }
}

#[derive(Serialize)]
struct SpectrumView {
    jacobi: Histogram,
    laguerre: Histogram,
}

/// Pooled eigenvalue histograms of `2aλ` (Jacobi) and `μ` (Laguerre) over
/// `draws` independent spectra.
#[wasm_bindgen]
pub fn spectrum_histograms(
    beta: f64,
    m: usize,
    a1: f64,
    a2: f64,
    draws: usize,
    bins: usize,
    seed: u64,
) -> Result<String, JsValue> {
    let params = EnsembleParams::jacobi(beta, m, a1, a2).map_err(js_err)?;
    let mut rng_j = RngStream::new(seed, 0);
    let mut rng_l = RngStream::new(seed, 1);
    let mut jac = Vec::with_capacity(draws * m);
    let mut lag = Vec::with_capacity(draws * m);
    for _ in 0..draws {
        jac.extend(sample_spectrum(SpectrumKind::JacobiScaled, &params, &mut rng_j).map_err(js_err)?.into_values());
        lag.extend(sample_spectrum(SpectrumKind::Laguerre, &params, &mut rng_l).map_err(js_err)?.into_values());
    }
    to_json(&SpectrumView { jacobi: histogram(&jac, bins), laguerre: histogram(&lag, bins) })
}

#[derive(Serialize)]
struct SigmaPoint {
    sigma: f64,
    m: usize,
    a1: f64,
    tv: f64,
    tv_se: f64,
    kl: f64,
    kl_se: f64,
    tv_limit: f64,
    kl_limit: f64,
}

/// TV and KL estimates along `σ ∈ [σ_min, σ_max]` at fixed `a₁`, `a₂`,
/// with `m = round(σa₂/a₁)`.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn sigma_scan(
    beta: f64,
    a1: f64,
    a2: f64,
    sigma_min: f64,
    sigma_max: f64,
    steps: usize,
    n: usize,
    seed: u64,
) -> Result<String, JsValue> {
    let steps = steps.max(2);
    let mut out = Vec::with_capacity(steps);
    for k in 0..steps {
        let target = sigma_min + (sigma_max - sigma_min) * k as f64 / (steps - 1) as f64;
        let m = ((target * a2 / a1).round() as usize).max(1);
        let params = EnsembleParams::jacobi(beta, m, a1, a2).map_err(js_err)?;
        let sigma = a1 * m as f64 / a2;
        let plan = ShardPlan::single(seed).with_stream_offset((k as u64) << 32);
        let tv = tv_estimate(&params, n, &plan).map_err(js_err)?;
        let kl = kl_estimate(&params, n, &plan).map_err(js_err)?;
        out.push(SigmaPoint {
            sigma,
            m,
            a1,
            tv: tv.value,
            tv_se: tv.std_error,
            kl: kl.value,
            kl_se: kl.std_error,
            tv_limit: limit_tv_reference(beta, sigma).map_err(js_err)?,
            kl_limit: beta * sigma * sigma / 8.0,
        });
    }
    to_json(&out)
}

#[derive(Serialize)]
struct CltView {
    histogram: Histogram,
    mean: f64,
    variance: f64,
    target_mean: f64,
    target_variance: f64,
    ks_statistic: f64,
    p_value: f64,
}

/// Histogram and KS summary of the centered `U_m` statistic (`mode = 0`),
/// `log L'_m` (`1`) or the quadratic term (`2`).
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn clt_histogram(
    beta: f64,
    m: usize,
    a1: f64,
    a2: f64,
    mode: u8,
    replicates: usize,
    bins: usize,
    seed: u64,
) -> Result<String, JsValue> {
    let params = EnsembleParams::jacobi(beta, m, a1, a2).map_err(js_err)?;
    let mode = match mode {
        0 => CltMode::CenteredU,
        1 => CltMode::LogLmPrime,
        2 => CltMode::Quadratic,
        other => return Err(js_err(format!("unknown mode {other}"))),
    };
    let regime = if m as f64 * a1 > 0.5 * a2 { CltRegime::A2 } else { CltRegime::A3 };
    let r = clt_harness(&params, regime, mode, replicates, &ShardPlan::single(seed)).map_err(js_err)?;
    to_json(&CltView {
        histogram: histogram(&r.samples, bins),
        mean: r.statistic_samples.mean(),
        variance: r.statistic_samples.variance(),
        target_mean: r.target_mean,
        target_variance: r.target_variance,
        ks_statistic: r.ks.statistic_d,
        p_value: r.ks.p_value,
    })
}
