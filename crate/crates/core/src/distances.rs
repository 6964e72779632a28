//! Monte Carlo estimators of the total-variation and Kullback-Leibler
//! distances between `L(2aλ)` and `L(μ)`, the `U_m` statistic, limit-law
//! references, and the CLT harnesses.
//!
//! Per-draw quantities only involve `Σμ_i`, `Σ(μ_i − 2a₁)²` and
//! `Σ ln(1 + (2a₁ − μ_i)/(2a₂))`. They are read off the tridiagonal Gram
//! matrix as traces and a log-determinant, so no eigensolve is needed inside
//! the estimators.
//!
//! Replicates are split over a [`ShardPlan`]: shard `s` draws from
//! `RngStream::new(seed, stream_offset + s)` and shard results are merged in
//! shard order, so a fixed plan always gives identical output.

use serde::Serialize;

use crate::densities::{log_km_prime, log_lm_prime_centered, log_lm_prime_centered_gram};
use crate::ensembles::{
    eigenvalues, gram_tridiagonal, sample_jacobi_bidiagonal, sample_laguerre_bidiagonal, EnsembleParams, Spectrum,
    SpectrumKind, SymmetricTridiagonal, JACOBI_OVERSHOOT,
};
use crate::numerics::{
    integrate, integrate_to_infinity, ks_test, ln_gamma, normal_cdf, normal_pdf, KsReport, RngStream, SummaryStats,
    KS_MIN_SAMPLES,
};
use crate::{Error, Result};

/// Smallest replicate count accepted by the distance estimators.
pub const MIN_DISTANCE_SAMPLES: usize = 100;
/// Smallest replicate count accepted by the CLT harnesses.
pub const MIN_CLT_REPLICATES: usize = 500;
/// Jacobi eigenvalues within this distance of 1 are clamped below 1 and counted.
pub const KL_EDGE_WINDOW: f64 = 1e-15;
/// Largest tolerated fraction of clamped draws in a KL estimate.
pub const KL_MAX_FLAGGED_FRACTION: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Tv,
    Kl,
    Statistic,
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Metric::Tv => "tv",
            Metric::Kl => "kl",
            Metric::Statistic => "statistic",
        })
    }
}

/// A Monte Carlo scalar with its standard error and provenance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub metric: Metric,
    pub value: f64,
    pub std_error: f64,
    pub n_samples: u64,
    pub seed: u64,
    pub shards: usize,
    /// Draws that needed clamping (KL only).
    pub flagged: u64,
}

impl Estimate {
    fn from_stats(metric: Metric, stats: &SummaryStats, plan: &ShardPlan, flagged: u64) -> Self {
        Self {
            metric,
            value: stats.mean(),
            std_error: stats.std_error(),
            n_samples: stats.n(),
            seed: plan.seed,
            shards: plan.shards,
            flagged,
        }
    }
}

/// How replicates are split over independent random streams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ShardPlan {
    pub seed: u64,
    pub shards: usize,
    pub stream_offset: u64,
}

impl ShardPlan {
    pub fn new(seed: u64, shards: usize) -> Self {
        Self { seed, shards: shards.max(1), stream_offset: 0 }
    }

    pub fn single(seed: u64) -> Self {
        Self::new(seed, 1)
    }

    pub fn with_stream_offset(self, stream_offset: u64) -> Self {
        Self { stream_offset, ..self }
    }

    /// Replicate counts per shard; the first `n % shards` shards take one extra.
    pub fn split(&self, n: usize) -> Vec<usize> {
        let (q, r) = (n / self.shards, n % self.shards);
        (0..self.shards).map(|s| q + usize::from(s < r)).collect()
    }

    /// Runs `work(rng, count)` once per shard and returns results in shard order.
    pub fn run<T, F>(&self, n: usize, work: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(&mut RngStream, usize) -> Result<T> + Sync,
    {
        let jobs: Vec<(u64, usize)> =
            self.split(n).into_iter().enumerate().map(|(s, count)| (self.stream_offset + s as u64, count)).collect();
        let task = |&(stream, count): &(u64, usize)| work(&mut RngStream::new(self.seed, stream), count);
        #[cfg(feature = "parallel")]
        let out: Vec<Result<T>> = {
            use rayon::prelude::*;
            jobs.par_iter().map(task).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let out: Vec<Result<T>> = jobs.iter().map(task).collect();
        out.into_iter().collect()
    }

    /// Sharded accumulation of one scalar per replicate.
    pub fn accumulate<F>(&self, n: usize, draw: F) -> Result<SummaryStats>
    where
        F: Fn(&mut RngStream) -> Result<f64> + Sync,
    {
        let parts = self.run(n, |rng, count| {
            let mut st = SummaryStats::new();
            for _ in 0..count {
                st.push(draw(rng)?);
            }
            Ok(st)
        })?;
        Ok(parts.iter().fold(SummaryStats::new(), |acc, s| acc.merge(s)))
    }

    /// Sharded collection of one scalar per replicate, in plan order.
    pub fn collect<F>(&self, n: usize, draw: F) -> Result<Vec<f64>>
    where
        F: Fn(&mut RngStream) -> Result<f64> + Sync,
    {
        let parts = self.run(n, |rng, count| (0..count).map(|_| draw(rng)).collect::<Result<Vec<_>>>())?;
        Ok(parts.concat())
    }
}

fn check_samples(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        return Err(Error::Domain(format!("{what} needs at least {min} replicates, got {n}")));
    }
    Ok(())
}

/// `U_m = (r/2a₂) Σ(μ_i − 2a₁) − ((a₂ − r)/8a₂²) Σ(μ_i − 2a₁)²`.
pub fn u_statistic(params: &EnsembleParams, mu: &Spectrum) -> Result<f64> {
    if mu.kind() != SpectrumKind::Laguerre || mu.len() != params.m() {
        return Err(Error::Domain("U_m needs a Laguerre spectrum of length m".into()));
    }
    let s = 2.0 * params.a1();
    let lin: f64 = mu.values().iter().map(|v| v - s).sum();
    let sq: f64 = mu.values().iter().map(|v| (v - s) * (v - s)).sum();
    u_from_sums(params, lin, sq)
}

/// [`u_statistic`] from the Gram matrix `AA'`.
pub fn u_statistic_gram(params: &EnsembleParams, t: &SymmetricTridiagonal) -> Result<f64> {
    let (lin, sq) = t.centered_power_sums(2.0 * params.a1());
    u_from_sums(params, lin, sq)
}

fn u_from_sums(params: &EnsembleParams, lin: f64, sq: f64) -> Result<f64> {
    let (a2, r) = (params.a2()?, params.r());
    Ok(r / (2.0 * a2) * lin - (a2 - r) / (8.0 * a2 * a2) * sq)
}

/// `(a₂ − r) a₁ m r / (2a₂²) = −E U_m`.
pub fn u_shift(params: &EnsembleParams) -> Result<f64> {
    let (a2, r) = (params.a2()?, params.r());
    Ok((a2 - r) * params.a1() * params.m() as f64 * r / (2.0 * a2 * a2))
}

/// `log K'_m + a₁m`, the constant paired with [`log_lm_prime_centered`].
fn log_km_prime_centered(params: &EnsembleParams) -> Result<f64> {
    Ok(log_km_prime(params)? + params.a1() * params.m() as f64)
}

/// One draw's contribution `|K'L'(μ) − 1|`; exactly 1 off the support.
fn tv_contribution(log_ratio: f64) -> f64 {
    if log_ratio == f64::NEG_INFINITY {
        1.0
    } else {
        log_ratio.exp_m1().abs()
    }
}

/// `E|K'_m L'_m(μ) − 1|` under the Laguerre law.
pub fn tv_estimate(params: &EnsembleParams, n_samples: usize, plan: &ShardPlan) -> Result<Estimate> {
    let kc = log_km_prime_centered(params)?;
    tv_estimate_with(params, n_samples, plan, |t| Ok(kc + log_lm_prime_centered_gram(params, t)?))
}

/// [`tv_estimate`] with the per-draw log ratio supplied by `log_ratio`, which
/// receives the Gram matrix `AA'` of each Laguerre draw.
pub fn tv_estimate_with<F>(
    params: &EnsembleParams,
    n_samples: usize,
    plan: &ShardPlan,
    log_ratio: F,
) -> Result<Estimate>
where
    F: Fn(&SymmetricTridiagonal) -> Result<f64> + Sync,
{
    check_samples(n_samples, MIN_DISTANCE_SAMPLES, "tv_estimate")?;
    params.a2()?;
    let stats = plan.accumulate(n_samples, |rng| {
        let a = sample_laguerre_bidiagonal(params, rng)?;
        Ok(tv_contribution(log_ratio(&gram_tridiagonal(&a.factor()))?))
    })?;
    Ok(Estimate::from_stats(Metric::Tv, &stats, plan, 0))
}

/// `E log(K'_m L'_m(2aλ))` under the Jacobi law.
pub fn kl_estimate(params: &EnsembleParams, n_samples: usize, plan: &ShardPlan) -> Result<Estimate> {
    check_samples(n_samples, MIN_DISTANCE_SAMPLES, "kl_estimate")?;
    let kc = log_km_prime_centered(params)?;
    let two_a = 2.0 * params.a()?;
    let parts = plan.run(n_samples, |rng, count| {
        let mut st = SummaryStats::new();
        let mut flagged = 0u64;
        for _ in 0..count {
            let b = sample_jacobi_bidiagonal(params, rng)?;
            let t = gram_tridiagonal(&b.factor());
            let mut l = log_lm_prime_centered_gram(params, &t.scaled(two_a))?;
            if l == f64::NEG_INFINITY {
                // some λ reached 1 in floating point: diagonalize and clamp
                let (theta, hit) = clamp_edge(eigenvalues(&t), two_a)?;
                flagged += u64::from(hit);
                l = log_lm_prime_centered(params, &theta)?;
            }
            st.push(kc + l);
        }
        Ok((st, flagged))
    })?;
    let stats = parts.iter().fold(SummaryStats::new(), |acc, (s, _)| acc.merge(s));
    let flagged: u64 = parts.iter().map(|(_, f)| f).sum();
    if flagged as f64 > KL_MAX_FLAGGED_FRACTION * n_samples as f64 {
        return Err(Error::Estimator(format!("{flagged} of {n_samples} Jacobi draws had an eigenvalue at 1")));
    }
    Ok(Estimate::from_stats(Metric::Kl, &stats, plan, flagged))
}

/// Clamps `λ` values at the upper edge to `1 − KL_EDGE_WINDOW` and scales by
/// `2a`; returns whether any clamping happened.
fn clamp_edge(lambda: Vec<f64>, two_a: f64) -> Result<(Vec<f64>, bool)> {
    let mut hit = false;
    let theta = lambda
        .into_iter()
        .map(|l| {
            if l > 1.0 + JACOBI_OVERSHOOT || l.is_nan() {
                return Err(Error::Consistency(format!("Jacobi eigenvalue {l} outside [0, 1]")));
            }
            if l >= 1.0 - KL_EDGE_WINDOW {
                hit = true;
                return Ok((1.0 - KL_EDGE_WINDOW) * two_a);
            }
            Ok(l.max(0.0) * two_a)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((theta, hit))
}

/// `E|e^ξ − 1|` for `ξ ~ N(−s²/2, s²)`, `s² = βσ²/4`, by quadrature.
pub fn limit_tv_reference(beta: f64, sigma: f64) -> Result<f64> {
    if !(beta > 0.0) || !(sigma >= 0.0) {
        return Err(Error::Domain(format!("need β > 0 and σ ≥ 0, got β = {beta}, σ = {sigma}")));
    }
    let s = (beta * sigma * sigma / 4.0).sqrt();
    if s == 0.0 {
        return Ok(0.0);
    }
    let mean = -0.5 * s * s;
    let q = integrate(
        |x| x.exp_m1().abs() * normal_pdf((x - mean) / s) / s,
        mean - 40.0 * s,
        mean + 40.0 * s,
        &[0.0, mean],
        1e-14,
        1e-12,
    )?;
    Ok(q.value)
}

/// Closed form `2(2Φ(s/2) − 1)` of [`limit_tv_reference`].
pub fn limit_tv_closed_form(beta: f64, sigma: f64) -> f64 {
    let s = (beta * sigma * sigma / 4.0).sqrt();
    2.0 * (2.0 * normal_cdf(0.5 * s) - 1.0)
}

fn single_row_log_densities(a1: f64, a2: f64) -> Result<(impl Fn(f64) -> f64, impl Fn(f64) -> f64)> {
    if !(a1 > 0.0 && a2 > 0.0) {
        return Err(Error::Domain("a1 and a2 must be positive".into()));
    }
    let a = a1 + a2;
    let ln_two_a = (2.0 * a).ln();
    let beta_norm = ln_gamma(a)? - ln_gamma(a1)? - ln_gamma(a2)?;
    let chi_norm = -a1 * std::f64::consts::LN_2 - ln_gamma(a1)?;
    let log_g = move |t: f64| {
        let l = t / (2.0 * a);
        if !(l > 0.0 && l < 1.0) {
            return f64::NEG_INFINITY;
        }
        beta_norm + (a1 - 1.0) * l.ln() + (a2 - 1.0) * (-l).ln_1p() - ln_two_a
    };
    let log_f = move |t: f64| {
        if !(t > 0.0) {
            return f64::NEG_INFINITY;
        }
        chi_norm + (a1 - 1.0) * t.ln() - 0.5 * t
    };
    Ok((log_g, log_f))
}

fn single_row_breakpoints(a1: f64, a2: f64) -> Vec<f64> {
    let (mean, sd) = (2.0 * a1, (4.0 * a1).sqrt());
    (-12..=24).map(|k| mean + f64::from(k) * sd).filter(|t| *t > 0.0 && *t < 2.0 * (a1 + a2)).collect()
}

/// `∫|g − f|` between the densities of `2a·Beta(a₁, a₂)` and `χ²(2a₁)` by
/// quadrature; the `m = 1` reference for [`tv_estimate`] (β plays no role).
pub fn single_row_tv_reference(a1: f64, a2: f64) -> Result<f64> {
    let (log_g, log_f) = single_row_log_densities(a1, a2)?;
    let two_a = 2.0 * (a1 + a2);
    let inside = integrate(
        |t| (log_g(t).exp() - log_f(t).exp()).abs(),
        0.0,
        two_a,
        &single_row_breakpoints(a1, a2),
        1e-13,
        1e-11,
    )?;
    let tail = integrate_to_infinity(|t| log_f(t).exp(), two_a, 1e-15, 1e-10)?;
    Ok(inside.value + tail.value)
}

/// `∫ g log(g/f)` for the same pair; the `m = 1` reference for [`kl_estimate`].
pub fn single_row_kl_reference(a1: f64, a2: f64) -> Result<f64> {
    let (log_g, log_f) = single_row_log_densities(a1, a2)?;
    let q = integrate(
        |t| {
            let lg = log_g(t);
            if lg == f64::NEG_INFINITY {
                0.0
            } else {
                lg.exp() * (lg - log_f(t))
            }
        },
        0.0,
        2.0 * (a1 + a2),
        &single_row_breakpoints(a1, a2),
        1e-14,
        1e-11,
    )?;
    Ok(q.value)
}

/// Which regime a CLT check is calibrated for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CltRegime {
    A2,
    A3,
}

/// Which statistic the CLT harness tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CltMode {
    /// `U_m + u_shift`
    CenteredU,
    /// `log L'_m(μ) − a₁m + u_shift`
    LogLmPrime,
    /// `((a₂ − r)/8a₂²) Σ(μ_i − 2a₁)²` minus its mean
    Quadratic,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CltReport {
    pub regime: CltRegime,
    pub mode: CltMode,
    pub replicates: usize,
    pub statistic_samples: SummaryStats,
    pub target_mean: f64,
    pub target_variance: f64,
    pub ks: KsReport,
    pub seed: u64,
    pub shards: usize,
    #[serde(skip)]
    pub samples: Vec<f64>,
}

impl CltReport {
    /// Distance of the sample mean from the target in standard errors.
    pub fn mean_z(&self) -> f64 {
        (self.statistic_samples.mean() - self.target_mean) / self.statistic_samples.std_error()
    }

    /// Relative deviation of the sample variance from the target.
    pub fn variance_rel_error(&self) -> f64 {
        self.statistic_samples.variance() / self.target_variance - 1.0
    }
}

/// Finite-size proxies `(σ, x, y) = (a₁m/a₂, a₁/√a₂, m/√a₂)`.
pub fn proxies(params: &EnsembleParams) -> Result<(f64, f64, f64)> {
    let (a1, a2, m) = (params.a1(), params.a2()?, params.m() as f64);
    Ok((a1 * m / a2, a1 / a2.sqrt(), m / a2.sqrt()))
}

/// Draws `replicates` Laguerre spectra and KS-tests the selected statistic
/// against its normal limit.
pub fn clt_harness(
    params: &EnsembleParams,
    regime: CltRegime,
    mode: CltMode,
    replicates: usize,
    plan: &ShardPlan,
) -> Result<CltReport> {
    check_samples(replicates, MIN_CLT_REPLICATES.max(KS_MIN_SAMPLES), "clt_harness")?;
    let beta = params.beta();
    let (sigma, x, y) = proxies(params)?;
    let base_var = beta * sigma * sigma / 4.0;
    let shift = u_shift(params)?;
    let (a2, r) = (params.a2()?, params.r());
    let q_scale = (a2 - r) / (8.0 * a2 * a2);
    let q_mean = q_scale * 4.0 * params.a1() * params.m() as f64 * r;

    let (target_mean, target_variance) = match (mode, regime) {
        (CltMode::CenteredU, _) | (CltMode::LogLmPrime, CltRegime::A2) => (0.0, base_var),
        (CltMode::LogLmPrime, CltRegime::A3) => (-beta * beta * x * y.powi(3) / 12.0, base_var),
        (CltMode::Quadratic, _) => (0.0, base_var + beta * beta * x * y.powi(3) / 4.0),
    };
    let samples = plan.collect(replicates, |rng| {
        let a = sample_laguerre_bidiagonal(params, rng)?;
        let t = gram_tridiagonal(&a.factor());
        Ok(match mode {
            CltMode::CenteredU => u_statistic_gram(params, &t)? + shift,
            CltMode::LogLmPrime => log_lm_prime_centered_gram(params, &t)? + shift,
            CltMode::Quadratic => q_scale * t.centered_power_sums(2.0 * params.a1()).1 - q_mean,
        })
    })?;
    let sd = target_variance.sqrt();
    let ks = ks_test(&samples, |v| normal_cdf((v - target_mean) / sd))?;
    Ok(CltReport {
        regime,
        mode,
        replicates,
        statistic_samples: samples.iter().copied().collect(),
        target_mean,
        target_variance,
        ks,
        seed: plan.seed,
        shards: plan.shards,
        samples,
    })
}

/// The centered quadratic statistic against `N(0, (βσ² + β²xy³)/4)`.
pub fn quadratic_clt_check(params: &EnsembleParams, replicates: usize, plan: &ShardPlan) -> Result<CltReport> {
    clt_harness(params, CltRegime::A3, CltMode::Quadratic, replicates, plan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::sample_spectrum;

    fn jp(beta: f64, m: usize, a1: f64, a2: f64) -> EnsembleParams {
        EnsembleParams::jacobi(beta, m, a1, a2).unwrap()
    }

    #[test]
    fn u_statistic_examples() {
        let p = jp(1.0, 3, 4.0, 50.0);
        let mu = Spectrum::new(vec![8.0; 3], SpectrumKind::Laguerre);
        assert_eq!(u_statistic(&p, &mu).unwrap(), 0.0);
        let p = jp(2.0, 1, 5.0, 100.0);
        let mu = Spectrum::new(vec![12.0], SpectrumKind::Laguerre);
        assert!((u_statistic(&p, &mu).unwrap() - 0.00505).abs() < 1e-15);
        let lam = Spectrum::new(vec![0.2], SpectrumKind::JacobiUnit);
        assert!(u_statistic(&p, &lam).is_err());
    }

    #[test]
    fn u_shift_examples() {
        let p = jp(1.0, 1, 7.0, 30.0);
        assert!((u_shift(&p).unwrap() - 29.0 * 7.0 / 1800.0).abs() < 1e-15);
        let p = jp(1.0, 1000, 1000.0, 1e6);
        assert!((u_shift(&p).unwrap() - 250.12).abs() < 0.01);
        assert!(u_shift(&p).unwrap() > 0.0);
    }

    #[test]
    fn u_statistic_gram_matches_spectrum() {
        let p = jp(1.0, 30, 40.0, 1e4);
        let mut rng = RngStream::new(1, 0);
        for _ in 0..10 {
            let a = sample_laguerre_bidiagonal(&p, &mut rng).unwrap();
            let t = gram_tridiagonal(&a.factor());
            let mu = Spectrum::new(eigenvalues(&t), SpectrumKind::Laguerre);
            let (x, y) = (u_statistic(&p, &mu).unwrap(), u_statistic_gram(&p, &t).unwrap());
            assert!((x - y).abs() < 1e-10 * x.abs().max(1.0));
        }
    }

    #[test]
    fn u_mean_is_minus_shift() {
        let p = jp(1.0, 10, 50.0, 2000.0);
        let plan = ShardPlan::single(4);
        let st = plan
            .accumulate(100_000, |rng| {
                let mu = sample_spectrum(SpectrumKind::Laguerre, &p, rng)?;
                u_statistic(&p, &mu)
            })
            .unwrap();
        let shift = u_shift(&p).unwrap();
        assert!((st.mean() + shift).abs() < 4.0 * st.std_error(), "{} {}", st.mean(), shift);
    }

    #[test]
    fn unit_ratio_hook_gives_zero() {
        let p = jp(1.0, 5, 10.0, 100.0);
        let e = tv_estimate_with(&p, 500, &ShardPlan::single(1), |_| Ok(0.0)).unwrap();
        assert_eq!((e.value, e.std_error, e.n_samples), (0.0, 0.0, 500));
    }

    #[test]
    fn tv_off_support_contributes_one() {
        assert_eq!(tv_contribution(f64::NEG_INFINITY), 1.0);
        assert_eq!(tv_contribution(0.0), 0.0);
    }

    #[test]
    fn sample_counts_are_enforced() {
        let p = jp(1.0, 2, 3.0, 30.0);
        let plan = ShardPlan::single(0);
        assert!(tv_estimate(&p, 99, &plan).is_err());
        assert!(kl_estimate(&p, 50, &plan).is_err());
        assert!(clt_harness(&p, CltRegime::A2, CltMode::CenteredU, 499, &plan).is_err());
    }

    #[test]
    fn limit_reference_closed_form() {
        for (beta, sigma) in [(2.0, 1.0), (1.0, 1.0), (1.0, 0.3), (4.0, 2.0)] {
            let q = limit_tv_reference(beta, sigma).unwrap();
            assert!((q - limit_tv_closed_form(beta, sigma)).abs() < 1e-8, "{beta} {sigma}");
        }
        assert_eq!(limit_tv_reference(1.0, 0.0).unwrap(), 0.0);
        assert!(limit_tv_reference(1.0, 1e-4).unwrap() < 1e-4);
        let v: Vec<f64> = [0.5, 1.0, 2.0].iter().map(|s| limit_tv_reference(2.0, *s).unwrap()).collect();
        assert!(v[0] < v[1] && v[1] < v[2]);
    }

    #[test]
    fn single_row_tv_matches_quadrature() {
        let reference = single_row_tv_reference(20.0, 2000.0).unwrap();
        let p = jp(1.0, 1, 20.0, 2000.0);
        let e = tv_estimate(&p, 100_000, &ShardPlan::single(7)).unwrap();
        assert!((e.value - reference).abs() < 3.0 * e.std_error, "{} ± {} vs {reference}", e.value, e.std_error);
    }

    #[test]
    fn single_row_kl_matches_quadrature() {
        let reference = single_row_kl_reference(20.0, 2000.0).unwrap();
        let p = jp(2.0, 1, 20.0, 2000.0);
        let e = kl_estimate(&p, 100_000, &ShardPlan::single(8)).unwrap();
        assert!((e.value - reference).abs() < 3.0 * e.std_error, "{} ± {} vs {reference}", e.value, e.std_error);
        assert_eq!(e.flagged, 0);
    }

    #[test]
    fn shard_plans_are_deterministic_and_cover_n() {
        let plan = ShardPlan::new(3, 4);
        assert_eq!(plan.split(10), vec![3, 3, 2, 2]);
        let p = jp(1.0, 4, 6.0, 500.0);
        let a = tv_estimate(&p, 1000, &plan).unwrap();
        let b = tv_estimate(&p, 1000, &plan).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.n_samples, 1000);
        let c = tv_estimate(&p, 1000, &ShardPlan::new(3, 1)).unwrap();
        assert_ne!(a.value, c.value);
    }

    #[test]
    fn edge_clamping() {
        let (theta, hit) = clamp_edge(vec![1.0, 0.5], 10.0).unwrap();
        assert!(hit && theta[0] < 10.0 && theta[1] == 5.0);
        assert!(clamp_edge(vec![1.0 + 1e-9], 10.0).is_err());
    }

    #[test]
    fn quadratic_statistic_is_centered() {
        let p = jp(1.0, 50, 50.0, 2500.0);
        let rep = quadratic_clt_check(&p, 4000, &ShardPlan::single(2)).unwrap();
        assert!(rep.mean_z().abs() < 4.0, "{}", rep.mean_z());
    }
}
