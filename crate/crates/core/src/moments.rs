//! Closed-form moment formulas for chi-square variables, the Laguerre
//! spectral sums and the leading Jacobi power sums, plus the trace identities
//! that tie the Laguerre spectrum to the entries of its bidiagonal factor.

use serde::Serialize;

use crate::distances::{Estimate, Metric, ShardPlan};
use crate::ensembles::{eigenvalues, gram_tridiagonal, sample_laguerre_bidiagonal, EnsembleParams, LaguerreBidiagonal};
use crate::{Error, Result};

/// Selector for [`chi_moment`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChiMoment {
    /// `E X^k`
    Raw(u32),
    /// `E(X − n)²`
    Central2,
    /// `E(X − n)³`
    Central3,
    /// `E(X − n)⁴`
    Central4,
    /// `Var(X²)`
    VarSquare,
    /// `Var((X − n)²)`
    VarCentralSquare,
}

/// Moments of `X ~ χ²(n)`.
pub fn chi_moment(dof: f64, which: ChiMoment) -> Result<f64> {
    if !(dof > 0.0) || !dof.is_finite() {
        return Err(Error::Domain(format!("chi-square dof must be positive, got {dof}")));
    }
    let n = dof;
    Ok(match which {
        ChiMoment::Raw(0) => return Err(Error::Domain("raw moment order must be at least 1".into())),
        ChiMoment::Raw(k) => (0..k).map(|l| n + 2.0 * f64::from(l)).product(),
        ChiMoment::Central2 => 2.0 * n,
        ChiMoment::Central3 => 8.0 * n,
        ChiMoment::Central4 => 12.0 * n * (n + 4.0),
        ChiMoment::VarSquare => 8.0 * n * (n + 2.0) * (n + 3.0),
        ChiMoment::VarCentralSquare => 8.0 * n * (n + 6.0),
    })
}

/// Leading-order values of `E Σλ_i`, `E Σλ_i²`, `E Σλ_i³` for the Jacobi
/// ensemble when `a₁m` is small against `a₂`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct JacobiMomentEstimates {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
}

pub fn jacobi_moment_estimates(params: &EnsembleParams) -> Result<JacobiMomentEstimates> {
    let (eta, a1, a) = (params.eta(), params.a1(), params.a()?);
    let m = params.m() as f64;
    Ok(JacobiMomentEstimates {
        s1: a1 * m / a,
        s2: (a1 * a1 * m + eta * a1 * m * m) / (a * a),
        s3: (a1.powi(3) * m + 3.0 * eta * a1 * a1 * m * m + eta * eta * a1 * m.powi(3)) / a.powi(3),
    })
}

/// Exact Laguerre spectral statistics, with `c_i = μ_i − 2a₁`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LaguerreStats {
    /// `Var Σμ_i`
    pub var_sum: f64,
    /// `E Σc_i²`
    pub e_sq: f64,
    /// `Var Σc_i²`
    pub var_sq: f64,
    /// `Cov(Σc_i, Σc_i²)`
    pub cov_lin_sq: f64,
    /// `E Σc_i³`
    pub e_cube: f64,
}

/// The five closed forms; `m = 1` is accepted and reduces to chi-square moments.
pub fn laguerre_exact_stats(params: &EnsembleParams) -> LaguerreStats {
    let (b, a1, r) = (params.beta(), params.a1(), params.r());
    let m = params.m() as f64;
    let am = a1 * m;
    LaguerreStats {
        var_sum: 4.0 * am,
        e_sq: 4.0 * am * r,
        var_sq: 16.0 * b * am * (m - 1.0) * (a1 + 5.0)
            + 8.0 * b * b * am * (m - 1.0) * (2.0 * m - 3.0)
            + 32.0 * am * (a1 + 3.0),
        cov_lin_sq: 16.0 * am * r,
        e_cube: 2.0 * b * b * am * (m - 1.0) * (m - 2.0) + 12.0 * b * am * (m - 1.0) + 16.0 * am,
    }
}

/// `b_i` and the degrees of freedom `2a₁ + b_i` of `z_i = x_i² + y_i²`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuxSequences {
    pub b: Vec<f64>,
    pub z_dof: Vec<f64>,
}

pub fn aux_sequences(params: &EnsembleParams) -> AuxSequences {
    let (beta, m, a1) = (params.beta(), params.m(), params.a1());
    let b: Vec<f64> =
        (1..=m).map(|i| if i == 1 { 0.0 } else { beta * m as f64 - 2.0 * beta * (i - 1) as f64 }).collect();
    let z_dof = b.iter().map(|bi| 2.0 * a1 + bi).collect();
    AuxSequences { b, z_dof }
}

/// `tr((AA' − sI)^k)` from the bidiagonal entries alone.
pub fn trace_power_from_entries(a: &LaguerreBidiagonal, k: u32, shift: f64) -> Result<f64> {
    let z = a.z();
    let m = a.m();
    let cross = |i: usize| a.x[i] * a.x[i] * a.y[i] * a.y[i]; // x_i² y_{i+1}²
    Ok(match k {
        1 => z.iter().map(|zi| zi - shift).sum(),
        2 => z.iter().map(|zi| (zi - shift).powi(2)).sum::<f64>() + 2.0 * (0..m - 1).map(cross).sum::<f64>(),
        3 => {
            z.iter().map(|zi| (zi - shift).powi(3)).sum::<f64>()
                + 3.0 * (0..m - 1).map(|i| cross(i) * (z[i] + z[i + 1] - 2.0 * shift)).sum::<f64>()
        }
        _ => return Err(Error::Domain(format!("trace power must be 1, 2 or 3, got {k}"))),
    })
}

/// `tr((AA' − sI)^k)` from the eigenvalues, cross-checked against
/// [`trace_power_from_entries`] at relative tolerance 1e-9.
pub fn trace_power_oracle(a: &LaguerreBidiagonal, k: u32, shift: f64) -> Result<f64> {
    let by_entries = trace_power_from_entries(a, k, shift)?;
    let mu = eigenvalues(&gram_tridiagonal(&a.factor()));
    let by_eigen: f64 = mu.iter().map(|v| (v - shift).powi(k as i32)).sum();
    if (by_eigen - by_entries).abs() > 1e-9 * by_eigen.abs().max(1.0) {
        return Err(Error::Consistency(format!(
            "trace power {k}: eigenvalues give {by_eigen}, entries give {by_entries}"
        )));
    }
    Ok(by_eigen)
}

/// Monte Carlo estimate of `Var Σ(μ_i − 2a₁)³`; the standard error comes from
/// the fourth sample moment.
pub fn cubic_variance_probe(params: &EnsembleParams, n_samples: usize, plan: &ShardPlan) -> Result<Estimate> {
    if n_samples < 100 {
        return Err(Error::Domain(format!("cubic_variance_probe needs n ≥ 100, got {n_samples}")));
    }
    let shift = 2.0 * params.a1();
    let stats = plan.accumulate(n_samples, |rng| {
        let a = sample_laguerre_bidiagonal(params, rng)?;
        trace_power_from_entries(&a, 3, shift)
    })?;
    Ok(Estimate {
        metric: Metric::Statistic,
        value: stats.variance(),
        std_error: stats.variance_std_error(),
        n_samples: stats.n(),
        seed: plan.seed,
        shards: plan.shards,
        flagged: 0,
    })
}

/// `m·β(1 ∓ √(1/γ))²` with `γ = βm/(2a₁)`, the predicted spectral edges.
pub fn spectral_edge_prediction(params: &EnsembleParams) -> Result<(f64, f64)> {
    let (beta, a1) = (params.beta(), params.a1());
    let m = params.m() as f64;
    let gamma = beta * m / (2.0 * a1);
    if gamma > 1.0 {
        return Err(Error::InvalidParams(format!("γ = βm/(2a1) must be at most 1, got {gamma}")));
    }
    let root = (1.0 / gamma).sqrt();
    Ok((m * beta * (1.0 - root).powi(2), m * beta * (1.0 + root).powi(2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{sample_spectrum, SpectrumKind};
    use crate::numerics::{integrate_to_infinity, ln_gamma, RngStream, SummaryStats};

    fn lp(beta: f64, m: usize, a1: f64) -> EnsembleParams {
        EnsembleParams::laguerre(beta, m, a1).unwrap()
    }

    #[test]
    fn chi_moment_values() {
        assert_eq!(chi_moment(10.0, ChiMoment::Raw(1)).unwrap(), 10.0);
        assert_eq!(chi_moment(10.0, ChiMoment::Raw(3)).unwrap(), 10.0 * 12.0 * 14.0);
        assert_eq!(chi_moment(10.0, ChiMoment::Central2).unwrap(), 20.0);
        assert_eq!(chi_moment(6.0, ChiMoment::VarCentralSquare).unwrap(), 576.0);
        assert!(chi_moment(6.0, ChiMoment::Raw(0)).is_err());
        assert!(chi_moment(0.0, ChiMoment::Central2).is_err());
        // Var(X²) = E X⁴ − (E X²)²
        let n = 3.5;
        let v = chi_moment(n, ChiMoment::Raw(4)).unwrap() - chi_moment(n, ChiMoment::Raw(2)).unwrap().powi(2);
        assert!((chi_moment(n, ChiMoment::VarSquare).unwrap() - v).abs() < 1e-9);
    }

    #[test]
    fn jacobi_estimates_substitution() {
        let p = EnsembleParams::jacobi(2.0, 3, 10.0, 1e5).unwrap();
        let e = jacobi_moment_estimates(&p).unwrap();
        let a = 100_010.0f64;
        assert!((e.s1 - 30.0 / a).abs() < 1e-18);
        assert!((e.s2 - 390.0 / (a * a)).abs() < 1e-22);
        assert!((e.s3 - 5970.0 / a.powi(3)).abs() < 1e-26);
        assert!(e.s3 <= e.s2 && e.s2 <= e.s1);
    }

    #[test]
    fn jacobi_estimates_single_row_against_beta_moments() {
        let (a1, a2) = (7.0, 1e6);
        let p = EnsembleParams::jacobi(1.0, 1, a1, a2).unwrap();
        let e = jacobi_moment_estimates(&p).unwrap();
        let a = a1 + a2;
        let exact2 = a1 * (a1 + 1.0) / (a * (a + 1.0));
        let exact3 = exact2 * (a1 + 2.0) / (a + 2.0);
        assert!((e.s1 - a1 / a).abs() < 1e-18);
        assert!((e.s2 - exact2).abs() < 10.0 * a1 / (a2 * a2));
        assert!((e.s3 - exact3).abs() < 10.0 * a1 / (a2 * a2));
    }

    #[test]
    fn laguerre_stats_substitution() {
        let s = laguerre_exact_stats(&lp(1.0, 2, 1.0));
        assert_eq!((s.var_sum, s.e_sq, s.e_cube), (8.0, 12.0, 56.0));
        // exact expectations computed symbolically from the bidiagonal model
        let s = laguerre_exact_stats(&lp(2.0, 5, 10.0));
        assert_eq!((s.var_sum, s.e_sq, s.var_sq, s.cov_lin_sq, s.e_cube), (200.0, 1000.0, 161_600.0, 4000.0, 10_400.0));
        let s = laguerre_exact_stats(&lp(4.0, 8, 20.0));
        assert_eq!(
            (s.var_sum, s.e_sq, s.var_sq, s.cov_lin_sq, s.e_cube),
            (640.0, 9600.0, 3_773_440.0, 38_400.0, 271_360.0)
        );
    }

    #[test]
    fn laguerre_stats_single_row_are_chi_moments() {
        for a1 in [0.5, 3.0, 17.25] {
            let s = laguerre_exact_stats(&lp(1.3, 1, a1));
            let n = 2.0 * a1;
            assert_eq!(s.var_sum, chi_moment(n, ChiMoment::Central2).unwrap());
            assert_eq!(s.e_sq, chi_moment(n, ChiMoment::Central2).unwrap());
            assert!((s.var_sq - chi_moment(n, ChiMoment::VarCentralSquare).unwrap()).abs() < 1e-9);
            assert_eq!(s.cov_lin_sq, chi_moment(n, ChiMoment::Central3).unwrap());
            assert_eq!(s.e_cube, chi_moment(n, ChiMoment::Central3).unwrap());
        }
    }

    #[test]
    fn laguerre_stats_monte_carlo() {
        let p = lp(2.0, 4, 6.0);
        let mut rng = RngStream::new(12, 0);
        let (mut sum, mut sq) = (SummaryStats::new(), SummaryStats::new());
        for _ in 0..200_000 {
            let mu = sample_spectrum(SpectrumKind::Laguerre, &p, &mut rng).unwrap();
            sum.push(mu.values().iter().sum());
            sq.push(mu.values().iter().map(|v| (v - 12.0).powi(2)).sum());
        }
        assert!((sum.variance() - 96.0).abs() < 4.0 * sum.variance_std_error());
        assert!((sq.mean() - 384.0).abs() < 4.0 * sq.std_error());
    }

    #[test]
    fn aux_sequence_examples() {
        let s = aux_sequences(&lp(1.0, 1, 3.0));
        assert_eq!((s.b, s.z_dof), (vec![0.0], vec![6.0]));
        let s = aux_sequences(&lp(1.0, 4, 3.0));
        assert_eq!(s.b, vec![0.0, 2.0, 0.0, -2.0]);
        let s = aux_sequences(&lp(2.0, 3, 3.0));
        assert_eq!(s.b, vec![0.0, 2.0, -2.0]);
        assert_eq!(s.b.iter().map(|b| b.powi(3)).sum::<f64>(), 0.0);
    }

    #[test]
    fn aux_sequence_sums() {
        for m in [1usize, 2, 3, 10, 257, 10_000] {
            let beta = 1.7;
            let s = aux_sequences(&EnsembleParams::laguerre(beta, m, m as f64 * 2.0).unwrap());
            let mf = m as f64;
            let scale = beta.powi(3) * mf.powi(4);
            assert!(s.b.iter().sum::<f64>().abs() <= 1e-9 * beta * mf * mf);
            assert!(s.b.iter().map(|b| b.powi(3)).sum::<f64>().abs() <= 1e-9 * scale);
            let want = beta * beta * mf * (mf - 1.0) * (mf - 2.0) / 3.0;
            let got: f64 = s.b.iter().map(|b| b * b).sum();
            assert!((got - want).abs() <= 1e-9 * want.max(1.0));
        }
    }

    #[test]
    fn trace_identities_hold() {
        let mut rng = RngStream::new(77, 0);
        for (beta, m, a1) in [(1.0, 1, 4.0), (2.0, 2, 3.0), (0.7, 5, 9.0), (1.0, 50, 60.0), (4.0, 50, 400.0)] {
            let p = lp(beta, m, a1);
            for _ in 0..20 {
                let a = sample_laguerre_bidiagonal(&p, &mut rng).unwrap();
                let t1 = trace_power_oracle(&a, 1, 0.0).unwrap();
                let direct: f64 = a.x.iter().chain(&a.y).map(|v| v * v).sum();
                assert!((t1 - direct).abs() < 1e-10 * direct);
                trace_power_oracle(&a, 2, 2.0 * a1).unwrap();
                trace_power_oracle(&a, 3, 2.0 * a1).unwrap();
            }
        }
        let a = LaguerreBidiagonal::new(vec![1.0], vec![]).unwrap();
        assert!(trace_power_oracle(&a, 4, 0.0).is_err());
    }

    #[test]
    fn trace_oracle_detects_mismatch() {
        let a = LaguerreBidiagonal::new(vec![1.0, 2.0], vec![1.5]).unwrap();
        let good = trace_power_from_entries(&a, 2, 0.0).unwrap();
        // dropping the cross term must not pass
        let z = a.z();
        let without_cross: f64 = z.iter().map(|v| v * v).sum();
        assert!((good - without_cross).abs() > 1.0);
    }

    fn chi_central6_variance(n: f64) -> f64 {
        // Var((X−n)³) by quadrature of the χ²_n density
        let norm = -0.5 * n * std::f64::consts::LN_2 - ln_gamma(0.5 * n).unwrap();
        let dens = |x: f64| if x > 0.0 { (norm + (0.5 * n - 1.0) * x.ln() - 0.5 * x).exp() } else { 0.0 };
        let m6 = integrate_to_infinity(|x| dens(x) * (x - n).powi(6), 0.0, 1e-10, 1e-13).unwrap().value;
        let m3 = integrate_to_infinity(|x| dens(x) * (x - n).powi(3), 0.0, 1e-10, 1e-13).unwrap().value;
        m6 - m3 * m3
    }

    #[test]
    fn cubic_probe_single_row() {
        let a1 = 4.0;
        let want = chi_central6_variance(2.0 * a1);
        let n = 8.0f64;
        assert!((want - (120.0 * n.powi(3) + 2016.0 * n * n + 3840.0 * n)).abs() < 1e-6 * want);
        let e = cubic_variance_probe(&lp(1.0, 1, a1), 200_000, &ShardPlan::single(3)).unwrap();
        assert!((e.value - want).abs() < 4.0 * e.std_error, "{} ± {} vs {want}", e.value, e.std_error);
        assert!(cubic_variance_probe(&lp(1.0, 1, a1), 99, &ShardPlan::single(3)).is_err());
    }

    #[test]
    fn cubic_probe_scales_like_m7() {
        let ratios: Vec<f64> = [(100, 100.0), (200, 200.0)]
            .iter()
            .map(|&(m, a1)| {
                let e = cubic_variance_probe(&lp(1.0, m, a1), 1000, &ShardPlan::single(5)).unwrap();
                assert!(e.value >= 0.0);
                e.value / (m as f64).powi(7)
            })
            .collect();
        let spread = ratios[0].max(ratios[1]) / ratios[0].min(ratios[1]);
        assert!(spread < 4.0, "{ratios:?}");
    }

    #[test]
    fn edge_prediction() {
        let (lo, hi) = spectral_edge_prediction(&lp(1.0, 2000, 2000.0)).unwrap();
        assert!((hi - 11_656.854_249_492_38).abs() < 1e-6);
        assert!((lo - 2000.0 * (1.0 - 2f64.sqrt()).powi(2)).abs() < 1e-9);
        let (lo, hi) = spectral_edge_prediction(&lp(2.0, 10, 10.0)).unwrap();
        assert_eq!((lo, hi), (0.0, 80.0));
        assert!(spectral_edge_prediction(&lp(2.0, 10, 9.5)).is_err());
    }
}
