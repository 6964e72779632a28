use serde::Serialize;

use super::EnsembleParams;
use crate::numerics::{sample_beta, sample_chi_square, RngStream};
use crate::{Error, Result};

/// A lower-bidiagonal factor stored as squared magnitudes.
///
/// `sub_sq[k]` sits at row `k + 1`, column `k`. Signs never matter for the
/// Gram spectrum, so none are kept.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LowerBidiagonal {
    pub diag_sq: Vec<f64>,
    pub sub_sq: Vec<f64>,
}

/// The Laguerre factor `A`: diagonal `x_1..x_m`, subdiagonal `y_2..y_m`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LaguerreBidiagonal {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl LaguerreBidiagonal {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.is_empty() || y.len() + 1 != x.len() {
            return Err(Error::Domain(format!("bidiagonal lengths must be (m, m-1), got ({}, {})", x.len(), y.len())));
        }
        if x.iter().chain(&y).any(|v| !(*v >= 0.0)) {
            return Err(Error::Domain("bidiagonal entries must be nonnegative".into()));
        }
        Ok(Self { x, y })
    }

    pub fn m(&self) -> usize {
        self.x.len()
    }

    /// `z_i = x_i² + y_i²` with `y_1 = 0`, the diagonal of `AA'`.
    pub fn z(&self) -> Vec<f64> {
        (0..self.m()).map(|k| self.x[k] * self.x[k] + if k > 0 { self.y[k - 1] * self.y[k - 1] } else { 0.0 }).collect()
    }

    pub fn factor(&self) -> LowerBidiagonal {
        LowerBidiagonal {
            diag_sq: self.x.iter().map(|v| v * v).collect(),
            sub_sq: self.y.iter().map(|v| v * v).collect(),
        }
    }
}

/// The Jacobi factor `B`, held through its Beta variables.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JacobiBidiagonal {
    pub c: Vec<f64>,
    pub cp: Vec<f64>,
}

impl JacobiBidiagonal {
    pub fn new(c: Vec<f64>, cp: Vec<f64>) -> Result<Self> {
        if c.is_empty() || cp.len() + 1 != c.len() {
            return Err(Error::Domain(format!(
                "Beta vectors must have lengths (m, m-1), got ({}, {})",
                c.len(),
                cp.len()
            )));
        }
        if c.iter().chain(&cp).any(|v| !(*v > 0.0 && *v < 1.0)) {
            return Err(Error::Domain("Beta entries must lie strictly inside (0, 1)".into()));
        }
        Ok(Self { c, cp })
    }

    pub fn m(&self) -> usize {
        self.c.len()
    }

    pub fn s(&self) -> Vec<f64> {
        self.c.iter().map(|v| 1.0 - v).collect()
    }

    pub fn sp(&self) -> Vec<f64> {
        self.cp.iter().map(|v| 1.0 - v).collect()
    }

    /// Rows of `B` from the top: row `r` has diagonal `c_{m+1-r} s'_{m-r}`
    /// (with `s'_0 = 1`) and subdiagonal `s_{m+1-r} c'_{m+1-r}`, squared.
    pub fn factor(&self) -> LowerBidiagonal {
        let m = self.m();
        let diag_sq = (0..m)
            .map(|k| {
                let sp = if k + 1 == m { 1.0 } else { 1.0 - self.cp[m - 2 - k] };
                self.c[m - 1 - k] * sp
            })
            .collect();
        let sub_sq = (1..m).map(|k| (1.0 - self.c[m - 1 - k]) * self.cp[m - 1 - k]).collect();
        LowerBidiagonal { diag_sq, sub_sq }
    }
}

/// Draws `A` with `x_i² ~ χ²(2a₁ − β(i−1))` and `y_i² ~ χ²(β(m−i+1))`.
pub fn sample_laguerre_bidiagonal(params: &EnsembleParams, rng: &mut RngStream) -> Result<LaguerreBidiagonal> {
    let (beta, m, a1) = (params.beta(), params.m(), params.a1());
    if 2.0 * a1 - beta * (m as f64 - 1.0) <= 0.0 {
        return Err(Error::InvalidParams("a1 must exceed β(m−1)/2".into()));
    }
    let mut x = Vec::with_capacity(m);
    for i in 0..m {
        x.push(sample_chi_square(2.0 * a1 - beta * i as f64, rng)?.sqrt());
    }
    let mut y = Vec::with_capacity(m.saturating_sub(1));
    for i in 1..m {
        y.push(sample_chi_square(beta * (m - i) as f64, rng)?.sqrt());
    }
    Ok(LaguerreBidiagonal { x, y })
}

/// Draws `c_i ~ Beta(a₁−η(m−i), a₂−η(m−i))` and
/// `c'_i ~ Beta(ηi, a−η(2m−i−1))`.
pub fn sample_jacobi_bidiagonal(params: &EnsembleParams, rng: &mut RngStream) -> Result<JacobiBidiagonal> {
    let (eta, m, a1, a2) = (params.eta(), params.m(), params.a1(), params.a2()?);
    let a = a1 + a2;
    let mut c = Vec::with_capacity(m);
    for i in 1..=m {
        let shift = eta * (m - i) as f64;
        c.push(sample_beta(a1 - shift, a2 - shift, rng).map_err(param_error)?);
    }
    let mut cp = Vec::with_capacity(m - 1);
    for i in 1..m {
        let b = a - eta * (2 * m - i - 1) as f64;
        cp.push(sample_beta(eta * i as f64, b, rng).map_err(param_error)?);
    }
    Ok(JacobiBidiagonal { c, cp })
}

fn param_error(e: Error) -> Error {
    match e {
        Error::Domain(msg) => Error::InvalidParams(msg),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{ks_test, SummaryStats};
    use statrs::distribution::{ChiSquared, ContinuousCDF};

    #[test]
    fn shapes_and_lengths() {
        let p = EnsembleParams::jacobi(2.0, 1, 3.0, 5.0).unwrap();
        let mut rng = RngStream::new(1, 0);
        let b = sample_jacobi_bidiagonal(&p, &mut rng).unwrap();
        assert_eq!((b.c.len(), b.cp.len()), (1, 0));
        assert_eq!(b.factor().diag_sq, b.c);
        let l = sample_laguerre_bidiagonal(&p, &mut rng).unwrap();
        assert_eq!((l.x.len(), l.y.len()), (1, 0));
        let p = EnsembleParams::jacobi(1.0, 7, 30.0, 40.0).unwrap();
        let b = sample_jacobi_bidiagonal(&p, &mut rng).unwrap();
        assert!(b.c.iter().chain(&b.cp).all(|v| *v > 0.0 && *v < 1.0));
        for (s, c) in b.s().iter().zip(&b.c) {
            assert_eq!(s + c, 1.0);
        }
        let f = b.factor();
        assert_eq!((f.diag_sq.len(), f.sub_sq.len()), (7, 6));
    }

    #[test]
    fn constructors_check_shape() {
        assert!(LaguerreBidiagonal::new(vec![1.0, 2.0], vec![]).is_err());
        assert!(LaguerreBidiagonal::new(vec![1.0], vec![]).is_ok());
        assert!(LaguerreBidiagonal::new(vec![-1.0], vec![]).is_err());
        assert!(JacobiBidiagonal::new(vec![0.5, 1.0], vec![0.2]).is_err());
        assert!(JacobiBidiagonal::new(vec![0.5, 0.3], vec![0.2]).is_ok());
    }

    // β=2, m=2, a1=3, a2=5 gives c_1 ~ Beta(2,4), c_2 ~ Beta(3,5), c'_1 ~ Beta(1,6).
    #[test]
    fn jacobi_beta_laws_by_substitution() {
        let p = EnsembleParams::jacobi(2.0, 2, 3.0, 5.0).unwrap();
        let mut rng = RngStream::new(11, 0);
        let mut st = [SummaryStats::new(), SummaryStats::new(), SummaryStats::new()];
        for _ in 0..40_000 {
            let b = sample_jacobi_bidiagonal(&p, &mut rng).unwrap();
            st[0].push(b.c[0]);
            st[1].push(b.c[1]);
            st[2].push(b.cp[0]);
        }
        for (s, mean) in st.iter().zip([2.0 / 6.0, 3.0 / 8.0, 1.0 / 7.0]) {
            assert!((s.mean() - mean).abs() < 4.0 * s.std_error(), "{} vs {mean}", s.mean());
        }
    }

    #[test]
    fn laguerre_degrees_of_freedom() {
        // β=2, m=3, a1=4: x² dofs (8,6,4); y_2², y_3² dofs β(m−1), β = (4,2)
        let p = EnsembleParams::laguerre(2.0, 3, 4.0).unwrap();
        let mut rng = RngStream::new(5, 0);
        let mut st: Vec<SummaryStats> = vec![SummaryStats::new(); 5];
        for _ in 0..40_000 {
            let a = sample_laguerre_bidiagonal(&p, &mut rng).unwrap();
            for (k, v) in a.x.iter().chain(&a.y).enumerate() {
                st[k].push(v * v);
            }
        }
        for (s, dof) in st.iter().zip([8.0, 6.0, 4.0, 4.0, 2.0]) {
            assert!((s.mean() - dof).abs() < 4.0 * s.std_error());
        }
    }

    #[test]
    fn single_row_is_chi_square() {
        let p = EnsembleParams::laguerre(1.0, 1, 5.0).unwrap();
        let mut rng = RngStream::new(3, 0);
        let xs: Vec<f64> =
            (0..10_000).map(|_| sample_laguerre_bidiagonal(&p, &mut rng).unwrap().x[0].powi(2)).collect();
        let chi = ChiSquared::new(10.0).unwrap();
        let rep = ks_test(&xs, |v| chi.cdf(v)).unwrap();
        assert!(rep.p_value > 0.01, "{rep:?}");
    }

    #[test]
    fn expected_trace() {
        // E Σ(x_i² + y_i²) = 2a1·m = 100 at β=1, m=5, a1=10
        let p = EnsembleParams::laguerre(1.0, 5, 10.0).unwrap();
        let mut rng = RngStream::new(8, 0);
        let st: SummaryStats =
            (0..100_000).map(|_| sample_laguerre_bidiagonal(&p, &mut rng).unwrap().z().iter().sum::<f64>()).collect();
        assert!((st.mean() - 100.0).abs() < 4.0 * st.std_error());
    }
}
