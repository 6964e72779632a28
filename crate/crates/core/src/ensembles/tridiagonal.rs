use serde::Serialize;

use super::LowerBidiagonal;

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// Symmetric tridiagonal matrix; `offdiag[k]` couples rows `k` and `k + 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymmetricTridiagonal {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl SymmetricTridiagonal {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Self {
        assert_eq!(offdiag.len() + 1, diag.len().max(1), "offdiag must have length m-1");
        Self { diag, offdiag }
    }

    pub fn m(&self) -> usize {
        self.diag.len()
    }

    /// `factor · T`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            diag: self.diag.iter().map(|d| d * factor).collect(),
            offdiag: self.offdiag.iter().map(|e| e * factor).collect(),
        }
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }

    /// `(tr(T − sI), tr((T − sI)²))` straight from the entries.
    pub fn centered_power_sums(&self, shift: f64) -> (f64, f64) {
        let lin = self.diag.iter().map(|d| d - shift).sum();
        let sq = self.diag.iter().map(|d| (d - shift) * (d - shift)).sum::<f64>()
            + 2.0 * self.offdiag.iter().map(|e| e * e).sum::<f64>();
        (lin, sq)
    }

    /// `Σ ln(1 + (center − μ_i)/scale)` over the eigenvalues `μ_i`, computed as
    /// a log-determinant through the LDL' pivots of `I + (center·I − T)/scale`.
    ///
    /// Returns `None` when that matrix is not positive definite, i.e. when some
    /// eigenvalue reaches `center + scale`.
    pub fn log1p_shifted_sum(&self, center: f64, scale: f64) -> Option<f64> {
        let mut sum = 0.0;
        let mut prev = 0.0_f64; // pivot minus one
        for k in 0..self.m() {
            let mut q = (center - self.diag[k]) / scale;
            if k > 0 {
                let e = self.offdiag[k - 1] / scale;
                q -= e * e / (1.0 + prev);
            }
            if !(1.0 + q > 0.0) {
                return None;
            }
            sum += q.ln_1p();
            prev = q;
        }
        Some(sum)
    }
}

/// Gram matrix `FF'` of a lower-bidiagonal factor.
pub fn gram_tridiagonal(factor: &LowerBidiagonal) -> SymmetricTridiagonal {
    let m = factor.diag_sq.len();
    let diag = (0..m).map(|k| factor.diag_sq[k] + if k > 0 { factor.sub_sq[k - 1] } else { 0.0 }).collect();
    let offdiag = (0..m.saturating_sub(1)).map(|k| (factor.diag_sq[k] * factor.sub_sq[k]).sqrt()).collect();
    SymmetricTridiagonal { diag, offdiag }
}

/// All eigenvalues, sorted nonincreasing, by implicit-shift QL iteration.
pub fn eigenvalues(t: &SymmetricTridiagonal) -> Vec<f64> {
    let n = t.m();
    let mut d = t.diag.clone();
    if n <= 1 {
        return d;
    }
    let mut e = t.offdiag.clone();
    e.push(0.0);
    ql_implicit(&mut d, &mut e);
    d.sort_unstable_by(|a, b| b.total_cmp(a));
    d
}

fn ql_implicit(d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut mm = l;
            while mm + 1 < n {
                let scale = d[mm].abs() + d[mm + 1].abs();
                if e[mm].abs() <= f64::EPSILON * scale {
                    break;
                }
                mm += 1;
            }
            if mm == l || sweeps == MAX_SWEEPS_PER_EIGENVALUE {
                break;
            }
            sweeps += 1;

            // Wilkinson-style shift from the leading 2×2 block
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = (g * g + 1.0).sqrt();
            g = d[mm] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..mm).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = (f * f + g * g).sqrt();
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[mm] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[mm] = 0.0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dense(t: &SymmetricTridiagonal) -> Vec<Vec<f64>> {
        let m = t.m();
        let mut a = vec![vec![0.0; m]; m];
        for k in 0..m {
            a[k][k] = t.diag[k];
            if k + 1 < m {
                a[k][k + 1] = t.offdiag[k];
                a[k + 1][k] = t.offdiag[k];
            }
        }
        a
    }

    fn matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
        let m = a.len();
        let mut c = vec![vec![0.0; m]; m];
        for i in 0..m {
            for k in 0..m {
                for j in 0..m {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
        c
    }

    fn trace(a: &[Vec<f64>]) -> f64 {
        (0..a.len()).map(|i| a[i][i]).sum()
    }

    #[test]
    fn small_examples() {
        let t = gram_tridiagonal(&LowerBidiagonal { diag_sq: vec![4.0, 9.0], sub_sq: vec![0.0] });
        assert_eq!((t.diag.clone(), t.offdiag.clone()), (vec![4.0, 9.0], vec![0.0]));
        assert_eq!(eigenvalues(&t), vec![9.0, 4.0]);

        let t = gram_tridiagonal(&LowerBidiagonal { diag_sq: vec![1.0, 1.0], sub_sq: vec![1.0] });
        assert_eq!((t.diag.clone(), t.offdiag.clone()), (vec![1.0, 2.0], vec![1.0]));

        let ev = eigenvalues(&SymmetricTridiagonal::new(vec![2.0, 2.0], vec![1.0]));
        assert!((ev[0] - 3.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
        assert_eq!(eigenvalues(&SymmetricTridiagonal::new(vec![5.0], vec![])), vec![5.0]);
        assert!(eigenvalues(&SymmetricTridiagonal::new(vec![], vec![])).is_empty());
    }

    #[test]
    fn dense_trace_oracle_m8() {
        let diag = vec![3.1, 0.4, 7.7, 2.2, 5.0, 1.3, 9.9, 4.4];
        let off = vec![1.5, 0.2, 2.8, 0.9, 3.3, 0.01, 1.1];
        let t = SymmetricTridiagonal::new(diag, off);
        let ev = eigenvalues(&t);
        let a = dense(&t);
        let a2 = matmul(&a, &a);
        let a3 = matmul(&a2, &a);
        for (k, want) in [(1, trace(&a)), (2, trace(&a2)), (3, trace(&a3))] {
            let got: f64 = ev.iter().map(|v| v.powi(k)).sum();
            assert!(((got - want) / want).abs() < 1e-10, "k={k}: {got} vs {want}");
        }
        assert!(ev.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn log_determinant_route_matches_eigenvalues() {
        let t = SymmetricTridiagonal::new(vec![3.0, 4.5, 2.0, 6.0], vec![1.0, 0.7, 1.9]);
        let ev = eigenvalues(&t);
        let (center, scale) = (4.0, 50.0);
        let want: f64 = ev.iter().map(|mu| ((center - mu) / scale).ln_1p()).sum();
        let got = t.log1p_shifted_sum(center, scale).unwrap();
        assert!((got - want).abs() < 1e-14);
        // an eigenvalue above center + scale leaves the domain
        assert!(t.log1p_shifted_sum(0.0, ev[0] * 0.99).is_none());
        assert!(t.log1p_shifted_sum(0.0, ev[0] * 1.01).is_some());
    }

    #[test]
    fn clustered_and_zero_couplings() {
        let t = SymmetricTridiagonal::new(vec![1.0; 6], vec![0.0, 1e-300, 0.0, 1e-17, 0.0]);
        let ev = eigenvalues(&t);
        assert!(ev.iter().all(|v| (v - 1.0).abs() < 1e-15));
    }

    proptest! {
        #[test]
        fn traces_and_ordering(
            d in prop::collection::vec(0.0f64..100.0, 2..30),
            seed in 0u64..1000,
        ) {
            let m = d.len();
            let off: Vec<f64> = (0..m - 1).map(|k| ((seed + k as u64) % 17) as f64 * 0.7).collect();
            let t = SymmetricTridiagonal::new(d, off);
            let ev = eigenvalues(&t);
            prop_assert!(ev.windows(2).all(|w| w[0] >= w[1]));
            let (_, sq) = t.centered_power_sums(0.0);
            let s1: f64 = ev.iter().sum();
            let s2: f64 = ev.iter().map(|v| v * v).sum();
            prop_assert!((s1 - t.trace()).abs() <= 1e-10 * sq.sqrt().max(1.0));
            prop_assert!((s2 - sq).abs() <= 1e-10 * sq.max(1.0));
        }
    }
}
