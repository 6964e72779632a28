//! Beta-Jacobi and beta-Laguerre ensembles through their bidiagonal matrix
//! models, together with Monte Carlo estimators for the total-variation and
//! Kullback-Leibler distances between the scaled Jacobi spectrum `2aλ` and the
//! Laguerre spectrum `μ`.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`numerics`] | log-gamma, gamma/chi-square/beta variates, streaming moments, KS test, quadrature |
//! | [`ensembles`] | parameter validation, bidiagonal samplers, tridiagonal eigenvalues |
//! | [`densities`] | joint log-densities, normalizers, `K_m`, `L_m` and their rebalanced forms |
//! | [`moments`] | closed-form moment formulas and trace identities |
//! | [`distances`] | TV / KL estimators, the `U_m` statistic and CLT harnesses |
//! | [`regimes`] | parameter schedules for the A1/A2/A3 and vanishing regimes, scans |
//!
//! ```
//! use beta_ensembles::ensembles::{sample_spectrum, EnsembleParams, SpectrumKind};
//! use beta_ensembles::numerics::RngStream;
//!
//! let params = EnsembleParams::jacobi(1.0, 4, 10.0, 1.0e4).unwrap();
//! let mut rng = RngStream::new(7, 0);
//! let lambda = sample_spectrum(SpectrumKind::JacobiUnit, &params, &mut rng).unwrap();
//! assert!(lambda.values().iter().all(|&v| (0.0..=1.0).contains(&v)));
//! ```

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod densities;
pub mod distances;
pub mod ensembles;
mod error;
pub mod moments;
pub mod numerics;
pub mod regimes;

pub use error::{Error, Result};
