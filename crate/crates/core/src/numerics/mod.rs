//! Numerical primitives shared by every other module: special functions,
//! random variates, streaming moment accumulation, the Kolmogorov-Smirnov
//! test and adaptive quadrature.

mod ks;
mod quadrature;
mod rng;
mod sampling;
mod special;
mod stats;

pub use ks::{kolmogorov_survival, ks_test, ks_two_sample, KsReport, KS_MIN_SAMPLES};
pub use quadrature::{integrate, integrate_to_infinity, Quadrature};
pub use rng::RngStream;
pub use sampling::{sample_beta, sample_chi_square, sample_gamma};
pub use special::{ln_gamma, ln_gamma_ratio, normal_cdf, normal_pdf};
pub use stats::{accumulate, SummaryStats};
