//! Bidiagonal matrix models for the two ensembles.
//!
//! * Laguerre: `A` lower bidiagonal with chi entries; the eigenvalues of
//!   `AA'` have the beta-Laguerre joint density.
//! * Jacobi: `B` lower bidiagonal with entries built from independent Beta
//!   variables; the eigenvalues of `BB'` have the beta-Jacobi joint density.
//!
//! Both Gram matrices are symmetric tridiagonal, and their spectra are
//! extracted with an implicit-shift QL iteration.

mod bidiagonal;
mod params;
mod spectrum;
mod tridiagonal;

pub use bidiagonal::{
    sample_jacobi_bidiagonal, sample_laguerre_bidiagonal, JacobiBidiagonal, LaguerreBidiagonal, LowerBidiagonal,
};
pub use params::EnsembleParams;
pub use spectrum::{sample_spectrum, Spectrum, SpectrumKind, JACOBI_OVERSHOOT};
pub use tridiagonal::{eigenvalues, gram_tridiagonal, SymmetricTridiagonal};
