//! Spherical-harmonic machinery for `R^d`, `d >= 3`:
//!
//! - exact sparse homogeneous polynomial algebra with integration over the
//!   unit sphere ([`polyalg`]);
//! - the canonical decomposition of homogeneous polynomials into harmonic
//!   components, with exact rational coefficients ([`harmonic`]);
//! - Gegenbauer polynomials, reproducing kernels, and the expansion of
//!   elementary zonal polynomials ([`gegenbauer`]);
//! - spherical Fourier expansions of zonal functions from Taylor data of the
//!   profile function, including the plane-wave expansion ([`zonal`]);
//! - Bessel functions of the first kind with the multi-step recurrences and
//!   finite expansions they satisfy ([`bessel`]);
//! - Fourier transforms of polynomial densities on the sphere, the Hankel
//!   transform, and the generalized Bochner identity ([`transforms`]).
//!
//! Closed-form results are paired throughout with independent brute-force
//! oracles (exact term-by-term integration, adaptive quadrature), so every
//! identity can be checked numerically at desk scale.
//!
//! Conventions, fixed once and used everywhere: the surface measure on the
//! sphere is normalized to total mass 1; the sphere transform carries no
//! `(2pi)^{-d/2}` prefactor, while the full-space Fourier transform in the
//! Bochner identity does.

pub mod bessel;
mod dd;
pub mod error;
pub mod gegenbauer;
pub mod harmonic;
pub mod polyalg;
pub mod quadrature;
pub mod rational;
pub mod transforms;
pub mod zonal;

pub use error::{Error, Result};
pub use rational::Rational;
