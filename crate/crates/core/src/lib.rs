//! Pathwise fractional calculus and mild-solution solvers on the unit interval.
//!
//! The crate provides, at desk scale:
//!
//! * discrete Riemann–Liouville fractional integrals and Weyl–Marchaud
//!   fractional derivatives of sampled paths ([`fraccalc`]),
//! * the fractional forward integral of Stieltjes type and a Picard solver
//!   for scalar ODEs driven by non-differentiable paths ([`stieltjes`]),
//! * exact-covariance Gaussian generators for fractional Brownian motion,
//!   fields and sheets, plus empirical regularity estimators ([`noise`]),
//! * the spectral Dirichlet heat semigroup on (0,1) together with fractional
//!   powers, Bessel potentials and Sobolev norms over the full order scale
//!   ([`semigroup`]),
//! * mild-solution Picard solvers for semilinear heat and transport-diffusion
//!   problems driven by distributional noise ([`mild`]),
//! * a Cole–Hopf pipeline for a Burgers-type equation forced by the time
//!   derivative of a fractional Brownian sheet ([`burgers`]).
//!
//! All spatial computation lives on (0,1) in the Dirichlet sine basis with
//! eigenvalues `λ_k = π²k²`. Types are immutable after construction and all
//! operations are pure functions, so everything can be shared across threads
//! freely.

pub mod burgers;
pub mod error;
pub mod fraccalc;
pub mod grid;
pub mod io;
pub(crate) mod kernels;
pub mod mild;
pub mod noise;
pub mod semigroup;
pub mod spectral;
pub mod stieltjes;

pub use error::{Error, Result};
pub use grid::{SampledPath, UniformGrid};
pub use spectral::{SpaceTimeField, SpectralVector};
