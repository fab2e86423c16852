//! Numerical laboratory for the Riemann zeta function built on the spectral
//! theory of the Dirichlet Laplacian on (0,1).
//!
//! The eigenvalues of -d²/dx² on (0,1) with Dirichlet boundary conditions are
//! λ_k = (kπ)², so the operator zeta function is ζ(z; -Δ) = π^{-2z} ζ(2z) and
//! every trace formula for the resolvent, the heat semigroup, or theta-like
//! sums turns into an integral representation of ζ. This crate implements a
//! catalogue of such representations (together with a collection of classical
//! integral and series forms), evaluates them with an adaptive complex
//! Gauss-Kronrod engine, and cross-checks everything against an independent
//! Euler-Maclaurin reference.
//!
//! Module map:
//!
//! * [`bernoulli`]: exact Bernoulli numbers and polynomials (the coefficient
//!   source for every series expansion used here),
//! * [`kernels`]: cancellation-safe trace kernels (coth remainders, resolvent
//!   trace derivatives, log-sinh remainders, theta sums),
//! * [`quadrature`]: adaptive Gauss-Kronrod integration with endpoint and
//!   decay transforms, a tensor rule for multi-dimensional integrals, and a
//!   trapezoid contour rule,
//! * [`reference`]: the independent zeta/gamma oracle,
//! * [`spectral`]: eigenvalue-side objects (traces, spectral zeta, Green's
//!   function),
//! * [`representations`]: the catalogue, evaluation records, and verification
//!   drivers,
//! * [`report`]: JSON/CSV serialization of evaluation records.

pub mod bernoulli;
mod error;
pub mod kernels;
pub mod quadrature;
pub mod reference;
pub mod report;
pub mod representations;
pub mod spectral;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
