//! Numerical spectral theory of the modular surface SL(2,Z)\H.
//!
//! The Laplacian on the modular surface has a discrete spectrum of Maass
//! cusp forms embedded in a continuous spectrum spanned by the Eisenstein
//! series, and the two are tied together by the Selberg trace formula and
//! the Weyl law with its scattering correction. This crate computes all of
//! the pieces at desk scale and cross-checks them against one another:
//!
//! - [`specfun`]: the special functions everything else stands on
//!   (K-Bessel with imaginary order, complex Gamma and digamma, zeta and
//!   Dirichlet L-functions with error control);
//! - [`hypgeom`]: upper half-plane points, unimodular matrices, reduction
//!   to the fundamental domain, geodesic lengths;
//! - [`maass`]: Hejhal-style collocation for cusp-form eigenvalues and
//!   Fourier coefficients, with two-height consistency residuals;
//! - [`hecke`]: Hecke operators on computed forms, Satake parameters,
//!   L-series, Euler products, and the completed L-function;
//! - [`scattering`]: Eisenstein series by lattice sum, the scattering
//!   determinant phi(s), its logarithmic derivative on the critical line,
//!   and the winding number M(lambda);
//! - [`traceform`]: test-function pairs and every term of the trace
//!   formula, smoothed counting integrals, the heat-trace expansion, and
//!   the counting curve D(lambda);
//! - [`io`]: versioned CSV tables for eigenvalues, coefficients, length
//!   spectra, counting curves, and winding records.
//!
//! Numerical contract: every routine either returns a value whose error is
//! controlled by an explicit estimate (quadrature rule differences, series
//! tail bounds) or reports a typed [`Error`] naming the domain or
//! convergence failure; nothing silently degrades.

pub mod error;
pub mod hecke;
pub mod hypgeom;
pub mod io;
pub mod maass;
pub mod quad;
pub mod scattering;
pub mod specfun;
pub mod traceform;

pub use error::{Error, Result};
pub use num_complex::Complex64;
