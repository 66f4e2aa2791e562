//! Special functions underpinning the spectral computations: complex Gamma
//! and digamma, Riemann/Hurwitz zeta with analytic continuation, Dirichlet
//! characters with their L-functions, and the modified Bessel function of
//! imaginary order that carries the Fourier expansion of automorphic
//! eigenfunctions.

pub(crate) mod bessel;
pub(crate) mod dirichlet;
pub(crate) mod gamma;
pub(crate) mod zeta;

pub use bessel::{bessel_k_imag, bessel_k_imag_scaled};
pub use dirichlet::{dirichlet_l, DirichletCharacter};
pub use gamma::{digamma, gamma_complex, ln_gamma};
pub use zeta::{hurwitz_zeta, zeta, zeta_log_derivative};
pub(crate) use zeta::{z_smooth, z_smooth_deriv};
