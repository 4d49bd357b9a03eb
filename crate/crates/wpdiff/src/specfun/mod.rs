//! Special functions and numerical kernels: Faddeeva/erfc, spherical Bessel
//! functions, complex tridiagonal solvers, Gauss–Legendre rules, and the
//! Gaussian-kernel oscillatory integrator used by the packet quadratures.

pub mod bessel;
pub mod faddeeva;
pub mod gauss_kernel;
pub mod quadrature;
pub mod tridiag;

pub use bessel::{logderiv_ratio, spherical_j, spherical_j_logderiv};
pub use faddeeva::{erfc, erfc_real, erfcx, wofz};
pub use gauss_kernel::integrate_gauss_kernel;
pub use quadrature::{gauss_legendre, integrate_composite};
pub use tridiag::solve_tridiagonal;
