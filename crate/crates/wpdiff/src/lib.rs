//! Wave-packet diffraction in space and time.
//!
//! A 1D/3D toolkit for the scattering of Gaussian wave packets off finite
//! wells and barriers: exact momentum-space quadratures, long-time
//! closed-form diffraction patterns, Crank–Nicolson evolution for the
//! Schrodinger and Dirac equations, s-wave 3D scattering fields, and the
//! scenario/CLI layer that reproduces the reference figures.

pub mod asymptotic1d;
pub mod config;
pub mod error;
pub mod evolve;
pub mod model;
pub mod report;
pub mod scatter3d;
pub mod scenarios;
pub mod specfun;
pub mod stationary1d;

pub use error::{Error, Result};
