//! Dispersion-relation-preserving (DRP) finite-difference schemes for linear
//! advection: coefficient synthesis, discrete dispersion and group-velocity
//! analysis, spurious-caustic detection, and the two-wave-packet error
//! focusing experiment.
//!
//! The crate is organised bottom-up:
//!
//! * [`scheme`] builds the antisymmetric stencil coefficients by least squares.
//! * [`dispersion`] evaluates phase, damping and group velocity and scans for
//!   stationary points of the group velocity.
//! * [`caustic_algebra`] is the Chebyshev formulation of the same condition in
//!   the variable `theta = cos(phi)`.
//! * [`wavepacket`] covers the analytic error model and the explicit stepper.
//! * [`config`], [`discrepancy`] and [`commands`] back the command-line tool.
//!
//! Grid sweeps run on rayon when the `parallel` feature is enabled (the
//! default) and sequentially otherwise; results are identical either way.

pub mod caustic_algebra;
pub mod commands;
pub mod config;
pub mod discrepancy;
pub mod dispersion;
mod error;
pub mod io;
pub mod linalg;
pub mod par;
pub mod quadrature;
pub mod scheme;
pub mod wavepacket;

pub use error::{Error, Result};
pub use scheme::SchemeCoefficients;
