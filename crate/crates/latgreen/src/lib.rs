//! Resolvent kernels near spectral thresholds.
//!
//! This crate evaluates the convolution kernel of the resolvent of the
//! discrete Laplacian on `Z^d` and of the ultra-hyperbolic model operator
//! on `R^d`, together with the explicit threshold-branching functions
//! (Lauricella-type multi-index series, Bessel-type entire functions,
//! sphere averages) that describe how the kernels branch in the spectral
//! parameter. A verification layer binds every closed-form identity to a
//! pass/fail check, and a CLI exposes kernel evaluation, branching
//! decomposition and the verification suites.
//!
//! Layout:
//! * [`specfun`] — scalar special functions and branch-cut conventions
//! * [`quadrature`] — torus trapezoid, composite Gauss, contours, Richardson
//! * [`continuum`] — the ultra-hyperbolic model operator `□_{p,q}`
//! * [`lattice`] — the discrete Laplacian on `Z^d`
//! * [`verify`] — identity suites, ray-limit and boundary-jump diagnostics
//! * [`cli`] — command-line front end (CSV/JSON emission)

pub mod cli;
pub mod continuum;
pub mod error;
pub mod lattice;
pub mod quadrature;
pub mod series;
pub mod specfun;
pub mod util;
pub mod verify;

pub use error::{Error, Result};
pub use series::SeriesControl;

/// The universal complex scalar carrier.
pub type Complex = num_complex::Complex64;
