//! Scalar special functions and the branch-cut conventions used everywhere.
//!
//! Conventions: `√w` carries positive imaginary part on `C \ [0,∞)`, and
//! `log w` is the principal branch on `C \ (−∞,0]`, so that `√(−w) = i√w`
//! for `Im w > 0` and `log(1/w) = −log w`.

mod bessel;
mod branch;
mod dilog;
mod gamma;
mod hyp;
mod moments;

pub use bessel::bessel_j;
pub use branch::{branch_log, branch_log_boundary, branch_sqrt, branch_sqrt_boundary};
pub use dilog::dilog;
pub use gamma::{gamma_half_integer, ln_gamma_half_integer, pochhammer, pochhammer_f64, HalfInteger};
pub use hyp::{chebyshev_t, gauss_2f1};
pub use moments::sphere_moment;
