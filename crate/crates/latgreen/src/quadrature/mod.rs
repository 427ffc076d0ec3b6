//! Deterministic numerical-integration primitives: periodic trapezoid on
//! `T^d`, composite Gauss–Legendre on segments, contour rules on circles
//! and arcs, and Richardson extrapolation for boundary limits.
//!
//! All reductions run in a fixed documented order (dimension-major,
//! node-ascending) with compensated accumulation, so outputs are stable
//! across runs and thread counts.

mod contour;
mod gauss;
mod richardson;
mod torus;

pub use contour::{contour_integral, ArcContour};
pub use gauss::{gauss_legendre, gauss_segment, gauss_segment_estimate};
pub use richardson::{richardson_limit, ExtrapolationLadder};
pub use torus::{periodic_trapezoid, TorusGrid};
