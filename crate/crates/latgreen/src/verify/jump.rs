//! Boundary-jump diagnostics for odd dimensions.
//!
//! Boundary values at real `w ≠ 0` are always reached by Richardson
//! extrapolation over `Im w = ε` ladders, never by quadrature at real `w`.
//! For `q = 0` the remainder is real on `(−4, 4)` (real below the spectrum
//! plus Schwarz reflection), so `Im k⁺ = Im branching⁺` is a sharp check of
//! the branching coefficient. For `q ≥ 1` the extrapolated remainder must
//! match the boundary value of `k − branching` assembled from the
//! boundary-mode branch functions.

use super::CheckReport;
use crate::error::{Error, Result};
use crate::lattice::{
    kernel_1d_closed_form, lattice_branching, lattice_branching_boundary, lattice_kernel,
    ThresholdContext,
};
use crate::quadrature::{richardson_limit, ExtrapolationLadder, TorusGrid};
use crate::series::SeriesControl;
use crate::Complex;
use std::time::Instant;

/// Compare extrapolated boundary data against the branching prediction at
/// real `w` with `|w| < 4`, `w ≠ 0`, for odd `d`.
pub fn boundary_jump_test(
    ctx: &ThresholdContext,
    n: &[i64],
    w_real: f64,
    ladder: &ExtrapolationLadder,
    grid_nodes: usize,
    tolerance: f64,
    ctl: &SeriesControl,
) -> Result<CheckReport> {
    let started = Instant::now();
    if !ctx.is_odd_dimension() {
        return Err(Error::Domain(
            "boundary_jump_test: d must be odd (two-sided even-d jumps are not tested)".into(),
        ));
    }
    if w_real == 0.0 || w_real.abs() >= 4.0 {
        return Err(Error::Domain(
            "boundary_jump_test: need 0 < |w| < 4".into(),
        ));
    }

    let offsets = ladder.offsets();
    let mut kernels = Vec::with_capacity(offsets.len());
    let mut branchings = Vec::with_capacity(offsets.len());
    let grid = TorusGrid::new(ctx.d as usize, grid_nodes)?;
    for &eps in &offsets {
        let w = Complex::new(w_real, eps);
        let z = w + ctx.threshold_value();
        let k = if ctx.d == 1 {
            kernel_1d_closed_form(z, n[0])?
        } else {
            lattice_kernel(ctx.d, z, n, &grid)?.value
        };
        kernels.push(k);
        branchings.push(lattice_branching(ctx, w, n, ctl)?);
    }
    let (k_plus, _) = richardson_limit(ladder, &kernels)?;
    let b_plus = lattice_branching_boundary(ctx, w_real, n, ctl)?;

    let residual = if ctx.q == 0 {
        // Remainder real on the real interval: Im k⁺ must equal Im b⁺.
        (k_plus.im - b_plus.im).abs()
    } else {
        let remainders: Vec<Complex> = kernels
            .iter()
            .zip(&branchings)
            .map(|(k, b)| k - b)
            .collect();
        let (r_plus, _) = richardson_limit(ladder, &remainders)?;
        ((k_plus - b_plus) - r_plus).norm()
    };

    let id = format!(
        "jump/d{}-q{}-w{}-n{:?}",
        ctx.d, ctx.q, w_real, n
    );
    Ok(CheckReport::from_run(
        &id,
        tolerance,
        offsets.len() as u64,
        residual,
        started,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctl() -> SeriesControl {
        SeriesControl {
            abs_tol: 1e-13,
            rel_tol: 1e-13,
            ..SeriesControl::default()
        }
    }

    #[test]
    fn below_spectrum_everything_real() {
        // d=1, q=0, w = −1: kernel and branching both real in the limit.
        let ctx = ThresholdContext::new(1, 0).unwrap();
        let ladder = ExtrapolationLadder::new(1e-2, 0.5, 8).unwrap();
        let report =
            boundary_jump_test(&ctx, &[0], -1.0, &ladder, 64, 1e-6, &ctl()).unwrap();
        assert!(report.passed, "residual {}", report.max_residual);
    }

    #[test]
    fn embedded_point_has_matching_imaginary_parts() {
        // d=1, q=0, w = 1: Im k⁺ = Im b⁺ = 1/√3 (density of states).
        let ctx = ThresholdContext::new(1, 0).unwrap();
        let ladder = ExtrapolationLadder::new(1e-2, 0.5, 8).unwrap();
        let report =
            boundary_jump_test(&ctx, &[0], 1.0, &ladder, 64, 1e-6, &ctl()).unwrap();
        assert!(report.passed, "residual {}", report.max_residual);
        // Direct value: branching boundary has Im = 1/sqrt(3).
        let b = lattice_branching_boundary(&ctx, 1.0, &[0], &ctl()).unwrap();
        assert!((b.im - 1.0 / 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn even_dimension_rejected() {
        let ctx = ThresholdContext::new(2, 1).unwrap();
        let ladder = ExtrapolationLadder::new(1e-2, 0.5, 8).unwrap();
        assert!(boundary_jump_test(&ctx, &[0, 0], 0.5, &ladder, 32, 1e-4, &ctl()).is_err());
    }
}
