//! Branching part of `k(w+4q, n)` and its decomposition:
//! odd `d`:  `iπ(√w)^{d−2} Σ_l E^(l)(w,n)`,
//! even `d`: `−(√w)^{d−2}(log w) Σ_l E^(l)(w,n)`,
//! on the upper half-plane `Im w > 0` with `|w| < 4`.

use super::{e_sum, lattice_kernel, KernelSample, ThresholdContext};
use crate::continuum::{BranchForm, BranchingDecomposition};
use crate::error::{Error, Result};
use crate::quadrature::TorusGrid;
use crate::series::SeriesControl;
use crate::specfun::{branch_log, branch_log_boundary, branch_sqrt, branch_sqrt_boundary};
use crate::util::cpowi;
use crate::Complex;

fn branching_from_parts(
    ctx: &ThresholdContext,
    w: Complex,
    sqrt_w: Complex,
    log_w: Complex,
    n: &[i64],
    ctl: &SeriesControl,
) -> Result<Complex> {
    let d = ctx.d as i32;
    let coeff = e_sum(ctx, w, n, ctl)?;
    if d % 2 == 1 {
        Ok(Complex::new(0.0, std::f64::consts::PI) * cpowi(sqrt_w, d - 2) * coeff)
    } else {
        Ok(-cpowi(w, (d - 2) / 2) * log_w * coeff)
    }
}

/// Branching part for `Im w > 0`, `|w| < 4`.
pub fn lattice_branching(
    ctx: &ThresholdContext,
    w: Complex,
    n: &[i64],
    ctl: &SeriesControl,
) -> Result<Complex> {
    if w.im <= 0.0 {
        return Err(Error::Domain(
            "lattice_branching: Im w must be positive (upper half-plane contract)".into(),
        ));
    }
    let sqrt_w = if ctx.is_odd_dimension() {
        branch_sqrt(w)?
    } else {
        Complex::new(0.0, 0.0)
    };
    let log_w = if ctx.is_odd_dimension() {
        Complex::new(0.0, 0.0)
    } else {
        branch_log(w)?
    };
    branching_from_parts(ctx, w, sqrt_w, log_w, n, ctl)
}

/// Branching part on the upper boundary `w + i0`, `w` real nonzero.
pub fn lattice_branching_boundary(
    ctx: &ThresholdContext,
    w: f64,
    n: &[i64],
    ctl: &SeriesControl,
) -> Result<Complex> {
    if w == 0.0 {
        return Err(Error::Domain("lattice_branching_boundary: w = 0".into()));
    }
    let wz = Complex::new(w, 0.0);
    let sqrt_w = branch_sqrt_boundary(wz);
    let log_w = branch_log_boundary(wz)?;
    branching_from_parts(ctx, wz, sqrt_w, log_w, n, ctl)
}

/// `k(w+4q, n)` split as `branching + remainder`.
pub fn decompose_lattice(
    ctx: &ThresholdContext,
    w: Complex,
    n: &[i64],
    grid: &TorusGrid,
    ctl: &SeriesControl,
) -> Result<BranchingDecomposition> {
    Ok(decompose_lattice_full(ctx, w, n, grid, ctl)?.0)
}

/// Decomposition together with the kernel sample.
pub fn decompose_lattice_full(
    ctx: &ThresholdContext,
    w: Complex,
    n: &[i64],
    grid: &TorusGrid,
    ctl: &SeriesControl,
) -> Result<(BranchingDecomposition, KernelSample)> {
    if w.im <= 0.0 {
        return Err(Error::Domain(
            "decompose_lattice: Im w must be positive".into(),
        ));
    }
    let z = w + ctx.threshold_value();
    let kernel = lattice_kernel(ctx.d, z, n, grid)?;
    let branching = lattice_branching(ctx, w, n, ctl)?;
    Ok((
        BranchingDecomposition {
            branching_value: branching,
            remainder_value: kernel.value - branching,
            form: BranchForm::for_dimension(ctx.d),
        },
        kernel,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::kernel_1d_closed_form;
    use crate::specfun::chebyshev_t;

    fn ctl() -> SeriesControl {
        SeriesControl {
            abs_tol: 1e-14,
            rel_tol: 1e-14,
            ..SeriesControl::default()
        }
    }

    #[test]
    fn even_d_is_plain_log_times_sum() {
        // d=2, q=1, n=0, w = 0.1i: the (√w)^0 factor is 1 exactly.
        let ctx = ThresholdContext::new(2, 1).unwrap();
        let w = Complex::new(0.0, 0.1);
        let b = lattice_branching(&ctx, w, &[0, 0], &ctl()).unwrap();
        let expect = -branch_log(w).unwrap() * e_sum(&ctx, w, &[0, 0], &ctl()).unwrap();
        assert!((b - expect).norm() < 1e-16);
    }

    #[test]
    fn parity_tag() {
        let grid = TorusGrid::new(3, 16).unwrap();
        let ctx = ThresholdContext::new(3, 1).unwrap();
        let w = Complex::new(0.2, 0.4);
        let (dec, _) = decompose_lattice_full(&ctx, w, &[0, 0, 0], &grid, &ctl()).unwrap();
        assert_eq!(dec.form, BranchForm::SqrtBranch);
        let grid = TorusGrid::new(2, 16).unwrap();
        let ctx = ThresholdContext::new(2, 1).unwrap();
        let (dec, _) = decompose_lattice_full(&ctx, w, &[0, 0], &grid, &ctl()).unwrap();
        assert_eq!(dec.form, BranchForm::LogBranch);
    }

    #[test]
    fn decomposition_sums_back() {
        let grid = TorusGrid::new(2, 32).unwrap();
        let ctx = ThresholdContext::new(2, 1).unwrap();
        let w = Complex::new(0.3, 0.5);
        let (dec, kernel) = decompose_lattice_full(&ctx, w, &[1, 0], &grid, &ctl()).unwrap();
        assert!(
            (dec.branching_value + dec.remainder_value - kernel.value).norm() < 1e-16
        );
    }

    #[test]
    fn one_dimensional_remainder_closed_form() {
        // d=1, q=0: the analytic remainder is −U_{|n|−1}(1−w/2)/2 with U the
        // Chebyshev polynomial of the second kind (U_{−1} = 0), derived from
        // the residue closed form. Moderate Im w keeps quadrature error tiny.
        let ctx = ThresholdContext::new(1, 0).unwrap();
        let w = Complex::new(0.3, 0.8);
        for n in [0i64, 1, 2, 3] {
            let k = kernel_1d_closed_form(w, n).unwrap();
            let b = lattice_branching(&ctx, w, &[n], &ctl()).unwrap();
            let remainder = k - b;
            // U_{m}(x) via U = (T' relation): use U_m(x) = sin((m+1)t)/sin t
            // with x = cos t; here via the recurrence from T: U_0 = 1,
            // U_1 = 2x, U_{m+1} = 2x U_m − U_{m−1}. Real x only in tests,
            // so extend by the same recurrence on complex values.
            let x = Complex::new(1.0, 0.0) - w / 2.0;
            let expect = if n == 0 {
                Complex::new(0.0, 0.0)
            } else {
                let mut u_prev = Complex::new(1.0, 0.0);
                let mut u_cur = 2.0 * x;
                for _ in 2..n {
                    let nx = 2.0 * x * u_cur - u_prev;
                    u_prev = u_cur;
                    u_cur = nx;
                }
                let u = if n == 1 { u_prev } else { u_cur };
                -u / 2.0
            };
            assert!(
                (remainder - expect).norm() < 1e-12,
                "n = {n}: remainder {remainder} vs {expect}"
            );
        }
        let _ = chebyshev_t(2, 0.3);
    }

    #[test]
    fn boundary_values_match_upper_limits() {
        let ctx = ThresholdContext::new(1, 0).unwrap();
        // w < 0: branching is real (below the spectrum).
        let b = lattice_branching_boundary(&ctx, -1.0, &[0], &ctl()).unwrap();
        assert!(b.im.abs() < 1e-15);
        // Approaching from above converges to the boundary value.
        let b_eps = lattice_branching(&ctx, Complex::new(-1.0, 1e-9), &[0], &ctl()).unwrap();
        assert!((b - b_eps).norm() < 1e-7);
        assert!(lattice_branching(&ctx, Complex::new(0.5, 0.0), &[0], &ctl()).is_err());
    }
}
