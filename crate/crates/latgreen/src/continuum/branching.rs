//! Branching part of `k_γ(z,x)` and the decomposition into branching plus
//! analytic remainder:
//! odd `d`:  `iπ(√z)^{d−2} E(z(x'²−x''²))`,
//! even `d`: `−(√z)^{d−2}(log z) E(z(x'²−x''²))` with `(√z)^{d−2}` an exact
//! integer power of `z`.

use super::{e_entire, BranchForm, BranchingDecomposition, QuadValue, Signature, SpacePoint};
use crate::error::Result;
use crate::series::SeriesControl;
use crate::specfun::{branch_log, branch_log_boundary, branch_sqrt, branch_sqrt_boundary};
use crate::util::cpowi;
use crate::Complex;

fn split_square(sig: Signature, x: &SpacePoint) -> Result<Complex> {
    let (xp, xpp) = x.split(sig)?;
    let sp: Complex = xp.iter().map(|c| c * c).sum();
    let sq: Complex = xpp.iter().map(|c| c * c).sum();
    Ok(sp - sq)
}

fn branching_from_parts(
    sig: Signature,
    z: Complex,
    sqrt_z: Complex,
    log_z: Complex,
    x: &SpacePoint,
    ctl: &SeriesControl,
) -> Result<Complex> {
    let d = sig.d() as i32;
    let e = e_entire(sig, z * split_square(sig, x)?, ctl)?;
    if d % 2 == 1 {
        Ok(Complex::new(0.0, std::f64::consts::PI) * cpowi(sqrt_z, d - 2) * e)
    } else {
        Ok(-cpowi(z, (d - 2) / 2) * log_z * e)
    }
}

/// Branching part for `Im z ≠ 0` (both branch functions defined there).
pub fn continuum_branching(
    sig: Signature,
    z: Complex,
    x: &SpacePoint,
    ctl: &SeriesControl,
) -> Result<Complex> {
    let d = sig.d();
    let sqrt_z = if d % 2 == 1 {
        branch_sqrt(z)?
    } else {
        Complex::new(0.0, 0.0) // unused for even d
    };
    let log_z = if d % 2 == 0 {
        branch_log(z)?
    } else {
        Complex::new(0.0, 0.0)
    };
    branching_from_parts(sig, z, sqrt_z, log_z, x, ctl)
}

/// Branching part on the upper boundary `z = w + i0`, `w` real nonzero.
pub fn continuum_branching_boundary(
    sig: Signature,
    w: f64,
    x: &SpacePoint,
    ctl: &SeriesControl,
) -> Result<Complex> {
    let z = Complex::new(w, 0.0);
    let sqrt_z = branch_sqrt_boundary(z);
    let log_z = branch_log_boundary(z)?;
    branching_from_parts(sig, z, sqrt_z, log_z, x, ctl)
}

/// Kernel value split as `branching + remainder`.
pub fn decompose_continuum(
    sig: Signature,
    z: Complex,
    x: &SpacePoint,
    gamma: f64,
    ctl: &SeriesControl,
) -> Result<BranchingDecomposition> {
    Ok(decompose_continuum_full(sig, z, x, gamma, ctl)?.0)
}

/// Decomposition together with the kernel quadrature record.
pub fn decompose_continuum_full(
    sig: Signature,
    z: Complex,
    x: &SpacePoint,
    gamma: f64,
    ctl: &SeriesControl,
) -> Result<(BranchingDecomposition, QuadValue)> {
    let kernel = quadrature_kernel(sig, z, x, gamma, ctl)?;
    let branching = continuum_branching(sig, z, x, ctl)?;
    Ok((
        BranchingDecomposition {
            branching_value: branching,
            remainder_value: kernel.value - branching,
            form: BranchForm::for_dimension(sig.d()),
        },
        kernel,
    ))
}

fn quadrature_kernel(
    sig: Signature,
    z: Complex,
    x: &SpacePoint,
    gamma: f64,
    ctl: &SeriesControl,
) -> Result<QuadValue> {
    super::continuum_kernel(sig, z, x, gamma, ctl)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn ctl() -> SeriesControl {
        SeriesControl {
            abs_tol: 1e-13,
            rel_tol: 1e-13,
            ..SeriesControl::default()
        }
    }

    #[test]
    fn d1_elliptic_boundary_value() {
        // (1,0), z = −1, x = 0: iπ (i)^{-1} E(0) = π/(2π) = 1/2, matching the
        // whole-line kernel 1/(2√1) of −d²/dx² at z = −1.
        let sig = Signature::new(1, 0).unwrap();
        let v = continuum_branching_boundary(sig, -1.0, &SpacePoint::zero(1), &ctl()).unwrap();
        assert!((v - Complex::new(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn d2_elliptic_boundary_value() {
        // (2,0), z = −1 + i0: −(iπ)·E(0) = −(iπ)/(4π) = −i/4.
        let sig = Signature::new(2, 0).unwrap();
        let v = continuum_branching_boundary(sig, -1.0, &SpacePoint::zero(2), &ctl()).unwrap();
        assert!((v - Complex::new(0.0, -0.25)).norm() < 1e-15);
        // Richardson route onto the same boundary value.
        let ladder = crate::quadrature::ExtrapolationLadder::new(1e-2, 0.5, 8).unwrap();
        let samples: Vec<Complex> = ladder
            .offsets()
            .iter()
            .map(|&e| {
                continuum_branching(sig, Complex::new(-1.0, e), &SpacePoint::zero(2), &ctl())
                    .unwrap()
            })
            .collect();
        let (lim, _) = crate::quadrature::richardson_limit(&ladder, &samples).unwrap();
        assert!((lim - v).norm() < 1e-9);
    }

    #[test]
    fn d2_hyperbolic_at_i() {
        // (1,1), z = i, x = 0: −(log i)·E(0) = −(iπ/2)(i/(4π)) = 1/8.
        let sig = Signature::new(1, 1).unwrap();
        let v = continuum_branching(sig, Complex::new(0.0, 1.0), &SpacePoint::zero(2), &ctl())
            .unwrap();
        assert!((v - Complex::new(0.125, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn decomposition_is_consistent() {
        let sig = Signature::new(1, 0).unwrap();
        let z = Complex::new(0.2, 0.5);
        let x = SpacePoint::zero(1);
        let (dec, kernel) = decompose_continuum_full(sig, z, &x, 1.0, &ctl()).unwrap();
        assert_eq!(dec.form, BranchForm::SqrtBranch);
        assert!(
            (dec.branching_value + dec.remainder_value - kernel.value).norm() < 1e-15
        );
        let _ = PI;
    }
}
