//! Ray-limit diagnostics for the branching theorems.
//!
//! The analytic remainder `k − branching` must have ray-independent limits
//! as `w → 0` along rays `arg w = φ ∈ (0, π)`, and must stay bounded where
//! the kernel itself diverges. A negative control scales the branching
//! coefficient (perturbation ≠ 1), which re-injects the divergence into
//! the remainder and must blow up the extrapolation diagnostics.

use crate::continuum::{
    continuum_branching, continuum_kernel, Signature, SpacePoint,
};
use crate::error::{Error, Result};
use crate::lattice::{
    kernel_1d_closed_form, lattice_branching, lattice_kernel_adaptive, ThresholdContext,
};
use crate::quadrature::{richardson_limit, ExtrapolationLadder};
use crate::series::SeriesControl;
use crate::Complex;

/// What the harness drives toward its threshold.
#[derive(Clone, Debug)]
pub enum RayTarget {
    Lattice {
        ctx: ThresholdContext,
        n: Vec<i64>,
    },
    Continuum {
        sig: Signature,
        x: SpacePoint,
        gamma: f64,
    },
}

/// Per-ray extrapolated limits of the remainder plus divergence gauges.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct RayLimitReport {
    /// Ray angles in radians, strictly inside (0, π).
    pub rays: Vec<f64>,
    /// Extrapolated remainder limit per ray.
    pub limits: Vec<Complex>,
    /// Max pairwise distance between per-ray limits.
    pub cross_ray_spread: f64,
    /// Growth of |kernel − limit| from the first to the last rung,
    /// maximized over rays: the kernel's own divergence rate gauge.
    pub kernel_divergence_indicator: f64,
    /// Max per-ray Richardson last-correction magnitude: the remainder's
    /// non-smoothness gauge (what a negative control inflates).
    pub remainder_divergence_indicator: f64,
}

fn kernel_on_ray(
    target: &RayTarget,
    w: Complex,
    ctl: &SeriesControl,
) -> Result<Complex> {
    match target {
        RayTarget::Lattice { ctx, n } => {
            let z = w + ctx.threshold_value();
            if ctx.d == 1 {
                kernel_1d_closed_form(z, n[0])
            } else {
                let (tol, cap) = match ctx.d {
                    2 => (1e-9, 4096),
                    3 => (1e-8, 1024),
                    _ => (1e-7, 64),
                };
                Ok(lattice_kernel_adaptive(ctx.d, z, n, tol, 32, cap)?.value)
            }
        }
        RayTarget::Continuum { sig, x, gamma } => {
            let quad_ctl = SeriesControl {
                abs_tol: 1e-9,
                ..*ctl
            };
            Ok(continuum_kernel(*sig, w, x, *gamma, &quad_ctl)?.value)
        }
    }
}

fn branching_on_ray(
    target: &RayTarget,
    w: Complex,
    ctl: &SeriesControl,
) -> Result<Complex> {
    match target {
        RayTarget::Lattice { ctx, n } => lattice_branching(ctx, w, n, ctl),
        RayTarget::Continuum { sig, x, .. } => continuum_branching(*sig, w, x, ctl),
    }
}

/// Run the ray-limit test. `perturbation = 1` is the genuine test; any
/// other value is a negative control.
pub fn ray_limit_test(
    target: &RayTarget,
    rays: &[f64],
    ladder: &ExtrapolationLadder,
    perturbation: f64,
    ctl: &SeriesControl,
) -> Result<RayLimitReport> {
    if rays.is_empty() {
        return Err(Error::Config("ray_limit_test: no rays".into()));
    }
    for &phi in rays {
        if !(phi > 0.0 && phi < std::f64::consts::PI) {
            return Err(Error::Config(format!(
                "ray angle {phi} rad outside (0, pi)"
            )));
        }
    }
    let offsets = ladder.offsets();
    let mut limits = Vec::with_capacity(rays.len());
    let mut kernel_indicator = 0.0f64;
    let mut remainder_indicator = 0.0f64;

    for &phi in rays {
        let mut kernels = Vec::with_capacity(offsets.len());
        let mut remainders = Vec::with_capacity(offsets.len());
        for &eps in &offsets {
            let w = Complex::from_polar(eps, phi);
            let k = kernel_on_ray(target, w, ctl)?;
            let b = branching_on_ray(target, w, ctl)?;
            kernels.push(k);
            remainders.push(k - perturbation * b);
        }
        let (limit, correction) = richardson_limit(ladder, &remainders)?;
        let first = (kernels[0] - limit).norm();
        let last = (kernels[kernels.len() - 1] - limit).norm();
        let growth = if first > 1e-300 {
            last / first
        } else {
            f64::INFINITY
        };
        kernel_indicator = kernel_indicator.max(growth);
        remainder_indicator = remainder_indicator.max(correction);
        limits.push(limit);
    }

    let mut spread = 0.0f64;
    for i in 0..limits.len() {
        for j in i + 1..limits.len() {
            spread = spread.max((limits[i] - limits[j]).norm());
        }
    }
    Ok(RayLimitReport {
        rays: rays.to_vec(),
        limits,
        cross_ray_spread: spread,
        kernel_divergence_indicator: kernel_indicator,
        remainder_divergence_indicator: remainder_indicator,
    })
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
    fn one_dimensional_lattice_rays_agree() {
        let target = RayTarget::Lattice {
            ctx: ThresholdContext::new(1, 0).unwrap(),
            n: vec![0],
        };
        let ladder = ExtrapolationLadder::new(0.5, 0.65, 8).unwrap();
        let rays = [PI / 6.0, PI / 2.0, 5.0 * PI / 6.0];
        let genuine = ray_limit_test(&target, &rays, &ladder, 1.0, &ctl()).unwrap();
        assert!(
            genuine.cross_ray_spread < 1e-5,
            "spread {}",
            genuine.cross_ray_spread
        );
        // Kernel diverges like |w|^{-1/2}.
        let predicted = (ladder.base_offset / ladder.offsets()[7]).sqrt();
        let ratio = genuine.kernel_divergence_indicator / predicted;
        assert!(
            (0.5..2.0).contains(&ratio),
            "kernel growth {} vs predicted {predicted}",
            genuine.kernel_divergence_indicator
        );
        // Negative control: scaled branching re-injects the divergence.
        let control = ray_limit_test(&target, &rays, &ladder, 1.1, &ctl()).unwrap();
        assert!(
            control.remainder_divergence_indicator
                >= 100.0 * genuine.remainder_divergence_indicator,
            "control {} vs genuine {}",
            control.remainder_divergence_indicator,
            genuine.remainder_divergence_indicator
        );
    }

    #[test]
    fn ray_angles_validated() {
        let target = RayTarget::Lattice {
            ctx: ThresholdContext::new(1, 0).unwrap(),
            n: vec![0],
        };
        let ladder = ExtrapolationLadder::new(0.5, 0.65, 8).unwrap();
        assert!(ray_limit_test(&target, &[0.0], &ladder, 1.0, &ctl()).is_err());
        assert!(ray_limit_test(&target, &[], &ladder, 1.0, &ctl()).is_err());
    }
}
