//! Lattice sphere averages
//! `e(ρ,n) = (2π)^{−d} ∫_{S^{d−1}} Π_j exp(2i n_j asin(ρω_j/2))/(1−ρ²ω_j²/4)^{1/2} dS`,
//! summed through the Chebyshev/₂F₁-reduced series
//! `e(ρ,n) = 2/(2^d π^{d/2}) Σ_α Π_j (1/2−n_j)_{α_j}(1/2+n_j)_{α_j}
//!           ρ^{2|α|} / (4^{|α|} α! Γ(|α|+d/2))`,
//! valid for `|ρ| < 2`. The `cos_phase` variant (asin replaced by acos in
//! the phase) equals `(−1)^{|n|}` times the `sin_phase` value.

use super::lauricella::lauricella_sum;
use crate::error::{Error, Result};
use crate::series::SeriesControl;
use crate::specfun::{gamma_half_integer, HalfInteger};
use crate::Complex;

/// Which phase convention the average carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhaseKind {
    /// `exp(2i n_j asin(ρω_j/2))` factors.
    SinPhase,
    /// `exp(2i n_j acos(ρω_j/2))` factors; equals `(−1)^{|n|}` × sin-phase.
    CosPhase,
}

/// `e(ρ,n)` (sin phase) or its cos-phase variant, `|ρ| < 2`.
pub fn lattice_sphere_average(
    d: u32,
    rho: Complex,
    n: &[i64],
    ctl: &SeriesControl,
    kind: PhaseKind,
) -> Result<Complex> {
    if n.len() != d as usize {
        return Err(Error::Config("lattice_sphere_average: n length".into()));
    }
    if rho.norm() >= 2.0 {
        return Err(Error::Domain(format!(
            "lattice_sphere_average: |rho| = {} outside the domain |rho| < 2",
            rho.norm()
        )));
    }
    let signs = vec![1i8; d as usize];
    let series = lauricella_sum(n, &signs, rho * rho, d, ctl)?;
    let pref = 2.0
        / (2f64.powi(d as i32)
            * std::f64::consts::PI.powf(d as f64 / 2.0)
            * gamma_half_integer(HalfInteger::new(d as i64))?);
    let value = pref * series;
    match kind {
        PhaseKind::SinPhase => Ok(value),
        PhaseKind::CosPhase => {
            let parity: i64 = n.iter().map(|v| v.abs()).sum();
            Ok(if parity % 2 == 0 { value } else { -value })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{e_l, SignPattern, ThresholdContext};
    use crate::specfun::sphere_moment;
    use std::f64::consts::PI;

    fn ctl() -> SeriesControl {
        SeriesControl {
            abs_tol: 1e-14,
            rel_tol: 1e-14,
            ..SeriesControl::default()
        }
    }

    #[test]
    fn value_at_rho_zero_is_surface_measure() {
        for d in 1..=4u32 {
            let n = vec![0i64; d as usize];
            let v =
                lattice_sphere_average(d, Complex::new(0.0, 0.0), &n, &ctl(), PhaseKind::SinPhase)
                    .unwrap();
            let expect = sphere_moment(d, &vec![0u32; d as usize]).unwrap()
                / (2.0 * PI).powi(d as i32);
            assert!((v - Complex::new(expect, 0.0)).norm() < 1e-15, "d = {d}");
        }
    }

    #[test]
    fn one_dimensional_closed_form() {
        // d = 1: e(ρ,n) = cos(2n asin(ρ/2)) / (π √(1−ρ²/4)).
        for (rho, n) in [(0.6f64, 0i64), (0.6, 2), (1.4, 3), (1.8, 1)] {
            let v = lattice_sphere_average(
                1,
                Complex::new(rho, 0.0),
                &[n],
                &ctl(),
                PhaseKind::SinPhase,
            )
            .unwrap();
            let expect = (2.0 * n as f64 * (rho / 2.0).asin()).cos()
                / (PI * (1.0 - rho * rho / 4.0).sqrt());
            assert!((v.re - expect).abs() < 1e-12, "rho={rho} n={n}");
        }
    }

    #[test]
    fn elliptic_identity_with_e1() {
        // e(ρ,n) = 2 E^(1)(ρ², n) at q = 0.
        for d in 1..=3u32 {
            let ctx = ThresholdContext::new(d, 0).unwrap();
            let pat = SignPattern::canonical(&ctx);
            let n: Vec<i64> = (0..d as i64).map(|j| 1 - j).collect();
            for &r in &[0.5f64, 1.0, 1.5] {
                let rho = Complex::new(r, 0.1);
                let lhs =
                    lattice_sphere_average(d, rho, &n, &ctl(), PhaseKind::SinPhase).unwrap();
                let rhs = 2.0 * e_l(&ctx, &pat, rho * rho, &n, &ctl()).unwrap();
                assert!((lhs - rhs).norm() < 1e-13, "d={d} rho={rho}");
            }
        }
    }

    #[test]
    fn cos_phase_sign_reduction() {
        let n = [1i64, -2];
        let rho = Complex::new(0.8, 0.0);
        let s = lattice_sphere_average(2, rho, &n, &ctl(), PhaseKind::SinPhase).unwrap();
        let c = lattice_sphere_average(2, rho, &n, &ctl(), PhaseKind::CosPhase).unwrap();
        assert!((s + c).norm() < 1e-16); // |n| = 3 odd
    }

    #[test]
    fn domain_guard() {
        assert!(lattice_sphere_average(
            1,
            Complex::new(2.0, 0.0),
            &[0],
            &ctl(),
            PhaseKind::SinPhase
        )
        .is_err());
        // Near the |ρ| = 2 boundary the budget runs out loudly.
        assert!(matches!(
            lattice_sphere_average(
                1,
                Complex::new(1.97, 0.0),
                &[0],
                &ctl(),
                PhaseKind::SinPhase
            ),
            Err(crate::error::Error::ConvergenceBudget(_))
        ));
    }
}
