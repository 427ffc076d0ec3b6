//! Lattice residue/arc functionals `φ±(τ,n)`, `ψ±(τ,n)` built from
//! `f±(σ,τ,n) = 2^{−(d−2)}(σ±σ^{−1})^{p−1}(σ∓σ^{−1})^{q−1}
//!              e'(τ(σ±σ^{−1})/2, n') e''(τ(σ∓σ^{−1})/2, n'')`,
//! with closed forms through `E^(1)(±τ², n)` and contour diagnostics.
//! Both are analytic in `τ ∈ Δ(2)` and satisfy
//! `−Δ φ±/ψ±(τ,·) = (±τ² + 4q) φ±/ψ±(τ,·)`.

use super::{
    e_l, lattice_sphere_average, PhaseKind, SignPattern, ThresholdContext,
};
use crate::continuum::SignChoice;
use crate::error::{Error, Result};
use crate::quadrature::{contour_integral, ArcContour};
use crate::series::SeriesControl;
use crate::util::{cpowi, i_pow};
use crate::Complex;

/// Which functional is requested.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum PhiPsi {
    Phi,
    Psi,
}

/// `f±(σ, τ, n)`; single-valued analytic for `σ ≠ 0` while both radial
/// arguments stay inside `Δ(2)`.
pub fn lattice_f_pm(
    ctx: &ThresholdContext,
    sign: SignChoice,
    sigma: Complex,
    tau: Complex,
    n: &[i64],
    ctl: &SeriesControl,
) -> Result<Complex> {
    let (p, q) = (ctx.p(), ctx.q);
    if p == 0 || q == 0 {
        return Err(Error::Domain("lattice_f_pm needs p >= 1 and q >= 1".into()));
    }
    if sigma.norm() == 0.0 {
        return Err(Error::Domain("lattice_f_pm: sigma = 0".into()));
    }
    if n.len() != ctx.d as usize {
        return Err(Error::Config("lattice_f_pm: n length".into()));
    }
    let s = sign.as_f64();
    let inv = sigma.inv();
    let a = sigma + s * inv;
    let b = sigma - s * inv;
    let pref = cpowi(a, p as i32 - 1) * cpowi(b, q as i32 - 1)
        / 2f64.powi(ctx.d as i32 - 2);
    let (np, npp) = n.split_at(p as usize);
    let ep = lattice_sphere_average(p, tau * a / 2.0, np, ctl, PhaseKind::SinPhase)?;
    let eq = lattice_sphere_average(q, tau * b / 2.0, npp, ctl, PhaseKind::CosPhase)?;
    Ok(pref * ep * eq)
}

/// Closed forms:
/// odd-odd `(p,q)`: `φ₊ = (4/(iπ)) E^(1)(τ²,n)`, `φ₋ = (4 i^{p−q}/(iπ)) E^(1)(−τ²,n)`, `ψ± = 0`;
/// otherwise: `φ± = 0`, `ψ₊ = 2 E^(1)(τ²,n)`, `ψ₋ = 2 i^{p−q} E^(1)(−τ²,n)`.
pub fn lattice_phi_psi(
    ctx: &ThresholdContext,
    sign: SignChoice,
    which: PhiPsi,
    tau: Complex,
    n: &[i64],
    ctl: &SeriesControl,
) -> Result<Complex> {
    let (p, q) = (ctx.p(), ctx.q);
    if p == 0 || q == 0 {
        return Err(Error::Domain("lattice_phi_psi needs p >= 1 and q >= 1".into()));
    }
    if tau.norm() >= 2.0 {
        return Err(Error::Domain(format!(
            "lattice_phi_psi: |tau| = {} outside Delta(2)",
            tau.norm()
        )));
    }
    let odd_odd = p % 2 == 1 && q % 2 == 1;
    let zero = Complex::new(0.0, 0.0);
    let pattern = SignPattern::canonical(ctx);
    let e1 = |arg: Complex| e_l(ctx, &pattern, arg, n, ctl);
    let phase = i_pow(p as i64 - q as i64);
    match (which, odd_odd, sign) {
        (PhiPsi::Phi, false, _) => Ok(zero),
        (PhiPsi::Psi, true, _) => Ok(zero),
        (PhiPsi::Phi, true, SignChoice::Plus) => {
            Ok(Complex::new(0.0, -4.0 / std::f64::consts::PI) * e1(tau * tau)?)
        }
        (PhiPsi::Phi, true, SignChoice::Minus) => Ok(Complex::new(
            0.0,
            -4.0 / std::f64::consts::PI,
        ) * phase
            * e1(-(tau * tau))?),
        (PhiPsi::Psi, false, SignChoice::Plus) => Ok(2.0 * e1(tau * tau)?),
        (PhiPsi::Psi, false, SignChoice::Minus) => Ok(2.0 * phase * e1(-(tau * tau))?),
    }
}

/// Defining contour integrals (diagnostic):
/// `φ± = (2πi)^{−1} ∮_{|σ|=1} f±/σ dσ` and
/// `ψ± = ∫_{Γ(1)} (f± − φ±)/σ dσ`, with the subtracted `φ±` taken from its
/// own contour so the route is independent of the closed forms.
pub fn lattice_phi_psi_contour(
    ctx: &ThresholdContext,
    sign: SignChoice,
    which: PhiPsi,
    tau: Complex,
    n: &[i64],
    ctl: &SeriesControl,
    nodes: usize,
) -> Result<Complex> {
    let circle = ArcContour::unit_circle(nodes.max(8));
    let mut failure = None;
    let phi_int = contour_integral(&circle, |s| {
        match lattice_f_pm(ctx, sign, s, tau, n, ctl) {
            Ok(v) => v / s,
            Err(e) => {
                failure = Some(e);
                Complex::new(f64::NAN, 0.0)
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let phi = phi_int? / Complex::new(0.0, 2.0 * std::f64::consts::PI);
    if which == PhiPsi::Phi {
        return Ok(phi);
    }
    let arc = ArcContour::unit_quarter(nodes.max(8));
    let mut failure = None;
    let psi_int = contour_integral(&arc, |s| {
        match lattice_f_pm(ctx, sign, s, tau, n, ctl) {
            Ok(v) => (v - phi) / s,
            Err(e) => {
                failure = Some(e);
                Complex::new(f64::NAN, 0.0)
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    psi_int
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::discrete_laplacian_of;
    use std::f64::consts::PI;

    fn ctl() -> SeriesControl {
        SeriesControl {
            abs_tol: 1e-14,
            rel_tol: 1e-14,
            ..SeriesControl::default()
        }
    }

    #[test]
    fn odd_odd_phi_value_at_zero() {
        // d=2, q=1, n=0, τ=0: (4/(iπ)) · i/(4π) = 1/π².
        let ctx = ThresholdContext::new(2, 1).unwrap();
        let v = lattice_phi_psi(
            &ctx,
            SignChoice::Plus,
            PhiPsi::Phi,
            Complex::new(0.0, 0.0),
            &[0, 0],
            &ctl(),
        )
        .unwrap();
        assert!((v - Complex::new(1.0 / (PI * PI), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn parity_exclusivity() {
        // (3,1) is even-odd: φ vanishes; (2,1) is odd-odd: ψ vanishes.
        let ctx31 = ThresholdContext::new(3, 1).unwrap();
        let v = lattice_phi_psi(
            &ctx31,
            SignChoice::Plus,
            PhiPsi::Phi,
            Complex::new(0.4, 0.0),
            &[0, 1, 0],
            &ctl(),
        )
        .unwrap();
        assert_eq!(v, Complex::new(0.0, 0.0));
        let ctx21 = ThresholdContext::new(2, 1).unwrap();
        let v = lattice_phi_psi(
            &ctx21,
            SignChoice::Plus,
            PhiPsi::Psi,
            Complex::new(0.4, 0.0),
            &[1, 0],
            &ctl(),
        )
        .unwrap();
        assert_eq!(v, Complex::new(0.0, 0.0));
    }

    #[test]
    fn closed_forms_match_contours() {
        let tau = Complex::new(0.3, 0.0);
        // Odd-odd (2,1): φ±.
        let ctx = ThresholdContext::new(2, 1).unwrap();
        for sign in [SignChoice::Plus, SignChoice::Minus] {
            for which in [PhiPsi::Phi, PhiPsi::Psi] {
                let closed =
                    lattice_phi_psi(&ctx, sign, which, tau, &[1, 0], &ctl()).unwrap();
                let contour =
                    lattice_phi_psi_contour(&ctx, sign, which, tau, &[1, 0], &ctl(), 128)
                        .unwrap();
                assert!(
                    (closed - contour).norm() < 1e-11,
                    "(2,1) {sign:?} {which:?}: {closed} vs {contour}"
                );
            }
        }
        // Even-odd (3,1): ψ±.
        let ctx = ThresholdContext::new(3, 1).unwrap();
        for sign in [SignChoice::Plus, SignChoice::Minus] {
            for which in [PhiPsi::Phi, PhiPsi::Psi] {
                let closed =
                    lattice_phi_psi(&ctx, sign, which, tau, &[1, 0, -1], &ctl()).unwrap();
                let contour = lattice_phi_psi_contour(
                    &ctx,
                    sign,
                    which,
                    tau,
                    &[1, 0, -1],
                    &ctl(),
                    128,
                )
                .unwrap();
                assert!(
                    (closed - contour).norm() < 1e-11,
                    "(3,1) {sign:?} {which:?}: {closed} vs {contour}"
                );
            }
        }
    }

    #[test]
    fn psi_eigenequation() {
        // −Δ ψ₊(τ,·)[n] = (τ² + 4q) ψ₊(τ,n) at d=3, q=1, τ=0.4.
        let ctx = ThresholdContext::new(3, 1).unwrap();
        let tau = Complex::new(0.4, 0.0);
        for n in [[0i64, 0, 0], [1, -1, 0], [0, 1, 1]] {
            let lap = discrete_laplacian_of(
                |m| lattice_phi_psi(&ctx, SignChoice::Plus, PhiPsi::Psi, tau, m, &ctl()),
                &n,
            )
            .unwrap();
            let center =
                lattice_phi_psi(&ctx, SignChoice::Plus, PhiPsi::Psi, tau, &n, &ctl()).unwrap();
            let resid = -lap - (tau * tau + 4.0) * center;
            assert!(resid.norm() < 1e-12, "n = {n:?}: {}", resid.norm());
        }
    }

    #[test]
    fn f_preconditions() {
        let ctx = ThresholdContext::new(2, 0).unwrap();
        assert!(lattice_f_pm(
            &ctx,
            SignChoice::Plus,
            Complex::new(1.0, 0.0),
            Complex::new(0.1, 0.0),
            &[0, 0],
            &ctl()
        )
        .is_err());
        let ctx = ThresholdContext::new(2, 1).unwrap();
        assert!(lattice_f_pm(
            &ctx,
            SignChoice::Plus,
            Complex::new(0.0, 0.0),
            Complex::new(0.1, 0.0),
            &[0, 0],
            &ctl()
        )
        .is_err());
    }
}
