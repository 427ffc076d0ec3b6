//! The residue and arc functionals of `f±(σ,ζ)/σ` that carry the branching
//! coefficients, with their closed forms in terms of `E`.
//!
//! `φ±(ζ) = (2πi)^{−1} ∮_{|σ|=1} f±(σ,ζ)/σ dσ` survives exactly for
//! odd-odd signatures; `ψ±(ζ) = ∫_{Γ(1)} (f± − φ±)/σ dσ` survives
//! otherwise. The contour variants exist as diagnostics against the
//! closed forms.

use super::{e_entire, sphere_average_e, ParityClass, SignChoice, Signature};
use crate::error::{Error, Result};
use crate::quadrature::{contour_integral, ArcContour};
use crate::series::SeriesControl;
use crate::util::{cpowi, i_pow};
use crate::Complex;

/// `f±(σ,ζ) = 2^{−(d−2)} (σ±σ^{−1})^{p−1} (σ∓σ^{−1})^{q−1}
///            e'((σ±σ^{−1})ζ'/2) e''((σ∓σ^{−1})ζ''/2)`.
pub fn f_pm(
    sig: Signature,
    sign: SignChoice,
    sigma: Complex,
    zeta: &[Complex],
    ctl: &SeriesControl,
) -> Result<Complex> {
    if sig.p == 0 || sig.q == 0 {
        return Err(Error::Domain("f_pm needs p >= 1 and q >= 1".into()));
    }
    if sigma.norm() == 0.0 {
        return Err(Error::Domain("f_pm: sigma = 0".into()));
    }
    assert_eq!(zeta.len(), sig.d() as usize, "zeta must have length d");
    let s = sign.as_f64();
    let inv = sigma.inv();
    let a = sigma + s * inv;
    let b = sigma - s * inv;
    let d = sig.d();
    let pref = cpowi(a, sig.p as i32 - 1) * cpowi(b, sig.q as i32 - 1)
        / 2f64.powi(d as i32 - 2);

    let (zp, zpp) = zeta.split_at(sig.p as usize);
    let argp: Vec<Complex> = zp.iter().map(|&z| a * z / 2.0).collect();
    let argq: Vec<Complex> = zpp.iter().map(|&z| b * z / 2.0).collect();
    let ep = sphere_average_e(sig.p, &argp, ctl)?;
    let eq = sphere_average_e(sig.q, &argq, ctl)?;
    Ok(pref * ep * eq)
}

fn split_squares(sig: Signature, zeta: &[Complex]) -> (Complex, Complex) {
    let (zp, zpp) = zeta.split_at(sig.p as usize);
    let sp: Complex = zp.iter().map(|z| z * z).sum();
    let sq: Complex = zpp.iter().map(|z| z * z).sum();
    (sp, sq)
}

/// Closed form: for odd-odd signature `φ₊ = (4/(iπ)) E(ζ'²−ζ''²)` and
/// `φ₋ = (4 i^{p−q}/(iπ)) E(ζ''²−ζ'²)`; zero otherwise.
pub fn phi_pm(
    sig: Signature,
    sign: SignChoice,
    zeta: &[Complex],
    ctl: &SeriesControl,
) -> Result<Complex> {
    if sig.p == 0 || sig.q == 0 {
        return Err(Error::Domain("phi_pm needs p >= 1 and q >= 1".into()));
    }
    assert_eq!(zeta.len(), sig.d() as usize);
    if sig.parity_class() != ParityClass::OddOdd {
        return Ok(Complex::new(0.0, 0.0));
    }
    let (sp, sq) = split_squares(sig, zeta);
    let over_ipi = Complex::new(0.0, -4.0 / std::f64::consts::PI); // 4/(iπ)
    match sign {
        SignChoice::Plus => Ok(over_ipi * e_entire(sig, sp - sq, ctl)?),
        SignChoice::Minus => {
            Ok(over_ipi * i_pow(sig.p as i64 - sig.q as i64) * e_entire(sig, sq - sp, ctl)?)
        }
    }
}

/// Defining contour integral `(2πi)^{−1} ∮_{|σ|=1} f±/σ dσ` (diagnostic).
pub fn phi_pm_contour(
    sig: Signature,
    sign: SignChoice,
    zeta: &[Complex],
    ctl: &SeriesControl,
    nodes: usize,
) -> Result<Complex> {
    let c = ArcContour::unit_circle(nodes.max(8));
    let mut failure = None;
    let integral = contour_integral(&c, |s| match f_pm(sig, sign, s, zeta, ctl) {
        Ok(v) => v / s,
        Err(e) => {
            failure = Some(e);
            Complex::new(f64::NAN, 0.0)
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(integral? / Complex::new(0.0, 2.0 * std::f64::consts::PI))
}

/// Closed form: zero for odd-odd; otherwise `ψ₊ = 2E(ζ'²−ζ''²)` and
/// `ψ₋ = 2 i^{p−q} E(ζ''²−ζ'²)`.
pub fn psi_pm(
    sig: Signature,
    sign: SignChoice,
    zeta: &[Complex],
    ctl: &SeriesControl,
) -> Result<Complex> {
    if sig.p == 0 || sig.q == 0 {
        return Err(Error::Domain("psi_pm needs p >= 1 and q >= 1".into()));
    }
    assert_eq!(zeta.len(), sig.d() as usize);
    if sig.parity_class() == ParityClass::OddOdd {
        return Ok(Complex::new(0.0, 0.0));
    }
    let (sp, sq) = split_squares(sig, zeta);
    match sign {
        SignChoice::Plus => Ok(2.0 * e_entire(sig, sp - sq, ctl)?),
        SignChoice::Minus => {
            Ok(2.0 * i_pow(sig.p as i64 - sig.q as i64) * e_entire(sig, sq - sp, ctl)?)
        }
    }
}

/// Defining arc integral `∫_{Γ(1)} (f± − φ±)/σ dσ` over the quarter circle
/// (diagnostic). The subtracted `φ±` is itself taken from its defining
/// contour, so this route is independent of the closed forms.
pub fn psi_pm_contour(
    sig: Signature,
    sign: SignChoice,
    zeta: &[Complex],
    ctl: &SeriesControl,
    nodes: usize,
) -> Result<Complex> {
    let phi = phi_pm_contour(sig, sign, zeta, ctl, nodes)?;
    let c = ArcContour::unit_quarter(nodes.max(8));
    let mut failure = None;
    let integral = contour_integral(&c, |s| match f_pm(sig, sign, s, zeta, ctl) {
        Ok(v) => (v - phi) / s,
        Err(e) => {
            failure = Some(e);
            Complex::new(f64::NAN, 0.0)
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    integral
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn ctl() -> SeriesControl {
        SeriesControl {
            abs_tol: 1e-14,
            rel_tol: 1e-14,
            ..SeriesControl::default()
        }
    }

    fn cvec(vals: &[f64]) -> Vec<Complex> {
        vals.iter().map(|&v| Complex::new(v, 0.0)).collect()
    }

    #[test]
    fn f_value_at_unit_sigma() {
        // (1,1), plus, σ = 1, ζ = 0: prefactors collapse and e'e'' = 1/π².
        let sig = Signature::new(1, 1).unwrap();
        let v = f_pm(
            sig,
            SignChoice::Plus,
            Complex::new(1.0, 0.0),
            &cvec(&[0.0, 0.0]),
            &ctl(),
        )
        .unwrap();
        assert!((v - Complex::new(1.0 / (PI * PI), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn f_antisymmetry_in_sigma() {
        let sig = Signature::new(2, 1).unwrap();
        let zeta = cvec(&[0.4, -0.2, 0.7]);
        let s = Complex::new(0.8, 0.2);
        for sign in [SignChoice::Plus, SignChoice::Minus] {
            let a = f_pm(sig, sign, -s, &zeta, &ctl()).unwrap();
            let b = f_pm(sig, sign, s, &zeta, &ctl()).unwrap();
            assert!((a + b).norm() < 1e-13, "sign {sign:?}");
        }
    }

    #[test]
    fn f_quarter_rotation_law() {
        // f±(iσ, ζ) = i^{d−2} f∓(σ, iζ).
        let sig = Signature::new(2, 2).unwrap();
        let zeta = cvec(&[0.3, -0.1, 0.2, 0.5]);
        let izeta: Vec<Complex> = zeta.iter().map(|&z| Complex::new(0.0, 1.0) * z).collect();
        let s = Complex::new(0.6, -0.3);
        let lhs = f_pm(sig, SignChoice::Plus, Complex::new(0.0, 1.0) * s, &zeta, &ctl()).unwrap();
        let rhs = i_pow(sig.d() as i64 - 2)
            * f_pm(sig, SignChoice::Minus, s, &izeta, &ctl()).unwrap();
        assert!((lhs - rhs).norm() < 1e-13);
    }

    #[test]
    fn phi_closed_form_odd_odd() {
        // (1,1), plus, ζ = 0: (4/(iπ)) E(0) = (4/(iπ)) · i/(4π) = 1/π².
        let sig = Signature::new(1, 1).unwrap();
        let v = phi_pm(sig, SignChoice::Plus, &cvec(&[0.0, 0.0]), &ctl()).unwrap();
        assert!((v - Complex::new(1.0 / (PI * PI), 0.0)).norm() < 1e-15);
        // Non-odd-odd: identically zero.
        let sig21 = Signature::new(2, 1).unwrap();
        let v = phi_pm(sig21, SignChoice::Plus, &cvec(&[0.3, 0.4, 0.5]), &ctl()).unwrap();
        assert_eq!(v, Complex::new(0.0, 0.0));
    }

    #[test]
    fn phi_contour_matches_closed_form() {
        let sig = Signature::new(1, 1).unwrap();
        let zeta = cvec(&[0.5, 0.2]);
        for sign in [SignChoice::Plus, SignChoice::Minus] {
            let closed = phi_pm(sig, sign, &zeta, &ctl()).unwrap();
            let contour = phi_pm_contour(sig, sign, &zeta, &ctl(), 128).unwrap();
            assert!((closed - contour).norm() < 1e-12, "sign {sign:?}");
        }
    }

    #[test]
    fn psi_closed_form_and_arc() {
        // (2,1), plus, ζ = 0 → 2E(0) = i/(2π²).
        let sig = Signature::new(2, 1).unwrap();
        let v = psi_pm(sig, SignChoice::Plus, &cvec(&[0.0, 0.0, 0.0]), &ctl()).unwrap();
        assert!((v - Complex::new(0.0, 1.0 / (2.0 * PI * PI))).norm() < 1e-15);
        // ψ vanishes for odd-odd.
        let sig11 = Signature::new(1, 1).unwrap();
        let v = psi_pm(sig11, SignChoice::Plus, &cvec(&[0.7, 0.1]), &ctl()).unwrap();
        assert_eq!(v, Complex::new(0.0, 0.0));
        // Arc route agrees with the closed form at a generic point.
        let zeta = cvec(&[0.3, 0.0, 0.1]);
        for sign in [SignChoice::Plus, SignChoice::Minus] {
            let closed = psi_pm(sig, sign, &zeta, &ctl()).unwrap();
            let arc = psi_pm_contour(sig, sign, &zeta, &ctl(), 128).unwrap();
            assert!((closed - arc).norm() < 1e-11, "sign {sign:?}: {closed} vs {arc}");
        }
    }

    #[test]
    fn sigma_zero_rejected() {
        let sig = Signature::new(1, 1).unwrap();
        assert!(f_pm(
            sig,
            SignChoice::Plus,
            Complex::new(0.0, 0.0),
            &cvec(&[0.1, 0.1]),
            &ctl()
        )
        .is_err());
    }
}
