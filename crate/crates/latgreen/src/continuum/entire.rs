//! The entire function `E(w) = i^q/(2^d π^{d/2}) Σ_k (−w/4)^k/(k! Γ(k+d/2))`.
//!
//! `E(z(x'²−x''²))` solves `(−□−z)u = 0` and carries the branching
//! coefficient of the kernel. It also has the Bessel expression
//! `i^q J_{d/2−1}(√w) / (2(2π)^{d/2} w^{(d/2−1)/2})`, which the verify
//! suites use as an independent route.

use super::Signature;
use crate::error::{Error, Result};
use crate::series::SeriesControl;
use crate::specfun::{gamma_half_integer, HalfInteger};
use crate::util::{i_pow, KahanC};
use crate::Complex;

/// Evaluate `E(w)` for the given signature with a certified tail.
pub fn e_entire(sig: Signature, w: Complex, ctl: &SeriesControl) -> Result<Complex> {
    ctl.validate()?;
    let d = sig.d() as i64;
    let pref = i_pow(sig.q as i64)
        / (2f64.powi(d as i32) * std::f64::consts::PI.powf(d as f64 / 2.0));

    let mut term = Complex::new(1.0 / gamma_half_integer(HalfInteger::new(d))?, 0.0);
    let quarter = -w / 4.0;
    let qn = quarter.norm();
    let mut acc = KahanC::default();
    for k in 0..=ctl.max_total_degree {
        acc.add(term);
        let kf = k as f64;
        // Next-term ratio is |w|/4 / ((k+1)(k+d/2)) <= 1/2 from here on.
        let certified = (kf + 1.0) * (kf + d as f64 / 2.0) >= 2.0 * qn;
        if certified && term.norm() <= ctl.stop_tol(acc.value().norm()) {
            return Ok(pref * acc.value());
        }
        term = term * quarter / ((kf + 1.0) * (kf + d as f64 / 2.0));
    }
    Err(Error::ConvergenceBudget(format!(
        "e_entire(|w|={}) did not certify within degree {}",
        w.norm(),
        ctl.max_total_degree
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{bessel_j, branch_sqrt_boundary};
    use std::f64::consts::PI;

    fn ctl() -> SeriesControl {
        SeriesControl {
            abs_tol: 1e-15,
            rel_tol: 1e-15,
            ..SeriesControl::default()
        }
    }

    #[test]
    fn values_at_zero() {
        // (2,0): 1/(4π); (1,1): i/(4π).
        let v = e_entire(Signature::new(2, 0).unwrap(), Complex::new(0.0, 0.0), &ctl()).unwrap();
        assert!((v - Complex::new(1.0 / (4.0 * PI), 0.0)).norm() < 1e-16);
        let v = e_entire(Signature::new(1, 1).unwrap(), Complex::new(0.0, 0.0), &ctl()).unwrap();
        assert!((v - Complex::new(0.0, 1.0 / (4.0 * PI))).norm() < 1e-16);
    }

    #[test]
    fn bessel_route_agrees() {
        // E(w) = i^q J_{d/2-1}(w^{1/2}) / (2 (2π)^{d/2} w^{(d/2-1)/2}).
        for (p, q, w) in [
            (3u32, 0u32, Complex::new(2.0, 0.0)),
            (2, 1, Complex::new(1.3, 0.4)),
            (1, 1, Complex::new(-0.7, 0.9)),
            (2, 2, Complex::new(3.0, 1.0)),
            (1, 0, Complex::new(0.5, -2.0)),
        ] {
            let sig = Signature::new(p, q).unwrap();
            let d = sig.d() as f64;
            let nu = d / 2.0 - 1.0;
            let s = branch_sqrt_boundary(w);
            let jv = bessel_j(nu, s, &ctl()).unwrap();
            let denom = (s.ln() * nu).exp(); // w^{(d/2-1)/2} = s^nu, same branch
            let bessel_form =
                i_pow(q as i64) * jv / (2.0 * (2.0 * PI).powf(d / 2.0) * denom);
            let series = e_entire(sig, w, &ctl()).unwrap();
            assert!(
                (series - bessel_form).norm() < 1e-13,
                "({p},{q}) w={w}: series {series} vs bessel {bessel_form}"
            );
        }
    }

    #[test]
    fn budget_failure_is_loud() {
        let tiny = SeriesControl {
            max_total_degree: 2,
            ..SeriesControl::default()
        };
        assert!(e_entire(
            Signature::new(2, 0).unwrap(),
            Complex::new(100.0, 0.0),
            &tiny
        )
        .is_err());
    }
}
