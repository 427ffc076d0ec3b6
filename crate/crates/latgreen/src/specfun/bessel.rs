//! Bessel function of the first kind by its defining power series,
//! for half-integer orders (the only orders the kernels need).

use super::gamma::{gamma_half_integer, HalfInteger};
use crate::error::{Error, Result};
use crate::series::SeriesControl;
use crate::util::KahanC;
use crate::Complex;

/// `J_ν(z) = Σ_k (−1)^k (z/2)^{2k+ν} / (k! Γ(k+ν+1))` with a certified
/// geometric tail. `2ν` must be an integer and `ν ≥ −1/2`.
pub fn bessel_j(nu: f64, z: Complex, ctl: &SeriesControl) -> Result<Complex> {
    ctl.validate()?;
    let twice_nu = (2.0 * nu).round();
    if (2.0 * nu - twice_nu).abs() > 1e-12 || twice_nu < -1.0 {
        return Err(Error::Domain(format!(
            "bessel_j: order {nu} not a half-integer >= -1/2"
        )));
    }
    let nu_hi = HalfInteger::new(twice_nu as i64);

    let half = z / 2.0;
    if z.norm() == 0.0 {
        return Ok(if nu == 0.0 {
            Complex::new(1.0, 0.0)
        } else {
            // Positive orders vanish; negative half-integer orders blow up.
            if nu > 0.0 {
                Complex::new(0.0, 0.0)
            } else {
                return Err(Error::Domain("bessel_j: J_{-1/2}(0) diverges".into()));
            }
        });
    }

    // (z/2)^ν via the principal power; integer ν uses exact powers.
    let lead = if nu_hi.is_integer() {
        crate::util::cpowi(half, (twice_nu as i32) / 2)
    } else {
        (half.ln() * nu).exp()
    };

    let mut term = lead / gamma_half_integer(nu_hi.plus_int(1))?;
    let msq = -(half * half);
    let q = msq.norm();
    // Ratio of consecutive terms is q / ((k+1)(k+ν+1)) <= 1/2 once
    // (k+1)(k+ν+1) >= 2q; after that the tail is below the last term.
    let mut acc = KahanC::default();
    for k in 0..=ctl.max_total_degree {
        acc.add(term);
        let kf = k as f64;
        let certified = (kf + 1.0) * (kf + nu + 1.0) >= 2.0 * q;
        if certified && term.norm() <= ctl.stop_tol(acc.value().norm()) {
            return Ok(acc.value());
        }
        term = term * msq / ((kf + 1.0) * (kf + nu + 1.0));
    }
    Err(Error::ConvergenceBudget(format!(
        "bessel_j(nu={nu}, |z|={}) did not certify within degree {}",
        z.norm(),
        ctl.max_total_degree
    )))
}
