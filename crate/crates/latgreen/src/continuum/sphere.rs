//! Sphere average `e(ζ) = (2π)^{−d} ∫_{S^{d−1}} e^{iζω} dS(ω)`, evaluated
//! through its multi-index Taylor expansion
//! `e(ζ) = 2/(2^d π^{d/2}) Σ_α (−1)^{|α|} (ζ/2)^{2α} / (α! Γ(|α|+d/2))`,
//! organized by total degree via per-coordinate convolution.

use crate::error::{Error, Result};
use crate::series::SeriesControl;
use crate::specfun::{gamma_half_integer, HalfInteger};
use crate::util::KahanC;
use crate::Complex;

/// `e(ζ)` for `ζ ∈ C^d`; entire, certified by the majorant
/// `(Σ|ζ_j|²/4)^m / (m! Γ(m+d/2))`.
pub fn sphere_average_e(d: u32, zeta: &[Complex], ctl: &SeriesControl) -> Result<Complex> {
    ctl.validate()?;
    assert_eq!(zeta.len(), d as usize, "zeta must have length d");
    let dd = d as f64;
    let pref = 2.0 / (2f64.powi(d as i32) * std::f64::consts::PI.powf(dd / 2.0));

    // Majorant-determined truncation degree.
    let s4: f64 = zeta.iter().map(|z| z.norm_sqr()).sum::<f64>() / 4.0;
    let gamma_d2 = gamma_half_integer(HalfInteger::new(d as i64))?;
    let mut maj = 1.0 / gamma_d2;
    let mut m_stop = None;
    for m in 0..=ctl.max_total_degree {
        let mf = m as f64;
        let geometric = (mf + 1.0) * (mf + dd / 2.0) >= 2.0 * s4;
        if geometric && pref * maj <= ctl.abs_tol {
            m_stop = Some(m);
            break;
        }
        maj *= s4 / ((mf + 1.0) * (mf + dd / 2.0));
    }
    let m_max = m_stop.ok_or_else(|| {
        Error::ConvergenceBudget(format!(
            "sphere_average_e(|zeta|^2/4={s4}) did not certify within degree {}",
            ctl.max_total_degree
        ))
    })?;

    // Per-coordinate sequences a_j[k] = (−ζ_j²/4)^k / k!, convolved over j.
    let mut conv: Vec<Complex> = vec![Complex::new(0.0, 0.0); m_max + 1];
    conv[0] = Complex::new(1.0, 0.0);
    for &zj in zeta {
        let base = -(zj * zj) / 4.0;
        let mut a = Vec::with_capacity(m_max + 1);
        let mut t = Complex::new(1.0, 0.0);
        for k in 0..=m_max {
            a.push(t);
            t = t * base / (k as f64 + 1.0);
        }
        let mut next = vec![Complex::new(0.0, 0.0); m_max + 1];
        for (i, &ci) in conv.iter().enumerate() {
            if ci.norm_sqr() == 0.0 {
                continue;
            }
            for (k, &ak) in a.iter().enumerate().take(m_max + 1 - i) {
                next[i + k] += ci * ak;
            }
        }
        conv = next;
    }

    // Σ_m conv[m] / Γ(m+d/2), ascending m.
    let mut acc = KahanC::default();
    let mut inv_gamma = 1.0 / gamma_d2;
    for (m, &cm) in conv.iter().enumerate() {
        acc.add(cm * inv_gamma);
        inv_gamma /= m as f64 + dd / 2.0;
    }
    Ok(acc.value() * pref)
}
