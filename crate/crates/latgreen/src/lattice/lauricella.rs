//! The branching coefficients `E^(l)(w,n)`: Lauricella-type multi-index
//! series at the sign-patterned argument `(±w/4, …)`.
//!
//! With `s_j = +1` where `θ^(l)_j = 0` and `s_j = −1` where `θ^(l)_j = π`,
//!
//! `E^(l)(w,n) = (−1)^{|n''|} i^q / (2^d π^{d/2} Γ(d/2)) ·
//!     Σ_m [Σ_{|α|=m} Π_j s_j^{α_j}(1/2−n_j)_{α_j}(1/2+n_j)_{α_j}/(4^{α_j}α_j!)]
//!     · w^m / (d/2)_m`,
//!
//! organized by total degree through per-coordinate convolution. A parallel
//! convolution of absolute values provides a rigorous majorant for the tail
//! certificate, so exact cancellations inside blocks cannot fool the
//! stopping rule. `E^(l)` satisfies `(−Δ − w − 4q) E^(l)(w,·) = 0`.

use super::{enumerate_critical_points, SignPattern, ThresholdContext};
use crate::error::{Error, Result};
use crate::series::SeriesControl;
use crate::specfun::{gamma_half_integer, HalfInteger};
use crate::util::{i_pow, KahanC};
use crate::Complex;

/// Per-coordinate coefficient sequences and their absolute majorant,
/// convolved across coordinates up to total degree `m_max`.
fn convolved_coeffs(
    n: &[i64],
    signs: &[i8],
    m_max: usize,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut conv = vec![0.0f64; m_max + 1];
    let mut conv_abs = vec![0.0f64; m_max + 1];
    conv[0] = 1.0;
    conv_abs[0] = 1.0;
    for (&nj, &sj) in n.iter().zip(signs) {
        // u[k] = s^k (1/2−n)_k (1/2+n)_k / (4^k k!)
        let mut u = Vec::with_capacity(m_max + 1);
        let mut t = 1.0f64;
        let nf = nj as f64;
        for k in 0..=m_max {
            u.push(t);
            let kf = k as f64;
            t *= sj as f64 * (kf + 0.5 - nf) * (kf + 0.5 + nf) / (4.0 * (kf + 1.0));
            if !t.is_finite() {
                return Err(Error::ConvergenceBudget(format!(
                    "coefficient overflow at degree {k} for n_j = {nj}"
                )));
            }
        }
        let mut next = vec![0.0f64; m_max + 1];
        let mut next_abs = vec![0.0f64; m_max + 1];
        for i in 0..=m_max {
            if conv_abs[i] == 0.0 {
                continue;
            }
            for (k, &uk) in u.iter().enumerate().take(m_max + 1 - i) {
                next[i + k] += conv[i] * uk;
                next_abs[i + k] += conv_abs[i] * uk.abs();
            }
        }
        conv = next;
        conv_abs = next_abs;
    }
    Ok((conv, conv_abs))
}

/// Σ_m conv[m] · arg^m / (d/2)_m with a majorant-certified geometric tail.
fn certified_block_sum(
    n: &[i64],
    signs: &[i8],
    arg: Complex,
    d: u32,
    ctl: &SeriesControl,
) -> Result<Complex> {
    let an = arg.norm();
    if an >= 4.0 {
        return Err(Error::Domain(format!(
            "series argument |w| = {an} outside the domain |w| < 4"
        )));
    }
    let r_asym = an / 4.0;
    let r_cert = (r_asym * 1.05 + 0.02).clamp(0.3, 0.985);

    let mut m_max = 32usize.min(ctl.max_total_degree);
    loop {
        let (conv, conv_abs) = convolved_coeffs(n, signs, m_max)?;
        let mut acc = KahanC::default();
        let mut dpow = Complex::new(1.0, 0.0); // arg^m / (d/2)_m
        let mut dpow_abs = 1.0f64;
        let mut ratios = [f64::INFINITY; 3];
        let mut prev_maj = f64::INFINITY;
        for m in 0..=m_max {
            let block = conv[m] * dpow;
            let maj = conv_abs[m] * dpow_abs;
            acc.add(block);
            if m >= 1 {
                ratios.rotate_left(1);
                ratios[2] = if prev_maj > 0.0 {
                    maj / prev_maj
                } else {
                    0.0
                };
            }
            prev_maj = maj;
            if m >= 4 {
                let rmax: f64 = ratios.iter().cloned().fold(0.0, f64::max);
                if rmax <= r_cert {
                    let r_hat = rmax.max(r_asym).min(0.99);
                    let tail = maj * r_hat / (1.0 - r_hat);
                    if tail <= ctl.stop_tol(acc.value().norm()) {
                        return Ok(acc.value());
                    }
                }
            }
            let den = d as f64 / 2.0 + m as f64;
            dpow = dpow * arg / den;
            dpow_abs = dpow_abs * an / den;
        }
        if m_max >= ctl.max_total_degree {
            return Err(Error::ConvergenceBudget(format!(
                "series at |w| = {an} did not certify within degree {}",
                ctl.max_total_degree
            )));
        }
        m_max = (2 * m_max).min(ctl.max_total_degree);
    }
}

pub(crate) fn lauricella_sum(
    n: &[i64],
    signs: &[i8],
    arg: Complex,
    d: u32,
    ctl: &SeriesControl,
) -> Result<Complex> {
    ctl.validate()?;
    certified_block_sum(n, signs, arg, d, ctl)
}

/// `E^(l)(w,n)` for the given sign pattern.
pub fn e_l(
    ctx: &ThresholdContext,
    pattern: &SignPattern,
    w: Complex,
    n: &[i64],
    ctl: &SeriesControl,
) -> Result<Complex> {
    let d = ctx.d;
    if n.len() != d as usize || pattern.signs.len() != d as usize {
        return Err(Error::Config("e_l: dimension mismatch".into()));
    }
    let minus = pattern.signs.iter().filter(|&&s| s < 0).count() as u32;
    if minus != ctx.q {
        return Err(Error::Config(format!(
            "e_l: pattern has {minus} minus signs, context q = {}",
            ctx.q
        )));
    }
    let series = lauricella_sum(n, &pattern.signs, w, d, ctl)?;
    let sign = if pattern.npp_parity(n) { -1.0 } else { 1.0 };
    let pref = sign * i_pow(ctx.q as i64)
        / (2f64.powi(d as i32)
            * std::f64::consts::PI.powf(d as f64 / 2.0)
            * gamma_half_integer(HalfInteger::new(d as i64))?);
    Ok(pref * series)
}

/// `Σ_{l=1}^L E^(l)(w,n)` over the lexicographically ordered patterns.
pub fn e_sum(
    ctx: &ThresholdContext,
    w: Complex,
    n: &[i64],
    ctl: &SeriesControl,
) -> Result<Complex> {
    let mut acc = KahanC::default();
    for pattern in enumerate_critical_points(ctx) {
        acc.add(e_l(ctx, &pattern, w, n, ctl)?);
    }
    Ok(acc.value())
}
