//! Even monomial moments of the round sphere:
//! `∫_{S^{d−1}} ω^{2α} dS = 2 π^{d/2} (2α)! / (4^{|α|} α! Γ(|α|+d/2))`.

use super::gamma::{ln_gamma_half_integer, HalfInteger};
use crate::error::Result;

/// Exact-formula moment, accumulated in log space so large `|α|` cannot
/// overflow intermediates.
pub fn sphere_moment(d: u32, alpha: &[u32]) -> Result<f64> {
    assert_eq!(alpha.len(), d as usize, "alpha must have length d");
    let total: u32 = alpha.iter().sum();
    let mut ln = 2f64.ln() + 0.5 * d as f64 * std::f64::consts::PI.ln();
    for &a in alpha {
        ln += ln_gamma_half_integer(HalfInteger::from_int(2 * a as i64 + 1))?;
        ln -= a as f64 * 4f64.ln();
        ln -= ln_gamma_half_integer(HalfInteger::from_int(a as i64 + 1))?;
    }
    ln -= ln_gamma_half_integer(HalfInteger::new(2 * total as i64 + d as i64))?;
    Ok(ln.exp())
}
