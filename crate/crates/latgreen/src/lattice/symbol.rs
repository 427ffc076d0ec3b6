//! Symbol `Θ(θ) = Σ_j 4sin²(θ_j/2)`, the second-difference stencil, and
//! enumeration of the critical points `γ(p,q) = {θ ∈ {0,π}^d; #{θ_j=0}=p}`.

use super::{SignPattern, ThresholdContext};
use crate::error::{Error, Result};
use crate::Complex;

/// `Θ(θ) ∈ [0, 4d]`, the Fourier multiplier of `−Δ`.
pub fn theta_symbol(theta: &[f64]) -> f64 {
    theta
        .iter()
        .map(|&t| {
            let s = (t / 2.0).sin();
            4.0 * s * s
        })
        .sum()
}

/// Finite complex array over an axis-aligned box of `Z^d`.
#[derive(Clone, Debug)]
pub struct LatticeArray {
    lo: Vec<i64>,
    dims: Vec<usize>,
    data: Vec<Complex>,
}

impl LatticeArray {
    /// Fill a box `[lo, hi]` (inclusive) from a generator.
    pub fn fill(
        lo: &[i64],
        hi: &[i64],
        mut f: impl FnMut(&[i64]) -> Complex,
    ) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::Config("LatticeArray: bad box".into()));
        }
        let dims: Vec<usize> = lo
            .iter()
            .zip(hi)
            .map(|(&a, &b)| {
                if b < a {
                    0
                } else {
                    (b - a + 1) as usize
                }
            })
            .collect();
        if dims.iter().any(|&d| d == 0) {
            return Err(Error::Config("LatticeArray: empty box".into()));
        }
        let total: usize = dims.iter().product();
        let mut data = Vec::with_capacity(total);
        let d = lo.len();
        let mut n: Vec<i64> = lo.to_vec();
        loop {
            data.push(f(&n));
            let mut j = d;
            loop {
                if j == 0 {
                    return Ok(LatticeArray {
                        lo: lo.to_vec(),
                        dims,
                        data,
                    });
                }
                j -= 1;
                n[j] += 1;
                if n[j] <= hi[j] {
                    break;
                }
                n[j] = lo[j];
            }
        }
    }

    pub fn d(&self) -> usize {
        self.lo.len()
    }

    pub fn get(&self, n: &[i64]) -> Option<Complex> {
        if n.len() != self.lo.len() {
            return None;
        }
        let mut idx = 0usize;
        for j in 0..n.len() {
            let off = n[j] - self.lo[j];
            if off < 0 || off as usize >= self.dims[j] {
                return None;
            }
            idx = idx * self.dims[j] + off as usize;
        }
        Some(self.data[idx])
    }
}

/// `(Δu)[n] = Σ_j (u[n+e_j] + u[n−e_j] − 2u[n])`; errors if any stencil
/// point leaves the array box.
pub fn apply_discrete_laplacian(u: &LatticeArray, n: &[i64]) -> Result<Complex> {
    let center = u
        .get(n)
        .ok_or_else(|| Error::OutOfBox(format!("{n:?}")))?;
    let mut acc = Complex::new(0.0, 0.0);
    let mut m = n.to_vec();
    for j in 0..u.d() {
        for delta in [1i64, -1] {
            m[j] = n[j] + delta;
            let v = u
                .get(&m)
                .ok_or_else(|| Error::OutOfBox(format!("{m:?}")))?;
            acc += v;
        }
        m[j] = n[j];
        acc -= 2.0 * center;
    }
    Ok(acc)
}

/// Stencil applied to a function rather than a stored array.
pub fn discrete_laplacian_of(
    mut f: impl FnMut(&[i64]) -> Result<Complex>,
    n: &[i64],
) -> Result<Complex> {
    let center = f(n)?;
    let mut acc = Complex::new(0.0, 0.0);
    let mut m = n.to_vec();
    for j in 0..n.len() {
        for delta in [1i64, -1] {
            m[j] = n[j] + delta;
            acc += f(&m)?;
        }
        m[j] = n[j];
        acc -= 2.0 * center;
    }
    Ok(acc)
}

/// All sign patterns with exactly `p` entries `+1` and `q` entries `−1`,
/// ordered lexicographically in `θ` (0 before π), so the canonical pattern
/// comes first.
pub fn enumerate_critical_points(ctx: &ThresholdContext) -> Vec<SignPattern> {
    let d = ctx.d as usize;
    let q = ctx.q as usize;
    let mut out = Vec::new();
    // Choose positions of the −1 entries.
    let mut choice: Vec<usize> = (0..q).collect();
    loop {
        let mut signs = vec![1i8; d];
        for &pos in &choice {
            signs[pos] = -1;
        }
        out.push(SignPattern { signs });
        // Next combination in lexicographic position order.
        if q == 0 {
            break;
        }
        let mut i = q;
        loop {
            if i == 0 {
                out.sort_by_key(|pat| {
                    pat.signs
                        .iter()
                        .map(|&s| if s > 0 { 0u8 } else { 1u8 })
                        .collect::<Vec<u8>>()
                });
                return out;
            }
            i -= 1;
            if choice[i] < d - (q - i) {
                choice[i] += 1;
                for j in i + 1..q {
                    choice[j] = choice[j - 1] + 1;
                }
                break;
            }
        }
    }
    out
}
