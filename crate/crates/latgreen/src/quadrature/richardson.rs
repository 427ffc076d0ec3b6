//! Richardson (Neville) extrapolation of boundary limits along geometric
//! offset ladders ε_k = ε₀ · ratio^k.

use crate::error::{Error, Result};
use crate::Complex;

/// Geometric ladder of positive offsets approaching zero.
#[derive(Clone, Copy, Debug, serde::Serialize, serde::Deserialize)]
pub struct ExtrapolationLadder {
    pub base_offset: f64,
    pub ratio: f64,
    pub steps: usize,
}

impl ExtrapolationLadder {
    pub fn new(base_offset: f64, ratio: f64, steps: usize) -> Result<Self> {
        if !(base_offset > 0.0) || !(ratio > 0.0 && ratio < 1.0) || steps == 0 {
            return Err(Error::Config(
                "ladder needs base_offset > 0, ratio in (0,1), steps >= 1".into(),
            ));
        }
        Ok(ExtrapolationLadder {
            base_offset,
            ratio,
            steps,
        })
    }

    pub fn offsets(&self) -> Vec<f64> {
        (0..self.steps)
            .map(|k| self.base_offset * self.ratio.powi(k as i32))
            .collect()
    }
}

fn neville_at_zero(xs: &[f64], samples: &[Complex]) -> (Complex, f64) {
    let n = samples.len();
    let mut col: Vec<Complex> = samples.to_vec();
    let mut estimate = f64::INFINITY;
    for j in 1..n {
        let mut next = Vec::with_capacity(n - j);
        for k in 0..n - j {
            // Interpolating through (x_k ... x_{k+j}), value at 0.
            let num = xs[k] * col[k + 1] - xs[k + j] * col[k];
            next.push(num / (xs[k] - xs[k + j]));
        }
        estimate = (next[0] - col[0]).norm();
        col = next;
    }
    (col[0], estimate)
}

/// Polynomial extrapolation of `samples[k] = f(ε_k)` to offset zero.
///
/// Two candidate tableaus are formed: plain Neville on the raw samples
/// (exact on polynomial models of degree below `steps − 1`), and Neville on
/// a sliding three-point pre-extrapolation, which on a geometric ladder
/// cancels confluent error terms of the form `ε·log ε` exactly. The
/// candidate with the smaller final correction wins; that correction is
/// returned as the error estimate.
pub fn richardson_limit(
    ladder: &ExtrapolationLadder,
    samples: &[Complex],
) -> Result<(Complex, f64)> {
    if ladder.steps < 3 {
        return Err(Error::InsufficientSamples {
            need: 3,
            got: ladder.steps,
        });
    }
    if samples.len() != ladder.steps {
        return Err(Error::InsufficientSamples {
            need: ladder.steps,
            got: samples.len(),
        });
    }
    let xs = ladder.offsets();
    let (plain, plain_est) = neville_at_zero(&xs, samples);
    if samples.len() < 6 {
        return Ok((plain, plain_est));
    }
    let pre: Vec<Complex> = (0..samples.len() - 2)
        .map(|k| neville_at_zero(&xs[k..k + 3], &samples[k..k + 3]).0)
        .collect();
    let (smoothed, smoothed_est) = neville_at_zero(&xs[..pre.len()], &pre);
    if smoothed_est < plain_est {
        Ok((smoothed, smoothed_est))
    } else {
        Ok((plain, plain_est))
    }
}
