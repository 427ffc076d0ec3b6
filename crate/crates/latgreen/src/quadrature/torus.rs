//! Periodic trapezoid rule on the torus `T^d`, normalized as a mean value:
//! the returned quantity approximates `(2π)^{−d} ∫_{T^d} f dθ`, which is
//! exact (to rounding) on trigonometric polynomials of per-dimension
//! degree below the node count.

use crate::error::{Error, Result};
use crate::util::KahanC;
use crate::Complex;
use rayon::prelude::*;

/// Uniform product grid `θ_j = 2π m/N`, `m = 0..N−1`, per dimension.
#[derive(Clone, Copy, Debug)]
pub struct TorusGrid {
    pub d: usize,
    pub nodes_per_dim: usize,
}

impl TorusGrid {
    pub fn new(d: usize, nodes_per_dim: usize) -> Result<Self> {
        if d == 0 || nodes_per_dim == 0 {
            return Err(Error::Config(
                "TorusGrid needs positive dimension and node count".into(),
            ));
        }
        Ok(TorusGrid { d, nodes_per_dim })
    }

    pub fn total_nodes(&self) -> u64 {
        (self.nodes_per_dim as u64).pow(self.d as u32)
    }
}

/// Mean of `f` over the grid: `N^{−d} Σ f(θ_m)`.
///
/// Slices along the first coordinate are evaluated in parallel; each slice
/// accumulates sequentially in node-ascending order and the slice partials
/// merge in slice order, so the result is independent of thread count.
pub fn periodic_trapezoid<F>(grid: &TorusGrid, f: F) -> Result<Complex>
where
    F: Fn(&[f64]) -> Complex + Sync,
{
    let n = grid.nodes_per_dim;
    let d = grid.d;
    let step = 2.0 * std::f64::consts::PI / n as f64;

    let slices: Vec<Result<KahanC>> = (0..n)
        .into_par_iter()
        .map(|m0| {
            let mut acc = KahanC::default();
            let mut idx = vec![0usize; d];
            idx[0] = m0;
            let mut theta = vec![0.0f64; d];
            theta[0] = m0 as f64 * step;
            loop {
                for j in 1..d {
                    theta[j] = idx[j] as f64 * step;
                }
                let v = f(&theta);
                if !v.re.is_finite() || !v.im.is_finite() {
                    return Err(Error::NonfiniteIntegrand(format!("{idx:?}")));
                }
                acc.add(v);
                // Odometer over dimensions 1..d (dimension-major order).
                let mut j = d;
                loop {
                    if j == 1 {
                        return Ok(acc);
                    }
                    j -= 1;
                    idx[j] += 1;
                    if idx[j] < n {
                        break;
                    }
                    idx[j] = 0;
                }
            }
        })
        .collect();

    let mut total = KahanC::default();
    for s in slices {
        total.merge(&s?);
    }
    let scale = (n as f64).powi(-(d as i32));
    Ok(total.value() * scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_has_mean_one() {
        let g = TorusGrid::new(2, 5).unwrap();
        let v = periodic_trapezoid(&g, |_| Complex::new(1.0, 0.0)).unwrap();
        assert!((v - Complex::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn exact_on_low_degree_exponentials() {
        let g = TorusGrid::new(1, 8).unwrap();
        for n in 1..8i32 {
            let v = periodic_trapezoid(&g, |t| {
                Complex::new(0.0, n as f64 * t[0]).exp()
            })
            .unwrap();
            assert!(v.norm() < 1e-14, "n = {n}: {v}");
        }
    }

    #[test]
    fn aliasing_contract() {
        // e^{i2θ} on an N = 2 grid aliases to the constant 1.
        let g = TorusGrid::new(1, 2).unwrap();
        let v = periodic_trapezoid(&g, |t| Complex::new(0.0, 2.0 * t[0]).exp()).unwrap();
        assert!((v - Complex::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn nonfinite_node_reported() {
        let g = TorusGrid::new(2, 4).unwrap();
        let r = periodic_trapezoid(&g, |t| {
            if t[0] == 0.0 && t[1] == 0.0 {
                Complex::new(f64::NAN, 0.0)
            } else {
                Complex::new(1.0, 0.0)
            }
        });
        assert!(matches!(r, Err(Error::NonfiniteIntegrand(_))));
    }

    #[test]
    fn trig_polynomial_mean_matches_d3() {
        let g = TorusGrid::new(3, 6).unwrap();
        // f = (1 + cos θ1)(1 + sin θ2) has torus mean 1.
        let v = periodic_trapezoid(&g, |t| {
            Complex::new((1.0 + t[0].cos()) * (1.0 + t[1].sin()), 0.0)
        })
        .unwrap();
        assert!((v - Complex::new(1.0, 0.0)).norm() < 1e-14);
    }
}
