//! The resolvent kernel `k(z,n) = (2π)^{−d} ∫_{T^d} e^{inθ}/(Θ(θ)−z) dθ`,
//! evaluated by the periodic trapezoid rule (spectrally accurate for
//! `Im z ≠ 0`), plus the residue-calculus closed form in one dimension.

use super::KernelSample;
use crate::error::{Error, Result};
use crate::quadrature::TorusGrid;
use crate::util::{cpowi, KahanC};
use crate::Complex;
use rayon::prelude::*;

fn check_grid(d: u32, n: &[i64], nodes: usize) -> Result<()> {
    let nmax = n.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0);
    if (nodes as u64) <= 2 * nmax + 2 {
        return Err(Error::GridTooSmall(format!(
            "N = {nodes} but |n|_inf = {nmax} needs N > {}",
            2 * nmax + 2
        )));
    }
    let _ = d;
    Ok(())
}

/// Trapezoid sum `N^{−d} Σ_m e^{inθ_m}/(Θ(θ_m) − z)` with per-axis tables.
///
/// Slices along the first axis run in parallel; each slice accumulates in
/// node-ascending order and partials merge in slice order.
fn torus_sum(d: usize, z: Complex, n: &[i64], nodes: usize) -> Complex {
    let nn = nodes;
    // 4 sin²(π m / N) = Θ contribution per axis, and per-axis phases.
    let sin2: Vec<f64> = (0..nn)
        .map(|m| {
            let s = (std::f64::consts::PI * m as f64 / nn as f64).sin();
            4.0 * s * s
        })
        .collect();
    let phases: Vec<Vec<Complex>> = n
        .iter()
        .map(|&nj| {
            (0..nn)
                .map(|m| {
                    Complex::from_polar(
                        1.0,
                        nj as f64 * 2.0 * std::f64::consts::PI * m as f64 / nn as f64,
                    )
                })
                .collect()
        })
        .collect();

    let slices: Vec<KahanC> = (0..nn)
        .into_par_iter()
        .map(|m0| {
            let mut acc = KahanC::default();
            let mut idx = vec![0usize; d];
            idx[0] = m0;
            loop {
                let mut theta = 0.0;
                let mut phase = Complex::new(1.0, 0.0);
                for j in 0..d {
                    theta += sin2[idx[j]];
                    phase *= phases[j][idx[j]];
                }
                acc.add(phase / (Complex::new(theta, 0.0) - z));
                let mut j = d;
                loop {
                    if j == 1 {
                        return acc;
                    }
                    j -= 1;
                    idx[j] += 1;
                    if idx[j] < nn {
                        break;
                    }
                    idx[j] = 0;
                }
            }
        })
        .collect();

    let mut total = KahanC::default();
    for s in &slices {
        total.merge(s);
    }
    total.value() * (nn as f64).powi(-(d as i32))
}

/// `k(z,n)` on the grid, with a refinement-based error estimate from the
/// doubled grid `N → 2N`. `Im z < 0` is reached by the reflection
/// `k(z̄,n) = conj k(z,n)`; real `z` is rejected.
pub fn lattice_kernel(d: u32, z: Complex, n: &[i64], grid: &TorusGrid) -> Result<KernelSample> {
    if n.len() != d as usize || grid.d != d as usize {
        return Err(Error::Config(format!(
            "lattice_kernel: point/grid dimension mismatch (d = {d})"
        )));
    }
    if z.im == 0.0 {
        return Err(Error::Domain(
            "lattice_kernel: real z is singular on the spectrum; use a ladder".into(),
        ));
    }
    if z.im < 0.0 {
        let refl = lattice_kernel(d, z.conj(), n, grid)?;
        return Ok(KernelSample {
            z,
            value: refl.value.conj(),
            ..refl
        });
    }
    check_grid(d, n, grid.nodes_per_dim)?;
    let coarse = torus_sum(d as usize, z, n, grid.nodes_per_dim);
    let fine = torus_sum(d as usize, z, n, 2 * grid.nodes_per_dim);
    Ok(KernelSample {
        z,
        n: n.to_vec(),
        value: coarse,
        quadrature_nodes: grid.total_nodes() + (2 * grid.nodes_per_dim as u64).pow(d),
        error_estimate: (fine - coarse).norm(),
    })
}

/// Double the grid until successive values differ by at most `tol`
/// (or the cap is hit); returns the finest value.
pub fn lattice_kernel_adaptive(
    d: u32,
    z: Complex,
    n: &[i64],
    tol: f64,
    start_nodes: usize,
    max_nodes: usize,
) -> Result<KernelSample> {
    if z.im == 0.0 {
        return Err(Error::Domain("lattice_kernel_adaptive: real z".into()));
    }
    if z.im < 0.0 {
        let refl = lattice_kernel_adaptive(d, z.conj(), n, tol, start_nodes, max_nodes)?;
        return Ok(KernelSample {
            z,
            value: refl.value.conj(),
            ..refl
        });
    }
    let nmax = n.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0) as usize;
    let mut nodes = start_nodes.max(2 * nmax + 4).next_power_of_two();
    let mut total_nodes = 0u64;
    let mut prev: Option<Complex> = None;
    loop {
        let value = torus_sum(d as usize, z, n, nodes);
        total_nodes += (nodes as u64).pow(d);
        if let Some(p) = prev {
            let est = (value - p).norm();
            if est <= tol || 2 * nodes > max_nodes {
                if est > tol {
                    return Err(Error::Accuracy(format!(
                        "lattice kernel at z = {z}: estimate {est} > tol {tol} at N = {nodes}"
                    )));
                }
                return Ok(KernelSample {
                    z,
                    n: n.to_vec(),
                    value,
                    quadrature_nodes: total_nodes,
                    error_estimate: est,
                });
            }
        }
        prev = Some(value);
        nodes *= 2;
    }
}

/// Kernel values for every `|n|_∞ ≤ radius` in one sweep over the grid
/// (shared nodes, per-axis phase tables).
#[derive(Clone, Debug)]
pub struct BoxKernel {
    pub d: u32,
    pub radius: i64,
    pub z: Complex,
    values: Vec<Complex>,
}

impl BoxKernel {
    pub fn side(&self) -> usize {
        (2 * self.radius + 1) as usize
    }

    pub fn get(&self, n: &[i64]) -> Option<Complex> {
        if n.len() != self.d as usize {
            return None;
        }
        let side = self.side();
        let mut idx = 0usize;
        for &nj in n {
            if nj.abs() > self.radius {
                return None;
            }
            idx = idx * side + (nj + self.radius) as usize;
        }
        Some(self.values[idx])
    }
}

pub fn lattice_kernel_box(
    d: u32,
    z: Complex,
    radius: i64,
    grid: &TorusGrid,
) -> Result<BoxKernel> {
    if grid.d != d as usize {
        return Err(Error::Config("lattice_kernel_box: grid dimension".into()));
    }
    if z.im == 0.0 {
        return Err(Error::Domain("lattice_kernel_box: real z".into()));
    }
    if z.im < 0.0 {
        let refl = lattice_kernel_box(d, z.conj(), radius, grid)?;
        return Ok(BoxKernel {
            z,
            values: refl.values.iter().map(|v| v.conj()).collect(),
            ..refl
        });
    }
    check_grid(d, &vec![radius; d as usize], grid.nodes_per_dim)?;
    let nn = grid.nodes_per_dim;
    let dd = d as usize;
    let side = (2 * radius + 1) as usize;
    let cells = side.pow(d);

    let sin2: Vec<f64> = (0..nn)
        .map(|m| {
            let s = (std::f64::consts::PI * m as f64 / nn as f64).sin();
            4.0 * s * s
        })
        .collect();
    // phase[j][v][m] = e^{i (v - radius) θ_m}
    let phase: Vec<Vec<Vec<Complex>>> = (0..dd)
        .map(|_| {
            (0..side)
                .map(|v| {
                    let nv = v as i64 - radius;
                    (0..nn)
                        .map(|m| {
                            Complex::from_polar(
                                1.0,
                                nv as f64 * 2.0 * std::f64::consts::PI * m as f64 / nn as f64,
                            )
                        })
                        .collect()
                })
                .collect()
        })
        .collect();

    let slices: Vec<Vec<KahanC>> = (0..nn)
        .into_par_iter()
        .map(|m0| {
            let mut acc = vec![KahanC::default(); cells];
            let mut idx = vec![0usize; dd];
            idx[0] = m0;
            loop {
                let mut theta = 0.0;
                for j in 0..dd {
                    theta += sin2[idx[j]];
                }
                let w = (Complex::new(theta, 0.0) - z).inv();
                // Accumulate w · Π_j phase[j][v_j][m_j] for every cell.
                build_products(&phase, &idx, 0, w, 0, &mut acc, side);
                let mut j = dd;
                loop {
                    if j == 1 {
                        return acc;
                    }
                    j -= 1;
                    idx[j] += 1;
                    if idx[j] < nn {
                        break;
                    }
                    idx[j] = 0;
                }
            }
        })
        .collect();

    let mut cellsum = vec![KahanC::default(); cells];
    for slice in &slices {
        for (c, s) in cellsum.iter_mut().zip(slice) {
            c.merge(s);
        }
    }
    let scale = (nn as f64).powi(-(d as i32));
    Ok(BoxKernel {
        d,
        radius,
        z,
        values: cellsum.iter().map(|c| c.value() * scale).collect(),
    })
}

fn build_products(
    phase: &[Vec<Vec<Complex>>],
    idx: &[usize],
    depth: usize,
    carried: Complex,
    cell: usize,
    acc: &mut [KahanC],
    side: usize,
) {
    if depth == phase.len() {
        acc[cell].add(carried);
        return;
    }
    for v in 0..side {
        let next = carried * phase[depth][v][idx[depth]];
        build_products(phase, idx, depth + 1, next, cell * side + v, acc, side);
    }
}

/// Residue closed form in one dimension: with `ζ + ζ^{−1} = 2 − z` and
/// `|ζ| < 1`, `k(z,n) = ζ^{|n|}/(ζ^{−1} − ζ)`.
pub fn kernel_1d_closed_form(z: Complex, n: i64) -> Result<Complex> {
    let s = Complex::new(2.0, 0.0) - z;
    let disc = s * s - 4.0;
    let r = disc.sqrt();
    let c1 = (s + r) / 2.0;
    let c2 = (s - r) / 2.0;
    let zeta = if c1.norm() < c2.norm() { c1 } else { c2 };
    if (zeta.norm() - 1.0).abs() < 1e-13 {
        return Err(Error::Domain(format!(
            "kernel_1d_closed_form: z = {z} lies on the spectrum"
        )));
    }
    Ok(cpowi(zeta, n.unsigned_abs() as i32) / (zeta.inv() - zeta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{gauss_segment, periodic_trapezoid};

    #[test]
    fn closed_form_validated_against_gauss_quadrature() {
        // Independent route: composite Gauss over the full period.
        for (z, n) in [
            (Complex::new(2.0, 1.0), 0i64),
            (Complex::new(2.0, 1.0), 3),
            (Complex::new(-1.5, 0.7), 2),
            (Complex::new(5.3, -0.9), 1),
        ] {
            let direct = gauss_segment(
                |t| {
                    let th = 2.0 - 2.0 * t.cos();
                    Complex::new(0.0, n as f64 * t).exp() / (Complex::new(th, 0.0) - z)
                },
                -std::f64::consts::PI,
                std::f64::consts::PI,
                32,
                16,
            )
            .unwrap()
                / (2.0 * std::f64::consts::PI);
            let closed = kernel_1d_closed_form(z, n).unwrap();
            assert!(
                (direct - closed).norm() < 1e-12,
                "z={z} n={n}: {direct} vs {closed}"
            );
        }
    }

    #[test]
    fn trapezoid_matches_closed_form_1d() {
        let grid = TorusGrid::new(1, 256).unwrap();
        let z = Complex::new(2.0, 1.0);
        for n in [0i64, 1, 5] {
            let ks = lattice_kernel(1, z, &[n], &grid).unwrap();
            let cf = kernel_1d_closed_form(z, n).unwrap();
            assert!((ks.value - cf).norm() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn torus_sum_agrees_with_generic_trapezoid() {
        let z = Complex::new(1.0, 1.0);
        let n = [1i64, -2];
        let grid = TorusGrid::new(2, 24).unwrap();
        let generic = periodic_trapezoid(&grid, |t| {
            let th = theta_of(t);
            Complex::new(0.0, n[0] as f64 * t[0] + n[1] as f64 * t[1]).exp()
                / (Complex::new(th, 0.0) - z)
        })
        .unwrap();
        let tabled = torus_sum(2, z, &n, 24);
        assert!((generic - tabled).norm() < 1e-13);
    }

    fn theta_of(t: &[f64]) -> f64 {
        t.iter()
            .map(|&x| {
                let s = (x / 2.0).sin();
                4.0 * s * s
            })
            .sum()
    }

    #[test]
    fn symmetry_under_negation_and_permutation() {
        let grid = TorusGrid::new(2, 32).unwrap();
        let z = Complex::new(1.0, 1.0);
        let a = lattice_kernel(2, z, &[2, 1], &grid).unwrap().value;
        let b = lattice_kernel(2, z, &[-2, -1], &grid).unwrap().value;
        let c = lattice_kernel(2, z, &[1, 2], &grid).unwrap().value;
        assert!((a - b).norm() < 1e-13);
        assert!((a - c).norm() < 1e-13);
    }

    #[test]
    fn reflection_for_lower_half_plane() {
        let grid = TorusGrid::new(1, 64).unwrap();
        let z = Complex::new(1.5, 0.8);
        let up = lattice_kernel(1, z, &[1], &grid).unwrap().value;
        let dn = lattice_kernel(1, z.conj(), &[1], &grid).unwrap().value;
        assert_eq!(up.conj(), dn);
        assert!(lattice_kernel(1, Complex::new(1.0, 0.0), &[0], &grid).is_err());
    }

    #[test]
    fn aliasing_guard() {
        let grid = TorusGrid::new(1, 12).unwrap();
        assert!(lattice_kernel(1, Complex::new(1.0, 1.0), &[5], &grid).is_err());
    }

    #[test]
    fn box_kernel_matches_single_evaluations() {
        let grid = TorusGrid::new(2, 24).unwrap();
        let z = Complex::new(3.0, 0.5);
        let boxk = lattice_kernel_box(2, z, 2, &grid).unwrap();
        for n in [[0i64, 0], [1, -2], [-2, 2]] {
            let single = torus_sum(2, z, &n, 24);
            let batch = boxk.get(&n).unwrap();
            assert!((single - batch).norm() < 1e-13, "n = {n:?}");
        }
        assert!(boxk.get(&[3, 0]).is_none());
    }

    #[test]
    fn stencil_identity_is_quadrature_exact() {
        // (−Δ − z) k(z,·)[n] = [n = 0] exactly on the grid for |n|+1 < N.
        let grid = TorusGrid::new(2, 24).unwrap();
        let z = Complex::new(3.0, 0.5);
        let boxk = lattice_kernel_box(2, z, 3, &grid).unwrap();
        for n in [[0i64, 0], [1, 0], [-1, 2], [2, 2]] {
            let lap = crate::lattice::discrete_laplacian_of(
                |m| {
                    boxk.get(m)
                        .ok_or_else(|| Error::OutOfBox(format!("{m:?}")))
                },
                &n,
            )
            .unwrap();
            let expect = if n == [0, 0] {
                Complex::new(1.0, 0.0)
            } else {
                Complex::new(0.0, 0.0)
            };
            let resid = -lap - z * boxk.get(&n).unwrap() - expect;
            assert!(resid.norm() < 1e-12, "n = {n:?}: {resid}");
        }
    }

    #[test]
    fn adaptive_refines_to_tolerance() {
        let ks = lattice_kernel_adaptive(
            1,
            Complex::new(1.0, 0.05),
            &[0],
            1e-10,
            16,
            1 << 14,
        )
        .unwrap();
        let cf = kernel_1d_closed_form(Complex::new(1.0, 0.05), 0).unwrap();
        assert!((ks.value - cf).norm() < 1e-9);
        assert!(ks.error_estimate <= 1e-10);
    }
}
