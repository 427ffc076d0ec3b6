//! Discrete Laplacian on `Z^d`: symbol, resolvent kernel, critical-point
//! bookkeeping, Lauricella-type branching coefficients `E^(l)(w,n)`,
//! lattice sphere averages, `φ±`/`ψ±`, and the branching decomposition
//! near a threshold `4q`.

mod branching;
mod kernel;
mod lauricella;
mod phi_psi;
mod sphere;
mod symbol;

pub use branching::{
    decompose_lattice, decompose_lattice_full, lattice_branching, lattice_branching_boundary,
};
pub use kernel::{
    kernel_1d_closed_form, lattice_kernel, lattice_kernel_adaptive, lattice_kernel_box, BoxKernel,
};
pub use lauricella::{e_l, e_sum};
pub use phi_psi::{lattice_f_pm, lattice_phi_psi, lattice_phi_psi_contour, PhiPsi};
pub use sphere::{lattice_sphere_average, PhaseKind};
pub use symbol::{
    apply_discrete_laplacian, discrete_laplacian_of, enumerate_critical_points, theta_symbol,
    LatticeArray,
};

use crate::error::{Error, Result};
use crate::Complex;

/// Threshold bookkeeping: dimension `d`, sign count `q` (so `p = d − q`),
/// threshold value `4q`, and `L = C(d,q)` critical points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ThresholdContext {
    pub d: u32,
    pub q: u32,
}

impl ThresholdContext {
    pub fn new(d: u32, q: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::Config("dimension must be >= 1".into()));
        }
        if q > d {
            return Err(Error::Config(format!("q = {q} exceeds d = {d}")));
        }
        Ok(ThresholdContext { d, q })
    }

    pub fn p(&self) -> u32 {
        self.d - self.q
    }

    pub fn threshold_value(&self) -> f64 {
        4.0 * self.q as f64
    }

    /// Number of critical points `C(d, q)`.
    pub fn critical_count(&self) -> u64 {
        binomial(self.d as u64, self.q as u64)
    }

    /// Whether `d` is odd (square-root branching) or even (log branching).
    pub fn is_odd_dimension(&self) -> bool {
        self.d % 2 == 1
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// A critical point `θ^(l) ∈ {0,π}^d` stored as its sign vector:
/// `+1 ↔ θ_j = 0`, `−1 ↔ θ_j = π`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignPattern {
    pub signs: Vec<i8>,
}

impl SignPattern {
    /// The canonical pattern `θ^(1) = (0,…,0,π,…,π)`.
    pub fn canonical(ctx: &ThresholdContext) -> Self {
        let mut signs = vec![1i8; ctx.d as usize];
        for s in signs.iter_mut().skip(ctx.p() as usize) {
            *s = -1;
        }
        SignPattern { signs }
    }

    pub fn theta(&self) -> Vec<f64> {
        self.signs
            .iter()
            .map(|&s| if s > 0 { 0.0 } else { std::f64::consts::PI })
            .collect()
    }

    /// Parity of `|n''|` relative to this pattern: sum of `|n_j|` over the
    /// coordinates where `θ_j = π`.
    pub fn npp_parity(&self, n: &[i64]) -> bool {
        let mut total = 0i64;
        for (&s, &nj) in self.signs.iter().zip(n) {
            if s < 0 {
                total += nj.abs();
            }
        }
        total % 2 != 0
    }
}

/// One evaluated kernel sample with its quadrature record.
#[derive(Clone, Debug)]
pub struct KernelSample {
    pub z: Complex,
    pub n: Vec<i64>,
    pub value: Complex,
    pub quadrature_nodes: u64,
    pub error_estimate: f64,
}
