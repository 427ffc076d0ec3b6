//! Kernels and branching functions for the ultra-hyperbolic model operator
//! `□_{p,q} = ∂²_1 + ⋯ + ∂²_p − ∂²_{p+1} − ⋯ − ∂²_{p+q}` at its threshold.
//!
//! The truncated resolvent kernel `k_γ(z,x)` is evaluated by quadrature of
//! its radial (elliptic) or split-spherical two-radius (hyperbolic) form;
//! its branching part is `iπ(√z)^{d−2}E(z(x'²−x''²))` for odd `d` and
//! `−(√z)^{d−2}(log z)E(z(x'²−x''²))` for even `d`, evaluated on the upper
//! half-plane with the lower half reached by reflection only.

mod branching;
mod entire;
mod kernel;
mod phi_psi;
mod sphere;

pub use branching::{
    continuum_branching, continuum_branching_boundary, decompose_continuum,
    decompose_continuum_full,
};
pub use entire::e_entire;
pub use kernel::{continuum_kernel, QuadValue};
pub use phi_psi::{f_pm, phi_pm, phi_pm_contour, psi_pm, psi_pm_contour};
pub use sphere::sphere_average_e;

use crate::error::{Error, Result};
use crate::Complex;

/// Signature `(p, q)` of the operator, `d = p + q ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Signature {
    pub p: u32,
    pub q: u32,
}

/// Parity class of a signature; it decides which of `φ±`, `ψ±` survive
/// and whether the kernel branches as a square root or a logarithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityClass {
    /// `q = 0` or `p = 0`.
    Elliptic,
    OddOdd,
    EvenEven,
    /// odd-even or even-odd.
    Mixed,
}

impl Signature {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if p + q == 0 {
            return Err(Error::Config("signature needs d = p + q >= 1".into()));
        }
        Ok(Signature { p, q })
    }

    pub fn d(&self) -> u32 {
        self.p + self.q
    }

    pub fn parity_class(&self) -> ParityClass {
        if self.p == 0 || self.q == 0 {
            ParityClass::Elliptic
        } else if self.p % 2 == 1 && self.q % 2 == 1 {
            ParityClass::OddOdd
        } else if self.p % 2 == 0 && self.q % 2 == 0 {
            ParityClass::EvenEven
        } else {
            ParityClass::Mixed
        }
    }
}

/// Point `x = (x', x'') ∈ C^p ⊕ C^q`; the kernels are analytic in `x`.
#[derive(Clone, Debug)]
pub struct SpacePoint {
    pub coords: Vec<Complex>,
}

impl SpacePoint {
    pub fn new(coords: Vec<Complex>) -> Self {
        SpacePoint { coords }
    }

    pub fn from_reals(xs: &[f64]) -> Self {
        SpacePoint {
            coords: xs.iter().map(|&v| Complex::new(v, 0.0)).collect(),
        }
    }

    pub fn zero(d: u32) -> Self {
        SpacePoint {
            coords: vec![Complex::new(0.0, 0.0); d as usize],
        }
    }

    /// Split into `(x', x'')` consistently with the signature.
    pub fn split(&self, sig: Signature) -> Result<(&[Complex], &[Complex])> {
        if self.coords.len() != sig.d() as usize {
            return Err(Error::Config(format!(
                "point has {} coordinates, signature needs {}",
                self.coords.len(),
                sig.d()
            )));
        }
        Ok(self.coords.split_at(sig.p as usize))
    }

    pub fn conj(&self) -> Self {
        SpacePoint {
            coords: self.coords.iter().map(|c| c.conj()).collect(),
        }
    }
}

/// Which of `f₊`/`f₋` (and `φ±`, `ψ±`) is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum SignChoice {
    Plus,
    Minus,
}

impl SignChoice {
    pub fn as_f64(self) -> f64 {
        match self {
            SignChoice::Plus => 1.0,
            SignChoice::Minus => -1.0,
        }
    }
}

/// Branching form tag: square root for odd `d`, logarithm for even `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchForm {
    SqrtBranch,
    LogBranch,
}

impl BranchForm {
    pub fn for_dimension(d: u32) -> Self {
        if d % 2 == 1 {
            BranchForm::SqrtBranch
        } else {
            BranchForm::LogBranch
        }
    }
}

/// A kernel value split into its branching part and analytic remainder.
#[derive(Clone, Copy, Debug, serde::Serialize, serde::Deserialize)]
pub struct BranchingDecomposition {
    pub branching_value: Complex,
    pub remainder_value: Complex,
    pub form: BranchForm,
}

/// Symbol `Ξ(ξ) = ξ'² − ξ''²` of `−□_{p,q}` in Fourier variables.
pub fn xi_symbol(sig: Signature, xi: &[f64]) -> f64 {
    assert_eq!(xi.len(), sig.d() as usize, "xi must have length d");
    let mut s = 0.0;
    for (j, &v) in xi.iter().enumerate() {
        if (j as u32) < sig.p {
            s += v * v;
        } else {
            s -= v * v;
        }
    }
    s
}
