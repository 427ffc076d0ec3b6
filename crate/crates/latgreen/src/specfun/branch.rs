//! Square root with `Im √w > 0` on `C \ [0,∞)` and the principal logarithm.

use crate::error::{Error, Result};
use crate::Complex;

/// `√w` with positive imaginary part, defined off the cut `[0,∞)`.
pub fn branch_sqrt(w: Complex) -> Result<Complex> {
    if w.im == 0.0 && w.re >= 0.0 {
        return Err(Error::Domain(format!(
            "branch_sqrt: {w} lies on the cut [0,inf)"
        )));
    }
    Ok(upper_sqrt(w))
}

/// Boundary mode: for real `w ≥ 0` return the upper-half-plane limit `+√w`.
pub fn branch_sqrt_boundary(w: Complex) -> Complex {
    if w.im == 0.0 && w.re >= 0.0 {
        Complex::new(w.re.sqrt(), 0.0)
    } else {
        upper_sqrt(w)
    }
}

fn upper_sqrt(w: Complex) -> Complex {
    let s = w.sqrt();
    if s.im < 0.0 || (s.im == 0.0 && s.re < 0.0) {
        -s
    } else {
        s
    }
}

/// Principal logarithm, `Im log w ∈ (−π, π)`, defined off the cut `(−∞,0]`.
pub fn branch_log(w: Complex) -> Result<Complex> {
    if w.im == 0.0 && w.re <= 0.0 {
        return Err(Error::Domain(format!(
            "branch_log: {w} lies on the cut (-inf,0]"
        )));
    }
    Ok(w.ln())
}

/// Boundary mode: for real `w < 0` return the upper limit `ln|w| + iπ`.
pub fn branch_log_boundary(w: Complex) -> Result<Complex> {
    if w.im == 0.0 && w.re <= 0.0 {
        if w.re == 0.0 {
            return Err(Error::Domain("branch_log: log of zero".into()));
        }
        Ok(Complex::new((-w.re).ln(), std::f64::consts::PI))
    } else {
        Ok(w.ln())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    #[test]
    fn sqrt_of_minus_one_is_i() {
        let s = branch_sqrt(Complex::new(-1.0, 0.0)).unwrap();
        assert!((s - Complex::new(0.0, 1.0)).norm() < 1e-15);
        let s4 = branch_sqrt(Complex::new(-4.0, 0.0)).unwrap();
        assert!((s4 - Complex::new(0.0, 2.0)).norm() < 1e-15);
    }

    #[test]
    fn sqrt_of_i_is_polar_midpoint() {
        let s = branch_sqrt(Complex::new(0.0, 1.0)).unwrap();
        let expect = Complex::new(FRAC_PI_4.cos(), FRAC_PI_4.sin());
        assert!((s - expect).norm() < 1e-15);
    }

    #[test]
    fn sqrt_cut_is_rejected_and_boundary_mode_takes_upper_limit() {
        assert!(branch_sqrt(Complex::new(2.0, 0.0)).is_err());
        assert!(branch_sqrt(Complex::new(0.0, 0.0)).is_err());
        let b = branch_sqrt_boundary(Complex::new(4.0, 0.0));
        assert_eq!(b, Complex::new(2.0, 0.0));
        // Just above the cut the full branch agrees with the boundary value.
        let s = branch_sqrt(Complex::new(4.0, 1e-12)).unwrap();
        assert!((s - b).norm() < 1e-10);
    }

    #[test]
    fn log_basic_values() {
        assert!((branch_log(Complex::new(1.0, 0.0)).unwrap()).norm() < 1e-15);
        let li = branch_log(Complex::new(0.0, 1.0)).unwrap();
        assert!((li - Complex::new(0.0, PI / 2.0)).norm() < 1e-15);
        assert!(branch_log(Complex::new(-1.0, 0.0)).is_err());
        let lb = branch_log_boundary(Complex::new(-1.0, 0.0)).unwrap();
        assert!((lb - Complex::new(0.0, PI)).norm() < 1e-15);
    }

    #[test]
    fn log_antisymmetry_under_inversion() {
        let w = Complex::new(2.0, 3.0);
        let a = branch_log(w).unwrap();
        let b = branch_log(w.inv()).unwrap();
        assert!((a + b).norm() < 1e-14);
    }
}
