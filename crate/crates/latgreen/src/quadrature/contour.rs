//! Contour integrals over circular arcs.
//!
//! Full circles use the periodic trapezoid in angle, which is spectrally
//! accurate there; open arcs use composite Gauss–Legendre in angle, since
//! the trapezoid loses its periodic advantage on open intervals.

use super::gauss::gauss_segment;
use crate::error::{Error, Result};
use crate::util::KahanC;
use crate::Complex;

/// Circular arc `center + radius·e^{iθ}`, `θ ∈ [arg_start, arg_end]`.
#[derive(Clone, Copy, Debug)]
pub struct ArcContour {
    pub center: Complex,
    pub radius: f64,
    pub arg_start: f64,
    pub arg_end: f64,
    pub nodes: usize,
}

impl ArcContour {
    pub fn new(
        center: Complex,
        radius: f64,
        arg_start: f64,
        arg_end: f64,
        nodes: usize,
    ) -> Result<Self> {
        if !(arg_start < arg_end) {
            return Err(Error::Config("ArcContour: arg_start must be < arg_end".into()));
        }
        if nodes < 8 {
            return Err(Error::Config("ArcContour: at least 8 nodes".into()));
        }
        if !(radius > 0.0) {
            return Err(Error::Config("ArcContour: radius must be positive".into()));
        }
        Ok(ArcContour {
            center,
            radius,
            arg_start,
            arg_end,
            nodes,
        })
    }

    /// The unit circle `|σ| = 1`.
    pub fn unit_circle(nodes: usize) -> Self {
        ArcContour::new(
            Complex::new(0.0, 0.0),
            1.0,
            0.0,
            2.0 * std::f64::consts::PI,
            nodes,
        )
        .expect("valid contour")
    }

    /// The quarter arc `Γ(1) = {e^{iθ}; θ ∈ [0, π/2]}`.
    pub fn unit_quarter(nodes: usize) -> Self {
        ArcContour::new(
            Complex::new(0.0, 0.0),
            1.0,
            0.0,
            std::f64::consts::FRAC_PI_2,
            nodes,
        )
        .expect("valid contour")
    }

    fn is_full_circle(&self) -> bool {
        (self.arg_end - self.arg_start - 2.0 * std::f64::consts::PI).abs() < 1e-12
    }

    pub fn point(&self, theta: f64) -> Complex {
        self.center + Complex::from_polar(self.radius, theta)
    }
}

/// `∫_arc f(σ) dσ` with `dσ = i r e^{iθ} dθ`.
pub fn contour_integral<F>(c: &ArcContour, mut f: F) -> Result<Complex>
where
    F: FnMut(Complex) -> Complex,
{
    if c.is_full_circle() {
        let m = c.nodes;
        let step = 2.0 * std::f64::consts::PI / m as f64;
        let mut acc = KahanC::default();
        for j in 0..m {
            let theta = c.arg_start + j as f64 * step;
            let tangent = Complex::from_polar(c.radius, theta) * Complex::new(0.0, 1.0);
            let v = f(c.point(theta));
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonfiniteIntegrand(format!("theta = {theta}")));
            }
            acc.add(v * tangent);
        }
        Ok(acc.value() * step)
    } else {
        let order = 16usize;
        let panels = c.nodes.div_ceil(order).max(1);
        gauss_segment(
            |theta| {
                let tangent = Complex::from_polar(c.radius, theta) * Complex::new(0.0, 1.0);
                f(c.point(theta)) * tangent
            },
            c.arg_start,
            c.arg_end,
            panels,
            order,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn residue_of_inverse() {
        let c = ArcContour::unit_circle(64);
        let v = contour_integral(&c, |s| s.inv()).unwrap();
        assert!((v - Complex::new(0.0, 2.0 * PI)).norm() < 1e-13);
    }

    #[test]
    fn analytic_monomials_vanish() {
        let c = ArcContour::unit_circle(64);
        for k in [-5i32, -2, 1, 3, 10] {
            if k == -1 {
                continue;
            }
            let v = contour_integral(&c, |s| crate::util::cpowi(s, k)).unwrap();
            assert!(v.norm() < 1e-13, "k = {k}: {v}");
        }
    }

    #[test]
    fn quarter_arc_of_inverse() {
        let c = ArcContour::unit_quarter(64);
        let v = contour_integral(&c, |s| s.inv()).unwrap();
        assert!((v - Complex::new(0.0, PI / 2.0)).norm() < 1e-13);
    }

    #[test]
    fn open_arc_analytic_integrand() {
        // ∫ e^σ dσ over the quarter arc = e^i − e^1.
        let c = ArcContour::unit_quarter(64);
        let v = contour_integral(&c, |s| s.exp()).unwrap();
        let expect = Complex::new(0.0, 1.0).exp() - Complex::new(1.0, 0.0).exp();
        assert!((v - expect).norm() < 1e-12);
    }

    #[test]
    fn invalid_contours_rejected() {
        assert!(ArcContour::new(Complex::new(0.0, 0.0), 1.0, 1.0, 0.5, 16).is_err());
        assert!(ArcContour::new(Complex::new(0.0, 0.0), 1.0, 0.0, 1.0, 4).is_err());
    }
}
