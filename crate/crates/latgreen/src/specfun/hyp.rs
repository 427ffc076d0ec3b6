//! Gauss hypergeometric series and Chebyshev polynomials of the first kind.

use crate::error::{Error, Result};
use crate::series::SeriesControl;
use crate::util::KahanC;
use crate::Complex;

fn nonpositive_int(x: f64) -> Option<i64> {
    let r = x.round();
    if (x - r).abs() < 1e-12 && r <= 0.0 {
        Some(r as i64)
    } else {
        None
    }
}

/// `F(a,b;c;z) = Σ (a)_k (b)_k / ((c)_k k!) z^k`.
///
/// Terminating cases (`a` or `b` a nonpositive integer) are summed exactly;
/// otherwise `|z| < 1` is required and the tail is certified geometrically.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: Complex, ctl: &SeriesControl) -> Result<Complex> {
    ctl.validate()?;
    let k_end = match (nonpositive_int(a), nonpositive_int(b)) {
        (Some(na), Some(nb)) => Some((-na).min(-nb) as usize),
        (Some(na), None) => Some((-na) as usize),
        (None, Some(nb)) => Some((-nb) as usize),
        (None, None) => None,
    };
    if let Some(nc) = nonpositive_int(c) {
        // (c)_k vanishes from k = 1-c on; only safe when the series stops first.
        let safe = matches!(k_end, Some(ke) if (ke as i64) <= -nc);
        if !safe {
            return Err(Error::Pole(format!(
                "gauss_2f1: c = {c} is a nonpositive integer"
            )));
        }
    }

    if let Some(ke) = k_end {
        // Exact finite sum.
        let mut acc = KahanC::default();
        let mut term = Complex::new(1.0, 0.0);
        for k in 0..=ke {
            acc.add(term);
            let kf = k as f64;
            term = term * ((a + kf) * (b + kf) / ((c + kf) * (kf + 1.0))) * z;
        }
        return Ok(acc.value());
    }

    let zn = z.norm();
    if zn >= 0.97 {
        return Err(Error::Domain(format!(
            "gauss_2f1: |z| = {zn} outside the series domain"
        )));
    }
    if zn == 0.0 {
        return Ok(Complex::new(1.0, 0.0));
    }
    // After k >= j0 the term ratio is provably <= rho = (1+|z|)/2 < 1:
    // (a+k)(b+k)/((c+k)(1+k)) <= ((k+A)/(k-A))^2 <= rho/|z| for k >= j0.
    let rho = (1.0 + zn) / 2.0;
    let amax = a.abs().max(b.abs()).max(c.abs()).max(1.0);
    let eps = (rho / zn).sqrt() - 1.0;
    let j0 = (amax * (2.0 + eps) / eps).ceil() as usize;

    let mut acc = KahanC::default();
    let mut term = Complex::new(1.0, 0.0);
    for k in 0..=ctl.max_total_degree.max(j0 + 4) {
        acc.add(term);
        if k >= j0 && term.norm() * rho / (1.0 - rho) <= ctl.stop_tol(acc.value().norm()) {
            return Ok(acc.value());
        }
        if k > ctl.max_total_degree && k > j0 {
            break;
        }
        let kf = k as f64;
        term = term * ((a + kf) * (b + kf) / ((c + kf) * (kf + 1.0))) * z;
    }
    Err(Error::ConvergenceBudget(format!(
        "gauss_2f1(a={a},b={b},c={c},|z|={zn}) did not certify within budget"
    )))
}

/// Chebyshev polynomial `T_n(x)` by the three-term recurrence.
pub fn chebyshev_t(n: u32, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = x;
    for _ in 1..n {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctl() -> SeriesControl {
        SeriesControl::default()
    }

    #[test]
    fn at_zero_is_one() {
        let v = gauss_2f1(0.3, 1.7, 0.9, Complex::new(0.0, 0.0), &ctl()).unwrap();
        assert_eq!(v, Complex::new(1.0, 0.0));
    }

    #[test]
    fn terminating_matches_trig() {
        // F(n, -n; 1/2; x^2) = cos(2n asin x) at n = 3, x = 0.4.
        let x = 0.4f64;
        let v = gauss_2f1(3.0, -3.0, 0.5, Complex::new(x * x, 0.0), &ctl()).unwrap();
        let expect = (6.0 * x.asin()).cos();
        assert!((v.re - expect).abs() < 1e-13 && v.im == 0.0);
    }

    #[test]
    fn euler_transformation() {
        let (a, b, c) = (0.3, 0.7, 1.5);
        let z = Complex::new(0.25, 0.0);
        let lhs = gauss_2f1(a, b, c, z, &ctl()).unwrap();
        let pow = (Complex::new(1.0, 0.0) - z).powf(c - a - b);
        let rhs = pow * gauss_2f1(c - a, c - b, c, z, &ctl()).unwrap();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn bad_c_is_pole_unless_terminating_first() {
        assert!(gauss_2f1(0.3, 0.7, -1.0, Complex::new(0.1, 0.0), &ctl()).is_err());
        // a = -1 terminates at k = 1 before (c)_k vanishes at k = 2.
        let v = gauss_2f1(-1.0, 2.0, -1.0, Complex::new(0.3, 0.0), &ctl()).unwrap();
        assert!((v.re - (1.0 + 0.3 * 2.0 * -1.0 / -1.0)).abs() < 1e-15);
    }

    #[test]
    fn chebyshev_values() {
        assert_eq!(chebyshev_t(0, 0.77), 1.0);
        assert!((chebyshev_t(2, 0.5) + 0.5).abs() < 1e-15);
        let th = 0.3f64;
        assert!((chebyshev_t(5, th.cos()) - (1.5f64).cos()).abs() < 1e-13);
        // T_n(cos t) = cos(n t) for a spread of degrees.
        for n in [1u32, 7, 16, 33, 64] {
            let t = 0.9f64;
            assert!(
                (chebyshev_t(n, t.cos()) - (n as f64 * t).cos()).abs() < 1e-12,
                "n={n}"
            );
        }
    }
}
