//! Dilogarithm `Li₂(w) = Σ w^k/k²`, continued to `C \ [1,∞)`.
//!
//! Continuation strategy, in order: direct series for `|w| ≤ 0.8`, the
//! complement identity for `|1−w| ≤ 0.8`, the Landen transform when
//! `|w/(w−1)| ≤ 0.8`, the inversion identity for `|w| ≥ 3` (conjugation
//! symmetry handles the lower half-plane), and a Bernoulli series in
//! `u = −log(1−w)` for the remaining unit-circle annulus. Keeping the
//! inversion identity out of the moderate-|w| routes leaves it available
//! as an independent cross-check there.

use crate::error::{Error, Result};
use crate::series::SeriesControl;
use crate::util::KahanC;
use crate::Complex;

const PI: f64 = std::f64::consts::PI;

/// `Li₂(w)` on `C \ [1,∞)`.
pub fn dilog(w: Complex, ctl: &SeriesControl) -> Result<Complex> {
    ctl.validate()?;
    if w.im == 0.0 && w.re >= 1.0 {
        return Err(Error::Domain(format!("dilog: {w} lies on the cut [1,inf)")));
    }
    dilog_inner(w, ctl, 0)
}

fn dilog_inner(w: Complex, ctl: &SeriesControl, depth: u8) -> Result<Complex> {
    debug_assert!(depth < 4);
    let one = Complex::new(1.0, 0.0);
    if w.norm() <= 0.8 {
        return dilog_series(w, ctl);
    }
    let om = one - w;
    if om.norm() <= 0.8 {
        // Li2(w) = π²/6 − log w · log(1−w) − Li2(1−w)
        let rest = dilog_series(om, ctl)?;
        return Ok(Complex::new(PI * PI / 6.0, 0.0) - w.ln() * om.ln() - rest);
    }
    let landen = w / (w - one);
    if landen.norm() <= 0.8 {
        // Li2(w) = −Li2(w/(w−1)) − ½ log²(1−w)
        let rest = dilog_series(landen, ctl)?;
        let l = om.ln();
        return Ok(-rest - 0.5 * l * l);
    }
    if w.norm() >= 3.0 {
        if w.im < 0.0 {
            return Ok(dilog_inner(w.conj(), ctl, depth + 1)?.conj());
        }
        // Li2(w) = −Li2(1/w) − ½ log²(−w) − π²/6, valid for Im w ≥ 0 off the cut.
        let rest = dilog_series(w.inv(), ctl)?;
        let l = (-w).ln();
        return Ok(-rest - 0.5 * l * l - Complex::new(PI * PI / 6.0, 0.0));
    }
    dilog_bernoulli(w, ctl)
}

/// Direct series, certified geometric with ratio `|w|`.
fn dilog_series(w: Complex, ctl: &SeriesControl) -> Result<Complex> {
    let r = w.norm();
    debug_assert!(r <= 0.8 + 1e-12);
    if r == 0.0 {
        return Ok(Complex::new(0.0, 0.0));
    }
    let mut acc = KahanC::default();
    let mut pw = w;
    for k in 1..=ctl.max_total_degree {
        let term = pw / ((k * k) as f64);
        acc.add(term);
        if term.norm() * r / (1.0 - r) <= ctl.stop_tol(acc.value().norm()) {
            return Ok(acc.value());
        }
        pw *= w;
    }
    Err(Error::ConvergenceBudget(format!(
        "dilog series at |w|={r} did not certify within degree {}",
        ctl.max_total_degree
    )))
}

/// Even-index Bernoulli numbers B_2..B_56.
const BERNOULLI_EVEN: [f64; 28] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
    2577687858367.0 / 6.0,
    -26315271553053477373.0 / 1919190.0,
    2929993913841559.0 / 6.0,
    -261082718496449122051.0 / 13530.0,
    1520097643918070802691.0 / 1806.0,
    -27833269579301024235023.0 / 690.0,
    596451111593912163277961.0 / 282.0,
    -5609403368997817686249127547.0 / 46410.0,
    495057205241079648212477525.0 / 66.0,
    -801165718135489957347924991853.0 / 1590.0,
    29149963634884862421418123812691.0 / 798.0,
    -2479392929313226753685415739663229.0 / 870.0,
];

/// `Li₂(w) = u − u²/4 + Σ_k B_{2k} u^{2k+1}/(2k+1)!` with `u = −log(1−w)`.
///
/// Tail certified through `|B_{2k}| ≤ 4 (2k)!/(2π)^{2k}`, a geometric bound
/// with ratio `(|u|/2π)²`.
fn dilog_bernoulli(w: Complex, ctl: &SeriesControl) -> Result<Complex> {
    let u = -(Complex::new(1.0, 0.0) - w).ln();
    let un = u.norm();
    let ratio = (un / (2.0 * PI)).powi(2);
    if ratio >= 0.5 {
        return Err(Error::ConvergenceBudget(format!(
            "dilog: |log(1-w)| = {un} too large for the Bernoulli route"
        )));
    }
    let mut acc = KahanC::default();
    acc.add(u);
    acc.add(-u * u / 4.0);
    // term_k = B_{2k} u^{2k+1} / (2k+1)!
    let mut upow = u * u * u; // u^{2k+1} at k=1
    let mut fact = 6.0; // (2k+1)! at k=1
    for (idx, &b) in BERNOULLI_EVEN.iter().enumerate() {
        let k = idx + 1;
        acc.add(b * upow / fact);
        let tail = 4.0 * un / (2.0 * k as f64 + 3.0) * ratio.powi(k as i32 + 1) / (1.0 - ratio);
        if tail <= ctl.stop_tol(acc.value().norm()) {
            return Ok(acc.value());
        }
        upow *= u * u;
        fact *= (2 * k + 2) as f64 * (2 * k + 3) as f64;
    }
    Err(Error::ConvergenceBudget(
        "dilog: Bernoulli series exhausted its table".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctl() -> SeriesControl {
        // Identity checks push the series tails well below the residual
        // tolerances being asserted.
        SeriesControl {
            abs_tol: 1e-15,
            rel_tol: 1e-15,
            ..SeriesControl::default()
        }
    }

    #[test]
    fn classical_values() {
        assert_eq!(dilog(Complex::new(0.0, 0.0), &ctl()).unwrap().norm(), 0.0);
        let v = dilog(Complex::new(0.5, 0.0), &ctl()).unwrap();
        let expect = PI * PI / 12.0 - 0.5 * 2f64.ln().powi(2);
        assert!((v.re - expect).abs() < 1e-14 && v.im.abs() < 1e-15);
        let v = dilog(Complex::new(-1.0, 0.0), &ctl()).unwrap();
        assert!((v.re + PI * PI / 12.0).abs() < 1e-14);
    }

    #[test]
    fn cut_rejected() {
        assert!(dilog(Complex::new(1.0, 0.0), &ctl()).is_err());
        assert!(dilog(Complex::new(3.7, 0.0), &ctl()).is_err());
    }

    #[test]
    fn routes_agree_on_overlaps() {
        // Interior point reachable by both the direct series and Landen.
        let w = Complex::new(-0.5, 0.3); // |w| ~ 0.58, |w/(w-1)| ~ 0.38
        let a = dilog_series(w, &ctl()).unwrap();
        let landen = w / (w - Complex::new(1.0, 0.0));
        let b = -dilog_series(landen, &ctl()).unwrap()
            - 0.5 * (Complex::new(1.0, 0.0) - w).ln().powi(2);
        assert!((a - b).norm() < 1e-14);
        // Annulus point: Bernoulli route vs complement route.
        let w = Complex::new(0.62, 0.82);
        let bern = dilog_bernoulli(w, &ctl()).unwrap();
        let om = Complex::new(1.0, 0.0) - w;
        let compl = Complex::new(PI * PI / 6.0, 0.0) - w.ln() * om.ln()
            - dilog_inner(om, &ctl(), 1).unwrap();
        assert!((bern - compl).norm() < 1e-13);
    }

    #[test]
    fn inversion_identity_nontautological_region() {
        // At w = 1+2i the implementation takes a non-inversion route, so the
        // inversion identity is a real cross-check there.
        let w = Complex::new(1.0, 2.0);
        let li_w = dilog(w, &ctl()).unwrap();
        let li_inv = dilog(w.inv(), &ctl()).unwrap();
        let l = (-w).ln();
        let resid = li_inv + li_w + 0.5 * l * l + Complex::new(PI * PI / 6.0, 0.0);
        assert!(resid.norm() < 1e-12, "residual {}", resid.norm());
    }

    #[test]
    fn conjugation_symmetry() {
        for &re in &[-2.5, -0.3, 0.4, 0.9, 1.4, 4.0] {
            for &im in &[0.1, 0.9, 2.0] {
                let w = Complex::new(re, im);
                let a = dilog(w, &ctl()).unwrap();
                let b = dilog(w.conj(), &ctl()).unwrap();
                assert!((a.conj() - b).norm() < 1e-13, "w={w}");
            }
        }
    }
}
