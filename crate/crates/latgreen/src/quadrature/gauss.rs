//! Composite Gauss–Legendre quadrature on real segments.

use crate::error::{Error, Result};
use crate::util::KahanC;
use crate::Complex;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Nodes and weights of the `order`-point Gauss–Legendre rule on `[-1, 1]`,
/// computed by Newton iteration on the Legendre recurrence and cached.
pub fn gauss_legendre(order: usize) -> Arc<Vec<(f64, f64)>> {
    assert!(order >= 1, "Gauss order must be positive");
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<(f64, f64)>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&order) {
        return hit.clone();
    }
    let rule = Arc::new(compute_rule(order));
    cache.lock().unwrap().insert(order, rule.clone());
    rule
}

fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    // (P_n(x), P_n'(x))
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn compute_rule(n: usize) -> Vec<(f64, f64)> {
    let mut out = vec![(0.0, 0.0); n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Initial guess: Chebyshev-like angle.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..60 {
            let (p, dp) = legendre_pair(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_pair(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[i] = (-x.abs(), w);
        out[n - 1 - i] = (x.abs(), w);
    }
    if n % 2 == 1 {
        let (_, dp) = legendre_pair(n, 0.0);
        out[n / 2] = (0.0, 2.0 / (dp * dp));
    }
    out
}

/// Composite Gauss–Legendre integral of `f` over `[a, b]` with `panels`
/// equal panels of the given order.
pub fn gauss_segment<F>(mut f: F, a: f64, b: f64, panels: usize, order: usize) -> Result<Complex>
where
    F: FnMut(f64) -> Complex,
{
    assert!(panels >= 1 && order >= 1);
    let rule = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut acc = KahanC::default();
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        let half = 0.5 * h;
        for &(x, w) in rule.iter() {
            let t = mid + half * x;
            let v = f(t);
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonfiniteIntegrand(format!("t = {t}")));
            }
            acc.add(v * (w * half));
        }
    }
    Ok(acc.value())
}

/// Same integral plus a refinement-based error estimate
/// `|I(panels) − I(panels/2)|`; doubling the panel count changes the
/// result by less than this for analytic integrands.
pub fn gauss_segment_estimate<F>(
    mut f: F,
    a: f64,
    b: f64,
    panels: usize,
    order: usize,
) -> Result<(Complex, f64)>
where
    F: FnMut(f64) -> Complex,
{
    let coarse = gauss_segment(&mut f, a, b, (panels / 2).max(1), order)?;
    let fine = gauss_segment(&mut f, a, b, panels, order)?;
    Ok((fine, (fine - coarse).norm()))
}
