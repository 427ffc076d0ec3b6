//! Gamma at half-integer arguments via exact double-factorial formulas:
//! `Γ(1/2+m) = (2m−1)!!√π/2^m` and `Γ(1/2−m) = (−2)^m√π/(2m−1)!!`,
//! plus the Pochhammer rising factorial.

use crate::error::{Error, Result};

/// A half-integer stored exactly as `twice/2`, so indices like `1/2 ± n`
/// and `|α| + d/2` carry no floating rounding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HalfInteger {
    twice: i64,
}

impl HalfInteger {
    pub fn new(twice: i64) -> Self {
        HalfInteger { twice }
    }

    pub fn from_int(n: i64) -> Self {
        HalfInteger { twice: 2 * n }
    }

    pub fn twice(self) -> i64 {
        self.twice
    }

    pub fn value(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn is_nonpositive_integer(self) -> bool {
        self.is_integer() && self.twice <= 0
    }

    pub fn plus_int(self, k: i64) -> Self {
        HalfInteger {
            twice: self.twice + 2 * k,
        }
    }
}

fn double_factorial_odd(m: i64) -> f64 {
    // (2m-1)!! for m >= 0, with (-1)!! = 1.
    let mut p = 1.0;
    let mut j = 1;
    while j <= 2 * m - 1 {
        p *= j as f64;
        j += 2;
    }
    p
}

/// `Γ(x)` for half-integer `x`, exact-formula evaluation.
pub fn gamma_half_integer(x: HalfInteger) -> Result<f64> {
    if x.is_nonpositive_integer() {
        return Err(Error::Pole(format!(
            "gamma_half_integer at nonpositive integer {}",
            x.value()
        )));
    }
    let sqrt_pi = std::f64::consts::PI.sqrt();
    if x.is_integer() {
        let m = x.twice / 2;
        let mut p = 1.0;
        for j in 1..m {
            p *= j as f64;
        }
        Ok(p)
    } else {
        let m = (x.twice - 1) / 2; // x = 1/2 + m, m may be negative
        if m >= 0 {
            Ok(double_factorial_odd(m) * sqrt_pi / 2f64.powi(m as i32))
        } else {
            let mm = -m;
            let sign = if mm % 2 == 0 { 1.0 } else { -1.0 };
            Ok(sign * 2f64.powi(mm as i32) * sqrt_pi / double_factorial_odd(mm))
        }
    }
}

/// `ln Γ(x)` for positive half-integer `x`, accumulated in log space.
pub fn ln_gamma_half_integer(x: HalfInteger) -> Result<f64> {
    if x.twice <= 0 {
        return Err(Error::Domain(format!(
            "ln_gamma_half_integer needs a positive argument, got {}",
            x.value()
        )));
    }
    if x.is_integer() {
        let m = x.twice / 2;
        let mut s = 0.0;
        for j in 1..m {
            s += (j as f64).ln();
        }
        Ok(s)
    } else {
        let m = (x.twice - 1) / 2;
        let mut s = 0.5 * std::f64::consts::PI.ln();
        let mut j = 1;
        while j <= 2 * m - 1 {
            s += (j as f64).ln();
            j += 2;
        }
        s -= m as f64 * 2f64.ln();
        Ok(s)
    }
}

/// Rising factorial `(ν)_k = ν(ν+1)⋯(ν+k−1)`, with `(ν)_0 = 1`.
///
/// The finite-product definition is used, so the value is well defined
/// even where `Γ(ν)` has a pole.
pub fn pochhammer(nu: HalfInteger, k: u32) -> f64 {
    pochhammer_f64(nu.value(), k)
}

/// Rising factorial for a general real base.
pub fn pochhammer_f64(nu: f64, k: u32) -> f64 {
    let mut p = 1.0;
    for j in 0..k {
        p *= nu + j as f64;
    }
    p
}
