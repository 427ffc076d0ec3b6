//! Compensated accumulation and the fixed complex text codec.

use num_complex::Complex64;

/// Neumaier-compensated scalar accumulator.
///
/// All reductions in this crate sum in a fixed documented order through
/// one of these, so results are reproducible bit-for-bit across runs and
/// thread counts.
#[derive(Clone, Copy, Debug, Default)]
pub struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    /// Fold another partial sum into this one (ordered merge).
    pub fn merge(&mut self, other: &Kahan) {
        self.add(other.sum);
        self.add(other.comp);
    }
}

/// Compensated accumulator for complex values.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanC {
    re: Kahan,
    im: Kahan,
}

impl KahanC {
    pub fn add(&mut self, v: Complex64) {
        self.re.add(v.re);
        self.im.add(v.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }

    pub fn merge(&mut self, other: &KahanC) {
        self.re.merge(&other.re);
        self.im.merge(&other.im);
    }
}

/// Integer power with the convention `z^0 == 1` for every `z`, including 0.
pub fn cpowi(z: Complex64, k: i32) -> Complex64 {
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let mut base = if k > 0 { z } else { z.inv() };
    let mut e = k.unsigned_abs();
    let mut acc = Complex64::new(1.0, 0.0);
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

/// `i^k` from `k mod 4` exactly, never via complex exponentiation.
pub fn i_pow(k: i64) -> Complex64 {
    match k.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// 17-significant-digit decimal formatting (round-trip safe).
pub fn fmt_f64(v: f64) -> String {
    format!("{:.16e}", v)
}

/// Complex number in `a+bi` text form, 17 significant digits per part.
pub fn fmt_complex(z: Complex64) -> String {
    if z.im >= 0.0 || z.im.is_nan() {
        format!("{}+{}i", fmt_f64(z.re), fmt_f64(z.im))
    } else {
        format!("{}-{}i", fmt_f64(z.re), fmt_f64(-z.im))
    }
}

/// Parse `a+bi` style complex text: `1.5`, `-2i`, `0.1+0.5i`, `1e-2-3e1i`, `i`.
pub fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    if let Some(body) = t.strip_suffix(['i', 'j']) {
        // Find the sign that splits real and imaginary parts: the last
        // '+'/'-' not at position 0 and not part of an exponent.
        let bytes = body.as_bytes();
        let mut split = None;
        for (idx, &b) in bytes.iter().enumerate().skip(1) {
            if (b == b'+' || b == b'-') && bytes[idx - 1] != b'e' && bytes[idx - 1] != b'E' {
                split = Some(idx);
            }
        }
        match split {
            Some(idx) => {
                let re: f64 = body[..idx]
                    .parse()
                    .map_err(|e| format!("bad real part in {s:?}: {e}"))?;
                let imtxt = &body[idx..];
                let im: f64 = match imtxt {
                    "+" => 1.0,
                    "-" => -1.0,
                    _ => imtxt
                        .parse()
                        .map_err(|e| format!("bad imaginary part in {s:?}: {e}"))?,
                };
                Ok(Complex64::new(re, im))
            }
            None => {
                let im: f64 = match body {
                    "" | "+" => 1.0,
                    "-" => -1.0,
                    _ => body
                        .parse()
                        .map_err(|e| format!("bad imaginary part in {s:?}: {e}"))?,
                };
                Ok(Complex64::new(0.0, im))
            }
        }
    } else {
        let re: f64 = t
            .parse()
            .map_err(|e| format!("bad complex literal {s:?}: {e}"))?;
        Ok(Complex64::new(re, 0.0))
    }
}
