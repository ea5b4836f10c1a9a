use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A complex polynomial map of degree at least two, coefficients ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

/// `e^{2πi(√5−1)/2}`.
pub fn golden_multiplier() -> Complex64 {
    let theta = (5f64.sqrt() - 1.0) / 2.0;
    Complex64::from_polar(1.0, 2.0 * PI * theta)
}

impl Polynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coefficient".into()));
        }
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        if coeffs.len() < 3 {
            return Err(Error::InvalidArgument(format!(
                "degree must be at least 2, got {}",
                coeffs.len().saturating_sub(1)
            )));
        }
        Ok(Self { coeffs })
    }

    /// `z² + c`.
    pub fn quadratic(c: Complex64) -> Self {
        Self::new(vec![c, Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]).unwrap()
    }

    /// `z² + λz` with the golden-mean rotation number at the fixed point 0.
    pub fn siegel_golden() -> Self {
        Self::new(vec![
            Complex64::new(0.0, 0.0),
            golden_multiplier(),
            Complex64::new(1.0, 0.0),
        ])
        .unwrap()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
    }

    /// `(f(z), f'(z))` by a single Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &a in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        (p, dp)
    }

    pub fn derivative_at(&self, z: Complex64) -> Complex64 {
        self.eval_with_derivative(z).1
    }

    /// Coefficients of `f'`.
    pub fn derivative_coeffs(&self) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &a)| a * k as f64)
            .collect()
    }

    /// Coefficients of `e ↦ f(y + e)`, by repeated synthetic division.
    pub fn taylor_coeffs(&self, y: Complex64) -> Vec<Complex64> {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for k in 0..n {
            for j in (k..n - 1).rev() {
                let next = a[j + 1];
                a[j] += y * next;
            }
        }
        a
    }

    /// `max(4, 2·max|a_k|)`.
    pub fn escape_radius(&self) -> f64 {
        let m = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        (2.0 * m).max(4.0)
    }

    /// `f^n(z)` together with `(f^n)'(z)` by the chain rule.
    pub fn iterate_with_derivative(&self, z: Complex64, n: usize) -> (Complex64, Complex64) {
        let mut w = z;
        let mut dw = Complex64::new(1.0, 0.0);
        for _ in 0..n {
            let (fw, dfw) = self.eval_with_derivative(w);
            dw *= dfw;
            w = fw;
        }
        (w, dw)
    }

    pub fn iterate(&self, z: Complex64, n: usize) -> Complex64 {
        (0..n).fold(z, |w, _| self.eval(w))
    }

    /// Expanded coefficients of `f^n`.
    pub fn iterate_coeffs(&self, n: usize) -> Vec<Complex64> {
        let mut acc = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        for _ in 0..n {
            acc = compose(&self.coeffs, &acc);
        }
        acc
    }
}

fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients of `outer(inner(z))`.
fn compose(outer: &[Complex64], inner: &[Complex64]) -> Vec<Complex64> {
    let mut acc = vec![*outer.last().unwrap()];
    for &a in outer.iter().rev().skip(1) {
        acc = poly_mul(&acc, inner);
        acc[0] += a;
    }
    acc
}

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("invalid complex number {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // Split at the last sign that is not part of an exponent or the leading sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re_part, im_part) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("", body),
    };
    let re = if re_part.is_empty() {
        0.0
    } else {
        re_part.parse::<f64>().map_err(|_| bad())?
    };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re, im))
}

pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    /// Map specifications: `quad:c=<complex>`, `siegel:golden`, or a
    /// comma-separated ascending coefficient list such as `-1,0,1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(c) = s.strip_prefix("quad:c=") {
            return Ok(Self::quadratic(parse_complex(c)?));
        }
        if s == "siegel:golden" {
            return Ok(Self::siegel_golden());
        }
        let coeffs = s.split(',').map(parse_complex).collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|&c| format_complex(c)).collect();
        f.write_str(&parts.join(","))
    }
}
