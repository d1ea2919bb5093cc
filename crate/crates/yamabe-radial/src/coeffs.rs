//! Coefficient data: even polynomials in the radial coordinate and the
//! (a, b, f) triple entering the operator and the constraint functional.

use crate::error::{Error, Result};

/// Polynomial in r² : c₀ + c₂ r² + c₄ r⁴ + ... given by the list [c₀, c₂, c₄, ...].
#[derive(Debug, Clone, PartialEq)]
pub struct EvenPolynomial {
    pub coeffs: Vec<f64>,
}

impl EvenPolynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "at least the constant coefficient is required");
        Self { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Self { coeffs: vec![c] }
    }

    pub fn eval(&self, r: f64) -> f64 {
        let r2 = r * r;
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * r2 + c;
        }
        acc
    }

    /// d/dr: 2c₂ r + 4c₄ r³ + ...
    pub fn eval_derivative(&self, r: f64) -> f64 {
        let r2 = r * r;
        let mut acc = 0.0;
        for (k, &c) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc = acc * r2 + 2.0 * k as f64 * c;
        }
        acc * r
    }

    /// Coefficient of r² (zero if absent).
    pub fn quadratic_coeff(&self) -> f64 {
        self.coeffs.get(1).copied().unwrap_or(0.0)
    }
}

/// The functions a, b, f of the operator -div_g(a∇·) + b· and the constraint
/// weight f, restricted to radial data.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientField {
    pub a: EvenPolynomial,
    pub b: EvenPolynomial,
    pub f: EvenPolynomial,
}

/// Sample count used for positivity and extremum scans over [r_min, r_max].
const SCAN_SAMPLES: usize = 4096;

impl CoefficientField {
    pub fn new(a: EvenPolynomial, b: EvenPolynomial, f: EvenPolynomial) -> Self {
        Self { a, b, f }
    }

    /// a > 0 and f > 0 on [r_min, r_max], checked by dense sampling including
    /// both endpoints.
    pub fn check_positivity(&self, r_min: f64, r_max: f64) -> Result<()> {
        for (name, poly) in [("a", &self.a), ("f", &self.f)] {
            let (min, at) = scan_min(poly, r_min, r_max);
            if min <= 0.0 {
                return Err(Error::Validation(format!(
                    "coefficient {name} must be positive on [{r_min}, {r_max}]; \
                     found {name}({at:.6}) = {min:.6e}"
                )));
            }
        }
        Ok(())
    }

    pub fn min_a(&self, r_min: f64, r_max: f64) -> f64 {
        scan_min(&self.a, r_min, r_max).0
    }

    pub fn min_f(&self, r_min: f64, r_max: f64) -> f64 {
        scan_min(&self.f, r_min, r_max).0
    }

    pub fn max_f(&self, r_min: f64, r_max: f64) -> f64 {
        scan_max(&self.f, r_min, r_max).0
    }

    pub fn max_abs_b(&self, r_min: f64, r_max: f64) -> f64 {
        let (lo, _) = scan_min(&self.b, r_min, r_max);
        let (hi, _) = scan_max(&self.b, r_min, r_max);
        lo.abs().max(hi.abs())
    }
}

fn scan_min(poly: &EvenPolynomial, r_min: f64, r_max: f64) -> (f64, f64) {
    let mut best = (f64::INFINITY, r_min);
    for i in 0..=SCAN_SAMPLES {
        let r = r_min + (r_max - r_min) * i as f64 / SCAN_SAMPLES as f64;
        let v = poly.eval(r);
        if v < best.0 {
            best = (v, r);
        }
    }
    best
}

fn scan_max(poly: &EvenPolynomial, r_min: f64, r_max: f64) -> (f64, f64) {
    let mut best = (f64::NEG_INFINITY, r_min);
    for i in 0..=SCAN_SAMPLES {
        let r = r_min + (r_max - r_min) * i as f64 / SCAN_SAMPLES as f64;
        let v = poly.eval(r);
        if v > best.0 {
            best = (v, r);
        }
    }
    best
}
