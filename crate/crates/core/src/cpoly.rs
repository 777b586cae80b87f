//! Dense complex polynomials and binary forms on `P^1`.
//!
//! Everything here is double precision and dense; the degrees in play never
//! exceed 24. Exact integer arithmetic lives in [`crate::numerology`].

use num_complex::Complex64;
use thiserror::Error;

/// A leading coefficient counts as zero when its magnitude falls below this
/// fraction of the largest coefficient magnitude.
pub const CANONICAL_EPS: f64 = 1e-14;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormError {
    #[error("binary form is identically zero")]
    ZeroForm,
}

/// Univariate polynomial over `C`; `coeffs[k]` multiplies `t^k`.
///
/// Canonical form: nonzero leading coefficient, or the empty list for the
/// zero polynomial.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CPoly {
    coeffs: Vec<Complex64>,
}

impl CPoly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = CPoly { coeffs };
        p.canonicalize();
        p
    }

    pub fn zero() -> Self {
        CPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        CPoly::new(vec![c])
    }

    pub fn one() -> Self {
        CPoly::constant(Complex64::new(1.0, 0.0))
    }

    /// Monic polynomial with exactly the given multiset of roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (k, &c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= r * c;
            }
            coeffs = next;
        }
        // monic by construction, no trimming needed
        CPoly { coeffs }
    }

    fn canonicalize(&mut self) {
        let max_mag = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if max_mag == 0.0 {
            self.coeffs.clear();
            return;
        }
        while let Some(last) = self.coeffs.last() {
            if last.norm() < CANONICAL_EPS * max_mag {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<Complex64> {
        self.coeffs.last().copied()
    }

    pub fn add(&self, other: &CPoly) -> CPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (k, &c) in self.coeffs.iter().enumerate() {
            out[k] += c;
        }
        for (k, &c) in other.coeffs.iter().enumerate() {
            out[k] += c;
        }
        CPoly::new(out)
    }

    pub fn scale(&self, c: Complex64) -> CPoly {
        CPoly::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn mul(&self, other: &CPoly) -> CPoly {
        if self.is_zero() || other.is_zero() {
            return CPoly::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CPoly::new(out)
    }

    pub fn pow(&self, k: u32) -> CPoly {
        let mut out = CPoly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Horner evaluation.
    pub fn eval(&self, t: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> CPoly {
        if self.coeffs.len() <= 1 {
            return CPoly::zero();
        }
        CPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, &c)| c * (k as f64 + 1.0))
                .collect(),
        )
    }
}

/// Degree-`n` homogeneous form on `P^1`; `coeffs[k]` multiplies
/// `x0^k * x1^(n-k)`, so the coefficient list has exactly `n + 1` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryForm {
    degree: usize,
    coeffs: Vec<Complex64>,
}

impl BinaryForm {
    pub fn new(degree: usize, coeffs: Vec<Complex64>) -> Self {
        assert_eq!(
            coeffs.len(),
            degree + 1,
            "binary form needs n+1 coefficients"
        );
        BinaryForm { degree, coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm::new(degree, vec![Complex64::new(0.0, 0.0); degree + 1])
    }

    /// The monomial `x1^n`.
    pub fn x1_power(n: usize) -> Self {
        let mut f = BinaryForm::zero(n);
        f.coeffs[0] = Complex64::new(1.0, 0.0);
        f
    }

    /// `prod_i (x0 - a_i x1)`, degree = number of roots.
    pub fn from_affine_roots(roots: &[Complex64]) -> Self {
        let p = CPoly::from_roots(roots);
        BinaryForm::new(roots.len(), p.coeffs().to_vec())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.max_coeff_norm() == 0.0
    }

    pub fn add(&self, other: &BinaryForm) -> BinaryForm {
        assert_eq!(
            self.degree, other.degree,
            "can only add forms of equal degree"
        );
        BinaryForm::new(
            self.degree,
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }

    pub fn scale(&self, c: Complex64) -> BinaryForm {
        BinaryForm::new(self.degree, self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let n = self.degree + other.degree;
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BinaryForm::new(n, out)
    }

    pub fn pow(&self, k: u32) -> BinaryForm {
        let mut out = BinaryForm::new(0, vec![Complex64::new(1.0, 0.0)]);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, x0: Complex64, x1: Complex64) -> Complex64 {
        let mut out = Complex64::new(0.0, 0.0);
        let mut x0p = Complex64::new(1.0, 0.0);
        let mut pows0 = Vec::with_capacity(self.degree + 1);
        for _ in 0..=self.degree {
            pows0.push(x0p);
            x0p *= x0;
        }
        let mut x1p = Complex64::new(1.0, 0.0);
        for k in (0..=self.degree).rev() {
            out += self.coeffs[k] * pows0[k] * x1p;
            x1p *= x1;
        }
        out
    }

    /// Restrict to the chart `x1 = 1`, returning `f(t, 1)` and the
    /// multiplicity of the root at `[1:0]`.
    pub fn dehomogenize(&self) -> Result<(CPoly, usize), FormError> {
        let p = CPoly::new(self.coeffs.clone());
        match p.degree() {
            None => Err(FormError::ZeroForm),
            Some(d) => Ok((p, self.degree - d)),
        }
    }

    /// Substitute `x0 -> m[0][0] x0 + m[0][1] x1`, `x1 -> m[1][0] x0 + m[1][1] x1`.
    pub fn moebius(&self, m: &[[Complex64; 2]; 2]) -> BinaryForm {
        let l0 = BinaryForm::new(1, vec![m[0][1], m[0][0]]);
        let l1 = BinaryForm::new(1, vec![m[1][1], m[1][0]]);
        let mut out = BinaryForm::zero(self.degree);
        for (k, &c) in self.coeffs.iter().enumerate() {
            let term = l0.pow(k as u32).mul(&l1.pow((self.degree - k) as u32));
            out = out.add(&term.scale(c));
        }
        out
    }
}
