//! Dense complex polynomials in ascending-power order.
//!
//! Everything here is built on a single kernel: synthetic division by
//! `(z - z0)`. One pass is Horner evaluation (and deflation), `m` passes
//! give the first `m` Taylor coefficients at `z0`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Scalar type used throughout the crate.
pub type ComplexScalar = Complex64;

/// A complex polynomial `p(z) = sum_j coeffs[j] * z^j`.
///
/// Coefficients are stored in ascending order and trailing (highest-power)
/// coefficients that are negligible relative to the largest one are trimmed
/// on construction, so `leading()` is nonzero unless `p` is identically zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Builds a normalized polynomial.
    ///
    /// A top coefficient is dropped while `|c| <= f64::EPSILON * max|c_j|`.
    /// The zero polynomial is kept as the single coefficient `0`.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        if let Some(index) = coeffs
            .iter()
            .position(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::NonFiniteCoefficient { index });
        }
        let mut coeffs = coeffs;
        let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let threshold = f64::EPSILON * scale;
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.norm() <= threshold) {
            coeffs.pop();
        }
        if scale == 0.0 {
            coeffs.truncate(1);
        }
        Ok(Self { coeffs })
    }

    /// Real-coefficient convenience constructor.
    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// `lead * prod_i (z - roots[i])`, expanded.
    pub fn from_roots(lead: Complex64, roots: &[Complex64]) -> Result<Self> {
        let mut coeffs = vec![lead];
        for &r in roots {
            coeffs = mul_linear(&coeffs, r);
        }
        Self::new(coeffs)
    }

    // Leading coefficient must already be nonzero.
    fn from_raw(coeffs: Vec<Complex64>) -> Self {
        debug_assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[self.degree()]
    }

    /// `max_j |c_j|`, the scale used by every relative tolerance in the crate.
    pub fn coeff_scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut coeffs = self.coeffs.iter().rev();
        let mut acc = *coeffs.next().expect("nonempty");
        for &c in coeffs {
            acc = acc * z + c;
        }
        acc
    }

    /// The squared modulus `F(z) = |p(z)|^2`.
    pub fn modulus_sq(&self, z: Complex64) -> f64 {
        self.eval(z).norm_sqr()
    }

    /// First `count` normalized derivatives `p^(j)(z)/j!`, `j = 0..count`.
    ///
    /// `count` is clamped to `degree + 1`. Entry 0 is bitwise equal to
    /// [`Polynomial::eval`].
    pub fn eval_derivs(&self, z: Complex64, count: usize) -> Vec<Complex64> {
        let n = self.degree();
        let count = count.min(n + 1);
        let mut b = self.coeffs.clone();
        for pass in 0..count {
            for j in (pass..n).rev() {
                b[j] = b[j + 1] * z + b[j];
            }
        }
        b.truncate(count);
        b
    }

    /// Recenters `p` at `z0` by repeated synthetic division.
    pub fn taylor_at(&self, z0: Complex64) -> TaylorExpansion {
        TaylorExpansion {
            center: z0,
            a: self.eval_derivs(z0, self.degree() + 1),
        }
    }

    /// Divides by `(z - r)`, returning the quotient and the remainder `p(r)`.
    pub fn deflate(&self, r: Complex64) -> Result<(Polynomial, Complex64)> {
        let n = self.degree();
        if n == 0 {
            return Err(Error::ConstantPolynomial);
        }
        let mut b = self.coeffs.clone();
        for j in (0..n).rev() {
            b[j] = b[j + 1] * r + b[j];
        }
        let remainder = b[0];
        Ok((Polynomial::from_raw(b.split_off(1)), remainder))
    }

    /// `c * p`. Returns an error only when `c` is zero or not finite.
    pub fn scaled(&self, c: Complex64) -> Result<Polynomial> {
        if c == Complex64::new(0.0, 0.0) {
            return Err(Error::ConstantPolynomial);
        }
        Polynomial::new(self.coeffs.iter().map(|&x| x * c).collect())
    }

    pub fn derivative(&self) -> Polynomial {
        if self.degree() == 0 {
            return Polynomial::from_raw(vec![Complex64::new(0.0, 0.0)]);
        }
        Polynomial::from_raw(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, &c)| c * j as f64)
                .collect(),
        )
    }
}

// Multiplies an ascending coefficient list by (z - r).
fn mul_linear(coeffs: &[Complex64], r: Complex64) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
    for (j, &c) in coeffs.iter().enumerate() {
        out[j + 1] += c;
        out[j] -= c * r;
    }
    out
}

/// Taylor coefficients `a[j] = p^(j)(center)/j!`, so that
/// `p(z) = sum_j a[j] (z - center)^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorExpansion {
    center: Complex64,
    a: Vec<Complex64>,
}

impl TaylorExpansion {
    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.a
    }

    pub fn degree(&self) -> usize {
        self.a.len() - 1
    }

    /// `a_0 = p(center)`.
    pub fn value(&self) -> Complex64 {
        self.a[0]
    }

    /// `p(center + w)`.
    pub fn eval_offset(&self, w: Complex64) -> Complex64 {
        let mut coeffs = self.a.iter().rev();
        let mut acc = *coeffs.next().expect("nonempty");
        for &c in coeffs {
            acc = acc * w + c;
        }
        acc
    }

    /// `p(center + w) - p(center)`, evaluated without forming either value.
    pub fn increment(&self, w: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.a[1..].iter().rev() {
            acc = (acc + c) * w;
        }
        acc
    }

    /// `F(center + w) - F(center)` as `2 Re(conj(a_0) dp) + |dp|^2`.
    ///
    /// Stays accurate for steps so small that `F(center + w)` and `F(center)`
    /// agree in every stored digit.
    pub fn modulus_sq_change(&self, w: Complex64) -> f64 {
        let dp = self.increment(w);
        2.0 * (self.a[0].conj() * dp).re + dp.norm_sqr()
    }

    /// Expands back to ascending powers of `z`.
    pub fn to_polynomial(&self) -> Result<Polynomial> {
        let mut coeffs = vec![*self.a.last().expect("nonempty")];
        for &c in self.a.iter().rev().skip(1) {
            coeffs = mul_linear(&coeffs, self.center);
            coeffs[0] += c;
        }
        Polynomial::new(coeffs)
    }
}
