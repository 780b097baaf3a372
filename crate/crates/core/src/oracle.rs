//! Brute-force checks of the descent construction.
//!
//! [`expand_alpha`] multiplies out `F(z0 + alpha d)` as a real polynomial in
//! `alpha` by coefficient convolution, independently of the closed forms in
//! [`crate::descent`]. [`check_leading_terms`] compares the two.
//! [`numeric_descent_check`] samples `F` along the ray instead.

use num_complex::Complex64;

use crate::complex_poly::{Polynomial, TaylorExpansion};
use crate::descent::DescentInfo;

/// Coefficients `b[m]` of `alpha^m` in `F(z0 + alpha d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaExpansion {
    pub b: Vec<f64>,
    /// Largest imaginary part discarded from the convolution.
    pub imag_residue: f64,
}

impl AlphaExpansion {
    pub fn eval(&self, alpha: f64) -> f64 {
        self.b.iter().rev().fold(0.0, |acc, &bm| acc * alpha + bm)
    }

    pub fn max_abs(&self) -> f64 {
        self.b.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }
}

/// Expands `|sum_j a_j d^j alpha^j|^2` in powers of `alpha`.
pub fn expand_alpha(t: &TaylorExpansion, d: Complex64) -> AlphaExpansion {
    let mut dj = Complex64::new(1.0, 0.0);
    let c: Vec<Complex64> = t
        .coeffs()
        .iter()
        .map(|&a| {
            let cj = a * dj;
            dj *= d;
            cj
        })
        .collect();
    let n = c.len() - 1;
    let mut b = vec![Complex64::new(0.0, 0.0); 2 * n + 1];
    for (i, &ci) in c.iter().enumerate() {
        for (j, &cj) in c.iter().enumerate() {
            b[i + j] += ci * cj.conj();
        }
    }
    let imag_residue = b.iter().map(|x| x.im.abs()).fold(0.0, f64::max);
    AlphaExpansion {
        b: b.into_iter().map(|x| x.re).collect(),
        imag_residue,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeadingTermsReport {
    pub k: usize,
    /// `|b_0 - |a_0|^2| / |a_0|^2`.
    pub b0_residual: f64,
    /// `max_{1<=j<k} |b_j| / max|b|`.
    pub intermediate_residual: f64,
    /// `|b_k - leading_coeff| / |leading_coeff|`.
    pub bk_residual: f64,
    /// Imaginary residue relative to `max|b|`.
    pub imag_residual: f64,
}

impl LeadingTermsReport {
    pub const B0_TOL: f64 = 1e-10;
    pub const INTERMEDIATE_TOL: f64 = 1e-12;
    pub const BK_TOL: f64 = 1e-10;
    pub const IMAG_TOL: f64 = 1e-12;

    pub fn passed(&self) -> bool {
        self.b0_residual <= Self::B0_TOL
            && self.intermediate_residual <= Self::INTERMEDIATE_TOL
            && self.bk_residual <= Self::BK_TOL
            && self.imag_residual <= Self::IMAG_TOL
    }
}

/// Checks `b_0 = |a_0|^2`, `b_j = 0` for `1 <= j < k` and
/// `b_k = |u|^2 (gamma cos k theta + delta sin k theta)`.
///
/// `e` must come from [`expand_alpha`] with `d = info.direction`.
pub fn check_leading_terms(
    e: &AlphaExpansion,
    info: &DescentInfo,
    a0: Complex64,
) -> LeadingTermsReport {
    let k = info.k;
    let max_b = e.max_abs().max(f64::MIN_POSITIVE);
    let f0 = a0.norm_sqr();
    let intermediate = e.b[1..k].iter().map(|x| x.abs()).fold(0.0, f64::max);
    LeadingTermsReport {
        k,
        b0_residual: (e.b[0] - f0).abs() / f0,
        intermediate_residual: intermediate / max_b,
        bk_residual: (e.b[k] - info.leading_coeff).abs() / info.leading_coeff.abs(),
        imag_residual: e.imag_residue / max_b,
    }
}

/// Geometric grid `alpha0 * 2^-m`, `m = 0..=halvings`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaGrid {
    pub alpha0: f64,
    pub halvings: usize,
}

impl Default for AlphaGrid {
    fn default() -> Self {
        Self {
            alpha0: 1.0,
            halvings: 40,
        }
    }
}

impl AlphaGrid {
    pub fn alphas(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.halvings).map(|m| self.alpha0 * 0.5f64.powi(m as i32))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DescentCheckReport {
    /// Grid points, largest first.
    pub alphas: Vec<f64>,
    /// `F(z0 + alpha d) - F(z0)` at each grid point.
    pub changes: Vec<f64>,
    /// `log2(change[m] / change[m+1])`; NaN when the two differ in sign or vanish.
    pub orders: Vec<f64>,
}

impl DescentCheckReport {
    /// Largest `alpha` such that the change is negative at it and at every
    /// smaller grid point. `None` if even the smallest grid point fails.
    pub fn negative_up_to(&self) -> Option<f64> {
        let run = self.changes.iter().rev().take_while(|&&c| c < 0.0).count();
        (run > 0).then(|| self.alphas[self.alphas.len() - run])
    }

    /// Whether every grid point with `alpha <= alpha_max` decreases `F`.
    pub fn negative_below(&self, alpha_max: f64) -> bool {
        self.alphas
            .iter()
            .zip(&self.changes)
            .filter(|(a, _)| **a <= alpha_max)
            .all(|(_, c)| *c < 0.0)
    }

    /// Order estimate from the finest pair of grid points.
    pub fn empirical_order(&self) -> Option<f64> {
        self.orders.last().copied().filter(|o| o.is_finite())
    }

    /// Largest `|order - k|` over pairs whose larger point is `<= alpha_max`.
    /// Infinite if some such pair has no finite estimate.
    pub fn max_order_deviation(&self, k: usize, alpha_max: f64) -> f64 {
        self.orders
            .iter()
            .zip(&self.alphas)
            .filter(|(_, a)| **a <= alpha_max)
            .map(|(o, _)| {
                if o.is_finite() {
                    (o - k as f64).abs()
                } else {
                    f64::INFINITY
                }
            })
            .fold(0.0, f64::max)
    }
}

/// Samples `F(z0 + alpha d) - F(z0)` on `grid`.
///
/// Differences are taken through the Taylor expansion at `z0`, so they stay
/// meaningful where `F(z0 + alpha d)` and `F(z0)` round to the same value.
pub fn numeric_descent_check(
    p: &Polynomial,
    z0: Complex64,
    d: Complex64,
    grid: &AlphaGrid,
) -> DescentCheckReport {
    let t = p.taylor_at(z0);
    let alphas: Vec<f64> = grid.alphas().collect();
    let changes: Vec<f64> = alphas
        .iter()
        .map(|&alpha| t.modulus_sq_change(d * alpha))
        .collect();
    let orders = changes
        .windows(2)
        .map(|w| {
            let ratio = w[0] / w[1];
            if ratio > 0.0 && ratio.is_finite() {
                ratio.log2()
            } else {
                f64::NAN
            }
        })
        .collect();
    DescentCheckReport {
        alphas,
        changes,
        orders,
    }
}
