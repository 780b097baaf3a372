//! Explicit descent direction for `F(z) = |p(z)|^2` at any non-root.
//!
//! With Taylor coefficients `a_j` at `z0` and `k` the first index `>= 1`
//! with `a_k != 0`, set `u = a_0 * conj(a_k)`. Along `z0 + alpha e^{i theta} u`
//! the change in `F` starts with
//!
//! ```text
//! G_k(alpha e^{i theta} u) = alpha^k |u|^2 (gamma cos k theta + delta sin k theta)
//! ```
//!
//! where `gamma = 2 Re(u^{k-1})` and `delta = -2 Im(u^{k-1})`. Picking
//! `theta` so the bracket is negative makes `e^{i theta} u` a descent
//! direction, critical point or not. For `k = 1` this is the classical
//! Newton direction `-p/p'`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::complex_poly::TaylorExpansion;
use crate::error::{Error, Result};

/// How the rotation angle `theta` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ThetaMode {
    /// Best of the four angles `0, pi/k, pi/2k, 3pi/2k`; exact ties go to
    /// the earlier angle in that order.
    #[default]
    Table,
    /// Continuous minimizer `(pi + atan2(delta, gamma)) / k`.
    Optimal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DescentConfig {
    pub theta_mode: ThetaMode,
    /// Relative threshold for treating a Taylor coefficient as zero.
    pub eps_rel: f64,
    /// `|a_0|` at or below this counts as a root.
    pub root_tol: f64,
}

impl Default for DescentConfig {
    fn default() -> Self {
        Self {
            theta_mode: ThetaMode::Table,
            eps_rel: 1e-12,
            root_tol: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DescentInfo {
    /// First index `>= 1` with a non-negligible Taylor coefficient.
    pub k: usize,
    pub u: Complex64,
    pub gamma: f64,
    pub delta: f64,
    pub theta: f64,
    /// `e^{i theta} u`.
    pub direction: Complex64,
    /// `e^{i theta} u / |u|`, computed without forming `u` so it never overflows.
    pub unit_direction: Complex64,
    /// `|u|^2 (gamma cos k theta + delta sin k theta)`; always negative.
    pub leading_coeff: f64,
}

/// Smallest `k >= 1` with `|a_k| > eps_rel * max_{j>=1} |a_j|`.
pub fn first_nonzero_index(t: &TaylorExpansion, eps_rel: f64) -> Result<usize> {
    let a = t.coeffs();
    if a.len() < 2 {
        return Err(Error::ConstantPolynomial);
    }
    let scale = a[1..].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let tau = eps_rel * scale;
    Ok(a[1..]
        .iter()
        .position(|c| c.norm() > tau)
        .map_or(a.len() - 1, |i| i + 1))
}

/// `conj(u) z^k + u conj(z)^k`, evaluated directly. The value is real.
pub fn g_k_direct(u: Complex64, k: usize, z: Complex64) -> f64 {
    let zk = z.powi(k as i32);
    let v = u.conj() * zk + u * zk.conj();
    debug_assert!(v.im.abs() <= 1e-12 * (2.0 * u.norm() * zk.norm()).max(f64::MIN_POSITIVE));
    v.re
}

/// `alpha^k |u|^2 (gamma cos k theta + delta sin k theta)`.
pub fn g_k_closed(u: Complex64, k: usize, alpha: f64, theta: f64) -> f64 {
    let (gamma, delta) = gamma_delta(u, k);
    alpha.powi(k as i32) * u.norm_sqr() * angular_factor(gamma, delta, k, theta)
}

/// `(2 Re(u^{k-1}), -2 Im(u^{k-1}))`.
pub fn gamma_delta(u: Complex64, k: usize) -> (f64, f64) {
    let w = u.powi(k as i32 - 1);
    (2.0 * w.re, -2.0 * w.im)
}

/// `gamma cos k theta + delta sin k theta`.
pub fn angular_factor(gamma: f64, delta: f64, k: usize, theta: f64) -> f64 {
    let kt = k as f64 * theta;
    gamma * kt.cos() + delta * kt.sin()
}

pub fn select_theta(gamma: f64, delta: f64, k: usize, mode: ThetaMode) -> Result<f64> {
    if gamma == 0.0 && delta == 0.0 {
        return Err(Error::DegenerateDirection);
    }
    let kf = k as f64;
    let theta = match mode {
        ThetaMode::Table => {
            // At these angles the angular factor is exactly gamma, -gamma, delta, -delta.
            let candidates = [
                (0.0, gamma),
                (PI / kf, -gamma),
                (PI / (2.0 * kf), delta),
                (3.0 * PI / (2.0 * kf), -delta),
            ];
            let mut best = candidates[0];
            for &c in &candidates[1..] {
                if c.1 < best.1 {
                    best = c;
                }
            }
            best.0
        }
        ThetaMode::Optimal => (PI + delta.atan2(gamma)) / kf,
    };
    Ok(theta)
}

pub fn descent_direction(t: &TaylorExpansion, cfg: &DescentConfig) -> Result<DescentInfo> {
    let k = first_nonzero_index(t, cfg.eps_rel)?;
    let a = t.coeffs();
    let (a0, ak) = (a[0], a[k]);
    if a0.norm() <= cfg.root_tol {
        return Err(Error::AlreadyAtRoot { abs_p: a0.norm() });
    }
    let u = a0 * ak.conj();
    let (gamma, delta) = gamma_delta(u, k);
    let theta = select_theta(gamma, delta, k, cfg.theta_mode)?;
    let rotation = Complex64::from_polar(1.0, theta);
    let unit_u = (a0 / a0.norm()) * (ak.conj() / ak.norm());
    Ok(DescentInfo {
        k,
        u,
        gamma,
        delta,
        theta,
        direction: rotation * u,
        unit_direction: rotation * unit_u,
        leading_coeff: u.norm_sqr() * angular_factor(gamma, delta, k, theta),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_poly::Polynomial;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
    }

    fn nonzero_u() -> impl Strategy<Value = Complex64> {
        (0.0..std::f64::consts::TAU, -2.0..2.0f64)
            .prop_map(|(t, e)| Complex64::from_polar(10f64.powf(e), t))
    }

    #[test]
    fn first_nonzero_index_examples() {
        let p = Polynomial::from_real(&[-1.0, 0.0, 1.0]).unwrap();
        assert_eq!(first_nonzero_index(&p.taylor_at(c(0.0, 0.0)), 1e-12), Ok(2));
        assert_eq!(first_nonzero_index(&p.taylor_at(c(2.0, 0.0)), 1e-12), Ok(1));
        // (z-1)^3 + 5 = z^3 - 3z^2 + 3z + 4: p'(1) = 3 - 6 + 3 = 0, p''(1) = 6 - 6 = 0, p'''(1) = 6.
        let cubic = Polynomial::from_real(&[4.0, 3.0, -3.0, 1.0]).unwrap();
        assert_eq!(
            first_nonzero_index(&cubic.taylor_at(c(1.0, 0.0)), 1e-12),
            Ok(3)
        );
        let constant = Polynomial::from_real(&[2.0]).unwrap();
        assert_eq!(
            first_nonzero_index(&constant.taylor_at(c(0.0, 0.0)), 1e-12),
            Err(Error::ConstantPolynomial)
        );
    }

    #[test]
    fn g_k_examples() {
        assert_eq!(g_k_direct(c(1.0, 0.0), 1, c(0.75, 0.0)), 1.5);
        let z = Complex64::from_polar(0.75, PI);
        assert!((g_k_direct(c(1.0, 0.0), 1, z) + 1.5).abs() < 1e-15);
        assert!((g_k_closed(c(1.0, 0.0), 1, 2.0, PI) + 4.0).abs() < 1e-15);
        assert!((g_k_closed(c(0.0, 1.0), 2, 1.0, PI / 4.0) + 2.0).abs() < 1e-15);
    }

    #[test]
    fn gamma_delta_examples() {
        assert_eq!(gamma_delta(c(-1.0, 0.0), 2), (-2.0, 0.0));
        assert_eq!(gamma_delta(c(0.3, -7.0), 1), (2.0, 0.0));
        assert_eq!(gamma_delta(c(0.0, 1.0), 2), (0.0, -2.0));
    }

    #[test]
    fn select_theta_examples() {
        assert_eq!(select_theta(-2.0, 0.0, 2, ThetaMode::Table), Ok(0.0));
        assert_eq!(select_theta(2.0, 0.0, 1, ThetaMode::Table), Ok(PI));
        let theta = select_theta(0.0, -2.0, 2, ThetaMode::Table).unwrap();
        assert_eq!(theta, PI / 4.0);
        assert!((angular_factor(0.0, -2.0, 2, theta) + 2.0).abs() < 1e-15);
        assert_eq!(
            select_theta(0.0, 0.0, 3, ThetaMode::Optimal),
            Err(Error::DegenerateDirection)
        );
    }

    #[test]
    fn select_theta_breaks_ties_by_table_order() {
        // gamma < 0 and delta > 0 with equal magnitude: row "gamma < 0" wins.
        assert_eq!(select_theta(-1.0, 1.0, 3, ThetaMode::Table), Ok(0.0));
        // gamma > 0 and delta < 0 tie: "gamma > 0" row comes before "delta < 0".
        assert_eq!(select_theta(1.0, -1.0, 2, ThetaMode::Table), Ok(PI / 2.0));
    }

    #[test]
    fn descent_direction_examples() {
        let p = Polynomial::from_real(&[-1.0, 0.0, 1.0]).unwrap();
        let info = descent_direction(&p.taylor_at(c(0.0, 0.0)), &DescentConfig::default()).unwrap();
        assert_eq!(info.k, 2);
        assert_eq!(info.u, c(-1.0, 0.0));
        assert_eq!((info.gamma, info.delta), (-2.0, 0.0));
        assert_eq!(info.theta, 0.0);
        assert_eq!(info.direction, c(-1.0, 0.0));

        let id = Polynomial::from_real(&[0.0, 1.0]).unwrap();
        let info =
            descent_direction(&id.taylor_at(c(1.0, 0.0)), &DescentConfig::default()).unwrap();
        assert_eq!((info.k, info.u, info.theta), (1, c(1.0, 0.0), PI));
        assert!((info.direction - c(-1.0, 0.0)).norm() < 1e-15);

        let info = descent_direction(&p.taylor_at(c(2.0, 0.0)), &DescentConfig::default()).unwrap();
        assert_eq!((info.k, info.u, info.theta), (1, c(12.0, 0.0), PI));
        assert!((info.direction - c(-12.0, 0.0)).norm() < 1e-14);
        // Same ray as the Newton step -p(2)/p'(2) = -3/4.
        assert!((info.unit_direction - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn descent_direction_rejects_roots_and_constants() {
        let p = Polynomial::from_real(&[-1.0, 0.0, 1.0]).unwrap();
        let err = descent_direction(&p.taylor_at(c(1.0, 0.0)), &DescentConfig::default());
        assert_eq!(err, Err(Error::AlreadyAtRoot { abs_p: 0.0 }));
        let constant = Polynomial::from_real(&[5.0]).unwrap();
        let err = descent_direction(&constant.taylor_at(c(1.0, 0.0)), &DescentConfig::default());
        assert_eq!(err, Err(Error::ConstantPolynomial));
    }

    proptest! {
        #[test]
        fn gamma_delta_norm_identity(u in nonzero_u(), k in 1usize..=6) {
            let (g, d) = gamma_delta(u, k);
            let expected = 4.0 * u.norm_sqr().powi(k as i32 - 1);
            prop_assert!(close(g * g + d * d, expected, 1e-10));
        }

        #[test]
        fn direct_and_closed_forms_agree(u in nonzero_u(), k in 1usize..=6, alpha in 1e-3..4.0f64) {
            let scale = 2.0 * alpha.powi(k as i32) * u.norm().powi(k as i32 + 1);
            for m in 0..32 {
                let theta = m as f64 * std::f64::consts::TAU / 32.0;
                let z = Complex64::from_polar(alpha, theta) * u;
                let diff = g_k_direct(u, k, z) - g_k_closed(u, k, alpha, theta);
                prop_assert!(diff.abs() <= 1e-10 * scale);
            }
        }

        #[test]
        fn selected_theta_makes_leading_term_negative(u in nonzero_u(), k in 1usize..=6, alpha in 1e-3..4.0f64) {
            let (g, d) = gamma_delta(u, k);
            let table = select_theta(g, d, k, ThetaMode::Table).unwrap();
            let optimal = select_theta(g, d, k, ThetaMode::Optimal).unwrap();
            let vt = angular_factor(g, d, k, table);
            let vo = angular_factor(g, d, k, optimal);
            prop_assert!(vt < 0.0);
            prop_assert!(vo < 0.0);
            prop_assert!(vo <= vt + 1e-12 * vt.abs());
            prop_assert!(close(vo, -(g * g + d * d).sqrt(), 1e-12));
            prop_assert!(g_k_closed(u, k, alpha, table) < 0.0);
        }

        #[test]
        fn table_angle_descent_counts(u in nonzero_u(), k in 2usize..=6) {
            let (g, d) = gamma_delta(u, k);
            let values = [g, -g, d, -d];
            let negative = values.iter().filter(|v| **v < 0.0).count();
            if d == 0.0 {
                prop_assert_eq!(negative, 1);
                prop_assert!(values[0] < 0.0 || values[1] < 0.0);
            } else if g != 0.0 {
                prop_assert!(negative >= 2);
            }
        }

        #[test]
        fn k_one_direction_is_newton_direction(
            re in prop::collection::vec(-1.0..1.0f64, 3..8),
            im in prop::collection::vec(-1.0..1.0f64, 3..8),
            x in -2.0..2.0f64, y in -2.0..2.0f64,
        ) {
            let coeffs: Vec<_> = re.iter().zip(&im).map(|(&a, &b)| c(a, b)).collect();
            let p = Polynomial::new(coeffs).unwrap();
            let t = p.taylor_at(c(x, y));
            let a = t.coeffs();
            prop_assume!(a[1].norm() > 1e-6 && a[0].norm() > 1e-12);
            let info = descent_direction(&t, &DescentConfig::default()).unwrap();
            prop_assert_eq!(info.k, 1);
            let newton = -a[0] / a[1];
            let cross = info.direction * newton.conj();
            prop_assert!(cross.re > 0.0);
            prop_assert!(cross.im.abs() <= 1e-10 * cross.norm());
        }
    }

    #[test]
    fn real_u_power_gives_single_table_row() {
        let (g, d) = gamma_delta(c(-3.0, 0.0), 3);
        assert_eq!(d, 0.0);
        assert!(g > 0.0);
        assert_eq!(select_theta(g, d, 3, ThetaMode::Table), Ok(PI / 3.0));
    }
}
