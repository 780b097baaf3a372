//! Randomized identity suite behind `polydescent verify`.
//!
//! Every trial draws a polynomial of degree 1..=10 with coefficients whose
//! magnitudes are log-uniform over `10^[-3, 3]`, plus a base point. One trial
//! in three is built to sit at a critical point: `z0 = 0` and coefficients
//! `1..k` are zeroed, so the first nonvanishing derivative has order `k >= 2`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex_poly::Polynomial;
use crate::descent::{
    angular_factor, descent_direction, g_k_closed, g_k_direct, gamma_delta, select_theta,
    DescentConfig, ThetaMode,
};
use crate::oracle::{check_leading_terms, expand_alpha, numeric_descent_check, AlphaGrid};
use crate::solver::{descent_step, SolverConfig};

/// A random test polynomial with a base point that is not a root.
#[derive(Debug, Clone)]
pub struct Instance {
    pub p: Polynomial,
    pub z0: Complex64,
}

/// Log-uniform magnitude in `10^[-3, 3]`, uniform phase.
pub fn random_coeff<R: Rng>(rng: &mut R) -> Complex64 {
    let magnitude = 10f64.powf(rng.gen_range(-3.0..3.0));
    Complex64::from_polar(magnitude, rng.gen_range(0.0..TAU))
}

pub fn random_instance<R: Rng>(rng: &mut R, critical: bool) -> Instance {
    let degree = rng.gen_range(1..=10usize);
    let mut coeffs: Vec<Complex64> = (0..=degree).map(|_| random_coeff(rng)).collect();
    let z0 = if critical && degree >= 2 {
        let k = rng.gen_range(2..=degree);
        for c in &mut coeffs[1..k] {
            *c = Complex64::new(0.0, 0.0);
        }
        Complex64::new(0.0, 0.0)
    } else {
        Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
    };
    Instance {
        p: Polynomial::new(coeffs).expect("finite nonzero coefficients"),
        z0,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckSummary {
    pub name: &'static str,
    pub tolerance: f64,
    pub trials: usize,
    pub failures: usize,
    /// Largest residual seen (for sign checks, the largest value that should be negative).
    pub worst: f64,
    pub first_failure: Option<String>,
}

impl CheckSummary {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            tolerance,
            trials: 0,
            failures: 0,
            worst: f64::NEG_INFINITY,
            first_failure: None,
        }
    }

    fn record(&mut self, trial: usize, residual: f64, ok: bool) {
        self.trials += 1;
        if residual > self.worst || residual.is_nan() {
            self.worst = residual;
        }
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(format!("trial {trial}: residual {residual:e}"));
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub checks: Vec<CheckSummary>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckSummary::passed)
    }

    pub fn first_failure(&self) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| !c.passed())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub trials: usize,
    pub seed: u64,
    pub theta_mode: ThetaMode,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            trials: 1000,
            seed: 0,
            theta_mode: ThetaMode::Table,
        }
    }
}

pub const IDENTITY_TOL: f64 = 1e-10;
pub const ORDER_TOL: f64 = 0.1;

pub fn run_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut g_forms = CheckSummary::new("g_k direct vs closed form", IDENTITY_TOL);
    let mut norm_identity = CheckSummary::new("gamma^2 + delta^2 = 4|u|^(2(k-1))", IDENTITY_TOL);
    let mut leading_sign = CheckSummary::new("selected theta gives negative leading term", 0.0);
    let mut leading_terms = CheckSummary::new("alpha-expansion leading coefficients", IDENTITY_TOL);
    let mut expansion_sum = CheckSummary::new("alpha-expansion matches |p|^2", IDENTITY_TOL);
    let mut numeric = CheckSummary::new("descent on every small alpha", 0.0);
    let mut order = CheckSummary::new("empirical decrease order equals k", ORDER_TOL);

    let descent_cfg = DescentConfig {
        theta_mode: cfg.theta_mode,
        ..DescentConfig::default()
    };
    let solver_cfg = SolverConfig {
        theta_mode: cfg.theta_mode,
        ..SolverConfig::default()
    };

    for trial in 0..cfg.trials {
        let inst = random_instance(&mut rng, trial % 3 == 2);
        let t = inst.p.taylor_at(inst.z0);
        let info = match descent_direction(&t, &descent_cfg) {
            Ok(info) => info,
            Err(_) => continue,
        };

        // Closed form on a 32-angle grid, at this instance's k and one random k.
        let extra_k = rng.gen_range(1..=6usize);
        let alpha = rng.gen_range(0.0..4.0f64).max(1e-3);
        let mut worst_g = 0.0f64;
        let mut worst_norm = 0.0f64;
        for k in [info.k, extra_k] {
            let scale = 2.0 * alpha.powi(k as i32) * info.u.norm().powi(k as i32 + 1);
            for m in 0..32 {
                let theta = m as f64 * TAU / 32.0;
                let z = Complex64::from_polar(alpha, theta) * info.u;
                let diff = g_k_direct(info.u, k, z) - g_k_closed(info.u, k, alpha, theta);
                worst_g = worst_g.max(diff.abs() / scale);
            }
            let (g, d) = gamma_delta(info.u, k);
            let expected = 4.0 * info.u.norm_sqr().powi(k as i32 - 1);
            worst_norm = worst_norm.max((g * g + d * d - expected).abs() / expected);
        }
        g_forms.record(trial, worst_g, worst_g <= IDENTITY_TOL);
        norm_identity.record(trial, worst_norm, worst_norm <= IDENTITY_TOL);

        let other_mode = match cfg.theta_mode {
            ThetaMode::Table => ThetaMode::Optimal,
            ThetaMode::Optimal => ThetaMode::Table,
        };
        let other = select_theta(info.gamma, info.delta, info.k, other_mode)
            .map(|th| angular_factor(info.gamma, info.delta, info.k, th))
            .unwrap_or(f64::NAN);
        let sign = info
            .leading_coeff
            .max(g_k_closed(info.u, info.k, alpha, info.theta))
            .max(other);
        leading_sign.record(trial, sign, sign < 0.0);

        let expansion = expand_alpha(&t, info.direction);
        let report = check_leading_terms(&expansion, &info, t.value());
        let worst_terms = report
            .b0_residual
            .max(report.bk_residual)
            .max(report.intermediate_residual)
            .max(report.imag_residual);
        leading_terms.record(trial, worst_terms, report.passed());

        let alpha_init = (t.value().norm() / t.coeffs()[info.k].norm()).powf(1.0 / info.k as f64);
        let s: f64 = rng.gen_range(0.0..1.0);
        let alpha_u = s * alpha_init / info.u.norm();
        let direct = inst.p.modulus_sq(inst.z0 + info.direction * alpha_u);
        let scale = direct.max(t.value().norm_sqr());
        let sum_residual = (expansion.eval(alpha_u) - direct).abs() / scale;
        expansion_sum.record(trial, sum_residual, sum_residual <= IDENTITY_TOL);

        let grid = AlphaGrid {
            alpha0: alpha_init,
            halvings: 40,
        };
        let check = numeric_descent_check(&inst.p, inst.z0, info.unit_direction, &grid);
        // Descent must hold on a tail of the grid reaching down to the
        // smallest alpha, and the solver's step (when it finds one) must land
        // on a decreasing point. The accepted step may lie in a separate
        // descent region further along the ray.
        let solver_ok =
            descent_step(&t, &solver_cfg).map_or(true, |step| step.next_f < t.value().norm_sqr());
        let descends = check.negative_up_to().is_some() && solver_ok;
        numeric.record(trial, if descends { -1.0 } else { 1.0 }, descends);
        let dev = check
            .empirical_order()
            .map_or(f64::INFINITY, |o| (o - info.k as f64).abs());
        order.record(trial, dev, dev <= ORDER_TOL);
    }

    SuiteReport {
        checks: vec![
            g_forms,
            norm_identity,
            leading_sign,
            leading_terms,
            expansion_sum,
            numeric,
            order,
        ],
    }
}
