//! Classical Newton and descent-Newton iterations.
//!
//! Descent-Newton steps along the unit direction from [`descent_direction`]
//! with initial length `|a_0 / a_k|^(1/k)` and halves the step until
//! `|p|^2` strictly decreases. For `k = 1` the first trial point is the
//! classical Newton iterate; at critical points (`k >= 2`) the method is
//! still defined.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::complex_poly::{Polynomial, TaylorExpansion};
use crate::descent::{descent_direction, DescentConfig, DescentInfo, ThetaMode};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Converged once `|p(z)| <= root_tol * coeff_scale`.
    pub root_tol: f64,
    pub max_iters: usize,
    pub theta_mode: ThetaMode,
    /// Step shrink factor in `(0, 1)`.
    pub backtrack_factor: f64,
    pub max_backtracks: usize,
    /// Classical Newton stops at a critical point once `|p'| <= derivative_tol * coeff_scale`.
    pub derivative_tol: f64,
    /// Relative zero test for Taylor coefficients when picking `k`.
    pub eps_rel: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            root_tol: 1e-12,
            max_iters: 500,
            theta_mode: ThetaMode::Table,
            backtrack_factor: 0.5,
            max_backtracks: 60,
            derivative_tol: 1e-14,
            eps_rel: 1e-12,
        }
    }
}

impl SolverConfig {
    fn descent_config(&self) -> DescentConfig {
        DescentConfig {
            theta_mode: self.theta_mode,
            eps_rel: self.eps_rel,
            root_tol: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Converged,
    MaxIters,
    /// Classical Newton only: `p'(z_j)` vanished away from a root.
    CriticalPoint,
    /// No strict decrease was found by backtracking, or the iterate left the
    /// finite range.
    Stalled,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveStatus::Converged => "converged",
            SolveStatus::MaxIters => "max-iters",
            SolveStatus::CriticalPoint => "critical-point",
            SolveStatus::Stalled => "stalled",
        }
    }
}

/// One iterate. The step fields describe the step taken *from* `z` and are
/// `None` on the final record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    pub iter: usize,
    pub z: Complex64,
    pub abs_p: f64,
    pub f: f64,
    pub k: Option<usize>,
    pub theta: Option<f64>,
    pub alpha: Option<f64>,
    pub backtracks: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SolverTrace {
    pub records: Vec<TraceRecord>,
}

impl SolverTrace {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Number of steps taken.
    pub fn iterations(&self) -> usize {
        self.records.len().saturating_sub(1)
    }

    pub fn iterates(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.records.iter().map(|r| r.z)
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.records.windows(2).all(|w| w[1].f < w[0].f)
    }

    pub fn total_backtracks(&self) -> usize {
        self.records.iter().filter_map(|r| r.backtracks).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub status: SolveStatus,
    /// Set iff `status` is `Converged`.
    pub root: Option<Complex64>,
    /// Final iterate, whatever the status.
    pub last: Complex64,
    pub trace: SolverTrace,
}

impl SolveResult {
    fn finish(status: SolveStatus, trace: SolverTrace) -> Self {
        let last = trace.records.last().expect("trace has a final record").z;
        let root = (status == SolveStatus::Converged).then_some(last);
        Self {
            status,
            root,
            last,
            trace,
        }
    }
}

/// Outcome of a single descent-Newton step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepReport {
    pub info: DescentInfo,
    /// `|a_0 / a_k|^(1/k)`.
    pub alpha_init: f64,
    /// Trial point before any backtracking, `z0 + alpha_init * unit_direction`.
    pub full_step: Complex64,
    /// Accepted step length.
    pub alpha: f64,
    pub backtracks: usize,
    pub next_z: Complex64,
    pub next_f: f64,
}

/// One descent-Newton step from `t.center()`, measuring `F` through the
/// Taylor expansion itself. Fails with `AlreadyAtRoot` only when `a_0 == 0`.
pub fn descent_step(t: &TaylorExpansion, cfg: &SolverConfig) -> Result<StepReport> {
    let z0 = t.center();
    descent_step_with(t, cfg, t.value().norm_sqr(), |z| {
        t.eval_offset(z - z0).norm_sqr()
    })
}

fn descent_step_with<F>(
    t: &TaylorExpansion,
    cfg: &SolverConfig,
    f0: f64,
    objective: F,
) -> Result<StepReport>
where
    F: Fn(Complex64) -> f64,
{
    let info = descent_direction(t, &cfg.descent_config())?;
    let a = t.coeffs();
    let k = info.k;
    let alpha_init = (a[0].norm() / a[k].norm()).powf(1.0 / k as f64);
    let z0 = t.center();
    let full_step = z0 + info.unit_direction * alpha_init;

    let mut alpha = alpha_init;
    for backtracks in 0..=cfg.max_backtracks {
        let trial = z0 + info.unit_direction * alpha;
        let f = objective(trial);
        if f < f0 {
            return Ok(StepReport {
                info,
                alpha_init,
                full_step,
                alpha,
                backtracks,
                next_z: trial,
                next_f: f,
            });
        }
        alpha *= cfg.backtrack_factor;
    }
    Err(Error::Stall {
        backtracks: cfg.max_backtracks,
    })
}

fn final_record(iter: usize, z: Complex64, p0: Complex64) -> TraceRecord {
    TraceRecord {
        iter,
        z,
        abs_p: p0.norm(),
        f: p0.norm_sqr(),
        k: None,
        theta: None,
        alpha: None,
        backtracks: None,
    }
}

/// `z_{j+1} = z_j - p(z_j) / p'(z_j)`, with no safeguard on `|p|`.
pub fn newton_classical(p: &Polynomial, z0: Complex64, cfg: &SolverConfig) -> Result<SolveResult> {
    if p.degree() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let scale = p.coeff_scale();
    let tol = cfg.root_tol * scale;
    let mut trace = SolverTrace::default();
    let mut z = z0;
    for iter in 0.. {
        let d = p.eval_derivs(z, 2);
        let (p0, p1) = (d[0], d[1]);
        let status = if p0.norm() <= tol {
            Some(SolveStatus::Converged)
        } else if iter == cfg.max_iters {
            Some(SolveStatus::MaxIters)
        } else if p1.norm() <= cfg.derivative_tol * scale {
            Some(SolveStatus::CriticalPoint)
        } else {
            None
        };
        if let Some(status) = status {
            trace.records.push(final_record(iter, z, p0));
            return Ok(SolveResult::finish(status, trace));
        }

        let step = -p0 / p1;
        let next = z + step;
        if !(next.re.is_finite() && next.im.is_finite()) {
            trace.records.push(final_record(iter, z, p0));
            return Ok(SolveResult::finish(SolveStatus::Stalled, trace));
        }
        trace.records.push(TraceRecord {
            iter,
            z,
            abs_p: p0.norm(),
            f: p0.norm_sqr(),
            k: Some(1),
            theta: Some(PI),
            alpha: Some(step.norm()),
            backtracks: Some(0),
        });
        z = next;
    }
    unreachable!()
}

/// Descent-Newton from `z0`. Every recorded `F` is strictly below the
/// previous one.
pub fn newton_descent(p: &Polynomial, z0: Complex64, cfg: &SolverConfig) -> Result<SolveResult> {
    if p.degree() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let tol = cfg.root_tol * p.coeff_scale();
    let mut trace = SolverTrace::default();
    let mut z = z0;
    for iter in 0.. {
        let t = p.taylor_at(z);
        let p0 = t.value();
        let f0 = p0.norm_sqr();
        let status = if p0.norm() <= tol {
            Some(SolveStatus::Converged)
        } else if iter == cfg.max_iters {
            Some(SolveStatus::MaxIters)
        } else {
            None
        };
        if let Some(status) = status {
            trace.records.push(final_record(iter, z, p0));
            return Ok(SolveResult::finish(status, trace));
        }

        match descent_step_with(&t, cfg, f0, |w| p.modulus_sq(w)) {
            Ok(step) => {
                trace.records.push(TraceRecord {
                    iter,
                    z,
                    abs_p: p0.norm(),
                    f: f0,
                    k: Some(step.info.k),
                    theta: Some(step.info.theta),
                    alpha: Some(step.alpha),
                    backtracks: Some(step.backtracks),
                });
                z = step.next_z;
            }
            Err(Error::Stall { .. }) => {
                trace.records.push(final_record(iter, z, p0));
                return Ok(SolveResult::finish(SolveStatus::Stalled, trace));
            }
            Err(e) => return Err(e),
        }
    }
    unreachable!()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoundRoot {
    pub value: Complex64,
    /// Status of the polishing run against the original polynomial.
    pub status: SolveStatus,
}

/// All `degree` roots by descent-Newton plus deflation, each polished on
/// the original polynomial.
///
/// The `i`-th root search starts from `seeds[i]`, or from 0 once the seeds
/// run out. Roots whose polish did not converge are returned anyway, with
/// their status.
pub fn solve_all_roots(
    p: &Polynomial,
    cfg: &SolverConfig,
    seeds: &[Complex64],
) -> Result<Vec<FoundRoot>> {
    if p.degree() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let mut q = p.clone();
    let mut raw = Vec::with_capacity(p.degree());
    while q.degree() > 0 {
        let seed = seeds
            .get(raw.len())
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0));
        let r = newton_descent(&q, seed, cfg)?.last;
        raw.push(r);
        q = q.deflate(r)?.0;
    }
    raw.into_iter()
        .map(|r| {
            let polished = newton_descent(p, r, cfg)?;
            Ok(FoundRoot {
                value: polished.last,
                status: polished.status,
            })
        })
        .collect()
}
