//! Method comparison over a grid of seeds.

use std::fmt;

use num_complex::Complex64;
use polydescent::{newton_classical, newton_descent, Polynomial, SolveStatus, SolverConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::basin::Region;
use crate::Method;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    /// z^n - 1
    Unity,
    /// (z-1)(z-2)(z-3)(z-4)(z-5)
    Wilkinson,
    /// Degree-d polynomial with coefficients uniform in the unit disc.
    Random,
}

impl Family {
    pub fn polynomial(self, degree: usize, rng_seed: u64) -> Polynomial {
        let zero = Complex64::new(0.0, 0.0);
        match self {
            Family::Unity => {
                let mut coeffs = vec![zero; degree + 1];
                coeffs[0] = Complex64::new(-1.0, 0.0);
                coeffs[degree] += Complex64::new(1.0, 0.0);
                Polynomial::new(coeffs).expect("finite coefficients")
            }
            Family::Wilkinson => {
                let roots: Vec<_> = (1..=5).map(|j| Complex64::new(j as f64, 0.0)).collect();
                Polynomial::from_roots(Complex64::new(1.0, 0.0), &roots).expect("finite roots")
            }
            Family::Random => {
                let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
                let mut coeffs: Vec<Complex64> = (0..=degree)
                    .map(|_| {
                        let r: f64 = rng.gen_range(0.0..1.0);
                        Complex64::from_polar(r.sqrt(), rng.gen_range(0.0..std::f64::consts::TAU))
                    })
                    .collect();
                if coeffs[degree].norm() < 1e-3 {
                    coeffs[degree] = Complex64::new(1.0, 0.0);
                }
                Polynomial::new(coeffs).expect("finite coefficients")
            }
        }
    }

    pub fn label(self, degree: usize) -> String {
        match self {
            Family::Unity => format!("z^{degree}-1"),
            Family::Wilkinson => "wilkinson-5".to_string(),
            Family::Random => format!("random degree {degree}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub method: Method,
    pub seeds: usize,
    pub converged: usize,
    /// Over converged runs; `None` if nothing converged.
    pub median_iterations: Option<f64>,
    pub median_backtracks: Option<f64>,
}

impl BenchRow {
    pub fn success_rate(&self) -> f64 {
        self.converged as f64 / self.seeds as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchTable {
    pub label: String,
    pub region: Region,
    pub rows: Vec<BenchRow>,
}

fn median(mut v: Vec<f64>) -> Option<f64> {
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    Some(if v.len() % 2 == 1 {
        v[mid]
    } else {
        0.5 * (v[mid - 1] + v[mid])
    })
}

pub fn run_bench(p: &Polynomial, label: String, region: &Region, cfg: &SolverConfig) -> BenchTable {
    let rows = [Method::Newton, Method::Descent]
        .into_iter()
        .map(|method| {
            let mut iterations = Vec::new();
            let mut backtracks = Vec::new();
            let mut seeds = 0;
            for y in 0..region.px_h {
                for x in 0..region.px_w {
                    let seed = region.pixel_center(x, y);
                    let res = match method {
                        Method::Newton => newton_classical(p, seed, cfg),
                        Method::Descent => newton_descent(p, seed, cfg),
                    }
                    .expect("nonconstant polynomial");
                    seeds += 1;
                    if res.status == SolveStatus::Converged {
                        iterations.push(res.trace.iterations() as f64);
                        backtracks.push(res.trace.total_backtracks() as f64);
                    }
                }
            }
            BenchRow {
                method,
                seeds,
                converged: iterations.len(),
                median_iterations: median(iterations),
                median_backtracks: median(backtracks),
            }
        })
        .collect();
    BenchTable {
        label,
        region: *region,
        rows,
    }
}

impl fmt::Display for BenchTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.region;
        writeln!(
            f,
            "family: {}  grid: {}x{} on [{}, {}] x [{}, {}]",
            self.label,
            r.px_w,
            r.px_h,
            r.center.re - r.width / 2.0,
            r.center.re + r.width / 2.0,
            r.center.im - r.height / 2.0,
            r.center.im + r.height / 2.0,
        )?;
        writeln!(
            f,
            "{:<8} {:>8} {:>13} {:>18}",
            "method", "success", "median_iters", "median_backtracks"
        )?;
        let show = |v: Option<f64>| v.map_or_else(|| "n/a".to_string(), |x| format!("{x}"));
        for row in &self.rows {
            writeln!(
                f,
                "{:<8} {:>7.1}% {:>13} {:>18}",
                row.method.as_str(),
                100.0 * row.success_rate(),
                show(row.median_iterations),
                show(row.median_backtracks),
            )?;
        }
        Ok(())
    }
}
