//! Residual and reconstruction metrics for a computed root set.

use num_complex::Complex64;

use crate::complex_poly::Polynomial;
use crate::error::{Error, Result};
use crate::solver::{solve_all_roots, FoundRoot, SolverConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct RootReport {
    pub roots: Vec<Complex64>,
    /// `|p(root)|` on the original polynomial.
    pub residuals: Vec<f64>,
    /// Largest coefficient deviation of `lead * prod (z - r_i)` from `p`,
    /// divided by `p.coeff_scale()`.
    pub reconstruction_error: f64,
}

impl RootReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

pub fn root_report(p: &Polynomial, roots: &[Complex64]) -> Result<RootReport> {
    if roots.len() != p.degree() {
        return Err(Error::RootCountMismatch {
            expected: p.degree(),
            got: roots.len(),
        });
    }
    let rebuilt = Polynomial::from_roots(p.leading(), roots)?;
    let deviation = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, &c)| (rebuilt.coeffs().get(j).copied().unwrap_or_default() - c).norm())
        .fold(0.0, f64::max);
    Ok(RootReport {
        roots: roots.to_vec(),
        residuals: roots.iter().map(|&r| p.eval(r).norm()).collect(),
        reconstruction_error: deviation / p.coeff_scale(),
    })
}

/// Solves for every root from the default seed and reports on the result.
pub fn find_roots(p: &Polynomial, cfg: &SolverConfig) -> Result<(Vec<FoundRoot>, RootReport)> {
    let found = solve_all_roots(p, cfg, &[])?;
    let values: Vec<Complex64> = found.iter().map(|r| r.value).collect();
    let report = root_report(p, &values)?;
    Ok((found, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn exact_factorization() {
        let p = Polynomial::from_real(&[-1.0, 0.0, 1.0]).unwrap();
        let report = root_report(&p, &[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert_eq!(report.residuals, vec![0.0, 0.0]);
        assert_eq!(report.reconstruction_error, 0.0);
    }

    #[test]
    fn wrong_root_count() {
        let p = Polynomial::from_real(&[-1.0, 0.0, 1.0]).unwrap();
        assert_eq!(
            root_report(&p, &[c(1.0, 0.0)]),
            Err(Error::RootCountMismatch {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn cube_roots_of_unity() {
        let p = Polynomial::from_real(&[-1.0, 0.0, 0.0, 1.0]).unwrap();
        let (_, report) = find_roots(&p, &SolverConfig::default()).unwrap();
        assert!(report.max_residual() <= 1e-8);
        assert!(report.reconstruction_error <= 1e-8);
    }

    #[test]
    fn double_root() {
        let p = Polynomial::from_real(&[1.0, -2.0, 1.0]).unwrap();
        let (_, report) = find_roots(&p, &SolverConfig::default()).unwrap();
        assert!(report.reconstruction_error <= 1e-6, "{report:?}");
        for r in &report.roots {
            assert!((r - c(1.0, 0.0)).norm() < 1e-5);
        }
    }

    #[test]
    fn reconstruction_error_is_scale_invariant() {
        let p = Polynomial::from_real(&[-1.0, 0.0, 0.0, 1.0]).unwrap();
        let roots = [c(1.0, 1e-7), c(-0.5, 0.866), c(-0.5, -0.866)];
        let base = root_report(&p, &roots).unwrap().reconstruction_error;
        let scaled = p.scaled(c(7.0, -3.0)).unwrap();
        let other = root_report(&scaled, &roots).unwrap().reconstruction_error;
        assert!((base - other).abs() <= 1e-9 * base, "{base} {other}");
    }
}
