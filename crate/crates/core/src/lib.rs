//! Complex polynomial root finding by explicit descent on `|p(z)|^2`.
//!
//! At any point `z0` that is not a root, [`descent::descent_direction`]
//! builds a direction along which `F(z) = |p(z)|^2` provably decreases, even
//! where `p'(z0) = 0`. [`solver::newton_descent`] turns that into a
//! monotone Newton-type iteration that coincides with classical Newton
//! whenever `p'(z0) != 0`. [`oracle`] checks the construction by brute
//! force.
//!
//! ```
//! use num_complex::Complex64;
//! use polydescent::{newton_descent, Polynomial, SolverConfig, SolveStatus};
//!
//! // z^2 - 1 from its critical point z = 0.
//! let p = Polynomial::from_real(&[-1.0, 0.0, 1.0]).unwrap();
//! let res = newton_descent(&p, Complex64::new(0.0, 0.0), &SolverConfig::default()).unwrap();
//! assert_eq!(res.status, SolveStatus::Converged);
//! ```

pub mod complex_poly;
pub mod descent;
mod error;
pub mod oracle;
pub mod roots;
pub mod solver;
pub mod verify;

pub use complex_poly::{ComplexScalar, Polynomial, TaylorExpansion};
pub use descent::{descent_direction, DescentConfig, DescentInfo, ThetaMode};
pub use error::{Error, Result};
pub use oracle::{expand_alpha, numeric_descent_check, AlphaExpansion, AlphaGrid};
pub use roots::{find_roots, root_report, RootReport};
pub use solver::{
    descent_step, newton_classical, newton_descent, solve_all_roots, FoundRoot, SolveResult,
    SolveStatus, SolverConfig, SolverTrace, StepReport, TraceRecord,
};
