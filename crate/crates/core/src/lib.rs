//! Series solutions of linear PDE systems `rho · ∂²u/∂t² = L u + f`.
//!
//! Two engines build the truncated time series of `u`:
//!
//! * [`taylor`] runs the direct coefficient recursion
//!   `u_{j+2} = rho⁻¹ (L u_j + f_j) / ((j+1)(j+2))`;
//! * [`hpm`] computes homotopy-perturbation corrections by repeated double
//!   time integration.
//!
//! [`verify`] checks them against each other, against the equation
//! (residual), and audits each HPM correction. Symbolic work happens on
//! [`expr::Expr`] trees with exact rational constants; equality of
//! expressions is decided by seeded sampling.
//!
//! ```
//! use hpm_taylor::{parser::parse_problem, taylor::solve_taylor};
//!
//! let p = parse_problem(r#"{
//!     "m": 1, "n": 1, "rho": [["1"]],
//!     "L": [{"row": 0, "col": 0, "coeff": "1", "derivs": [2]}],
//!     "f": ["0"], "u0": ["sin(x1)"], "u1": ["0"], "order": 4
//! }"#).unwrap();
//! let sol = solve_taylor(&p).unwrap();
//! assert_eq!(sol.series.coeff(2)[0].to_string(), "-1/2*sin(x1)");
//! ```

pub mod expr;
pub mod hpm;
pub mod parser;
pub mod series;
pub mod taylor;
pub mod verify;

pub use expr::{Expr, Rational, SamplePlan};
pub use hpm::{solve_hpm, HpmExpansion};
pub use parser::{parse_expr, parse_problem, print_expr};
pub use series::{ProblemSpec, TimeSeriesVec};
pub use taylor::{solve_taylor, solve_taylor_with, Exactness, TaylorSolution};
pub use verify::{equivalence_check, hpm_audit, residual_check};
