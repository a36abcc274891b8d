//! Direct Taylor-coefficient recursion in time.
//!
//! Substituting `u = Σ t^j u_j` and `f = Σ t^j f_j` into
//! `rho · u_tt = L u + f` and matching powers of `t` gives
//!
//! ```text
//! u_{j+2} = rho⁻¹ (L u_j + f_j) / ((j+1)(j+2)),   j = 0, 1, ...
//! ```
//!
//! with `u_0`, `u_1` the initial data.

use std::fmt;

use num::BigInt;
use serde::{Deserialize, Serialize};

use crate::expr::{is_zero_sampled, Expr, Rational, SamplePlan};
use crate::series::{expand_vector_in_time, ProblemSpec, SeriesError, TimeSeriesVec};

/// Why a series was recognized as the exact solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    /// `u0 ≡ 0`, `f0 ≡ 0`, `L u1 + f1 ≡ 0`, `f_j ≡ 0` for `2 ≤ j ≤ N`,
    /// `u1 ≢ 0`: through degree `N` the solution is `t · u1`.
    LinearExact,
    /// Every computed `u_j`, `j ≥ 2`, vanishes (order at least two).
    TailZero,
}

impl Exactness {
    pub fn as_str(self) -> &'static str {
        match self {
            Exactness::LinearExact => "linear-exact",
            Exactness::TailZero => "tail-zero",
        }
    }
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TaylorSolution {
    pub series: TimeSeriesVec,
    /// Sampled verdict, not an algebraic proof.
    pub exact: bool,
    pub exact_reason: Option<Exactness>,
}

/// Runs the recursion up to the problem's order.
pub fn taylor_series(p: &ProblemSpec) -> Result<TimeSeriesVec, SeriesError> {
    let order = p.order();
    let forcing = expand_vector_in_time(p.forcing(), order)?;
    let mut coeffs: Vec<Vec<Expr>> = Vec::with_capacity(order + 1);
    coeffs.push(p.u0().to_vec());
    coeffs.push(p.u1().to_vec());
    for j in 0..order.saturating_sub(1) {
        let lu = p.operator().apply(&coeffs[j])?;
        let rhs: Vec<Expr> = lu
            .into_iter()
            .zip(forcing.coeff(j))
            .map(|(a, b)| a + b.clone())
            .collect();
        let scaled = p.rho_inv().apply(&rhs)?;
        let divisor = Rational::new(BigInt::from(1), BigInt::from((j + 1) * (j + 2)));
        coeffs.push(scaled.iter().map(|e| e.scale(&divisor)).collect());
    }
    coeffs.truncate(order + 1);
    TimeSeriesVec::new(p.system_size(), coeffs)
}

pub fn solve_taylor(p: &ProblemSpec) -> Result<TaylorSolution, SeriesError> {
    solve_taylor_with(p, &SamplePlan::default())
}

pub fn solve_taylor_with(p: &ProblemSpec, plan: &SamplePlan) -> Result<TaylorSolution, SeriesError> {
    let series = taylor_series(p)?;
    let reason = detect_exact(p, &series, plan)?;
    Ok(TaylorSolution {
        series,
        exact: reason.is_some(),
        exact_reason: reason,
    })
}

fn all_zero(v: &[Expr], plan: &SamplePlan) -> bool {
    // A point set where nothing evaluates cannot certify zero.
    v.iter().all(|e| is_zero_sampled(e, plan).unwrap_or(false))
}

/// Exact-termination test.
///
/// `LinearExact` takes precedence when its conditions hold with a nonzero
/// `u1`; the forcing is examined through degree `N` only. Otherwise
/// `TailZero` is reported when the series computes at least one coefficient
/// of degree two or more and all of them vanish.
pub fn detect_exact(p: &ProblemSpec, sol: &TimeSeriesVec, plan: &SamplePlan) -> Result<Option<Exactness>, SeriesError> {
    let order = sol.order();
    let forcing = expand_vector_in_time(p.forcing(), order.max(1))?;

    let linear_exact = all_zero(p.u0(), plan)
        && all_zero(forcing.coeff(0), plan)
        && !all_zero(p.u1(), plan)
        && {
            let lu1 = p.operator().apply(p.u1())?;
            let residual: Vec<Expr> = lu1
                .into_iter()
                .zip(forcing.coeff(1))
                .map(|(a, b)| a + b.clone())
                .collect();
            all_zero(&residual, plan)
        }
        && (2..=order).all(|j| all_zero(forcing.coeff(j), plan));
    if linear_exact {
        return Ok(Some(Exactness::LinearExact));
    }
    if order >= 2 && (2..=order).all(|j| all_zero(sol.coeff(j), plan)) {
        return Ok(Some(Exactness::TailZero));
    }
    Ok(None)
}
