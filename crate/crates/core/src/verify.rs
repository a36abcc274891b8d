//! Mechanical checks: residual of a truncated series against the equation,
//! coefficient-wise agreement of the two engines, and the per-correction
//! audit of the HPM double integration.
//!
//! All comparisons are per `t`-degree and per component so that a
//! cancellation between degrees can never hide a mismatch.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{compare_sampled, Expr, SampleError, SamplePlan};
use crate::hpm::{solve_hpm, HpmExpansion};
use crate::series::{expand_vector_in_time, ProblemSpec, SeriesError, TimeSeriesVec};
use crate::taylor::taylor_series;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// Pass/fail for one `t`-degree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeStatus {
    pub degree: usize,
    pub passed: bool,
    /// Largest sampled `|lhs - rhs|` over all components; `None` when no
    /// valid sample point could be found.
    pub max_deviation: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeRange {
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    /// Inclusive range of checked degrees.
    pub checked_orders: DegreeRange,
    pub per_order_status: Vec<DegreeStatus>,
    pub overall: bool,
}

impl ResidualReport {
    pub fn failed_degrees(&self) -> Vec<usize> {
        self.per_order_status
            .iter()
            .filter(|s| !s.passed)
            .map(|s| s.degree)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub corrections: usize,
    pub per_degree: Vec<DegreeStatus>,
    pub equivalent: bool,
}

/// Audit of one HPM correction `j ≥ 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrectionAudit {
    pub correction: usize,
    pub per_degree: Vec<DegreeStatus>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HpmAuditReport {
    pub corrections: Vec<CorrectionAudit>,
    pub overall: bool,
}

/// Compares two coefficient vectors componentwise.
fn compare_vectors(degree: usize, lhs: &[Expr], rhs: &[Expr], plan: &SamplePlan) -> DegreeStatus {
    let mut passed = true;
    let mut max_dev = Some(0.0_f64);
    for (a, b) in lhs.iter().zip(rhs) {
        match compare_sampled(a, b, plan) {
            Ok(stats) => {
                passed &= stats.equal;
                max_dev = max_dev.map(|m| m.max(stats.max_abs_deviation));
            }
            Err(_) => {
                passed = false;
                max_dev = None;
            }
        }
    }
    DegreeStatus {
        degree,
        passed,
        max_deviation: max_dev,
    }
}

/// Checks `rho · ∂²u/∂t² − L u − f ≡ 0` for degrees `0..=N−2` of `sol`.
///
/// Higher degrees depend on coefficients beyond the truncation and are not
/// examined.
pub fn residual_check(p: &ProblemSpec, sol: &TimeSeriesVec, plan: &SamplePlan) -> Result<ResidualReport, VerifyError> {
    plan.validate()?;
    let order = sol.order();
    if order < 2 {
        return Err(VerifyError::Precondition(format!(
            "residual needs order >= 2, got {order}"
        )));
    }
    if sol.system_size() != p.system_size() {
        return Err(SeriesError::mismatch("solution system size", p.system_size(), sol.system_size()).into());
    }
    let forcing = expand_vector_in_time(p.forcing(), order)?;
    let accel = sol.second_time_derivative();

    let mut per_order_status = Vec::with_capacity(order - 1);
    for d in 0..=order - 2 {
        let lhs = p.rho().apply(accel.coeff(d))?;
        let rhs: Vec<Expr> = p
            .operator()
            .apply(sol.coeff(d))?
            .into_iter()
            .zip(forcing.coeff(d))
            .map(|(lu, f)| lu + f.clone())
            .collect();
        let residual: Vec<Expr> = lhs.into_iter().zip(rhs).map(|(a, b)| a - b).collect();
        let zeros = vec![Expr::zero(); residual.len()];
        per_order_status.push(compare_vectors(d, &residual, &zeros, plan));
    }
    let overall = per_order_status.iter().all(|s| s.passed);
    Ok(ResidualReport {
        checked_orders: DegreeRange {
            start: 0,
            end: order - 2,
        },
        per_order_status,
        overall,
    })
}

/// Taylor coefficients to order `2J+1` against the HPM partial sum with `J`
/// corrections, degree by degree.
pub fn equivalence_check(
    p: &ProblemSpec,
    corrections: usize,
    plan: &SamplePlan,
) -> Result<EquivalenceReport, VerifyError> {
    plan.validate()?;
    if corrections == 0 {
        return Err(VerifyError::Precondition(
            "equivalence needs at least one correction".into(),
        ));
    }
    let top = 2 * corrections + 1;
    let taylor = taylor_series(&p.with_order(top)?)?;
    let hpm = solve_hpm(p, corrections)?.partial_sum(top);
    let per_degree: Vec<DegreeStatus> = (0..=top)
        .map(|d| compare_vectors(d, taylor.coeff(d), hpm.coeff(d), plan))
        .collect();
    let equivalent = per_degree.iter().all(|s| s.passed);
    Ok(EquivalenceReport {
        corrections,
        per_degree,
        equivalent,
    })
}

/// Verifies `∂²u^(j)/∂t² = rho⁻¹ (L u^(j−1) + f δ_{j1})` for every stored
/// correction `j ≥ 1` at degrees `0..=W−2`.
pub fn hpm_audit(p: &ProblemSpec, h: &HpmExpansion, plan: &SamplePlan) -> Result<HpmAuditReport, VerifyError> {
    plan.validate()?;
    let w = h.working_order();
    if w < 2 {
        return Err(VerifyError::Precondition(format!(
            "audit needs working order >= 2, got {w}"
        )));
    }
    let mut corrections = Vec::new();
    for (j, pair) in h.corrections().windows(2).enumerate() {
        let j = j + 1;
        let (prev, cur) = (&pair[0], &pair[1]);
        let lhs = cur.second_time_derivative();
        let mut rhs = prev.apply_operator(p.operator())?;
        if j == 1 {
            rhs = rhs.add(h.forcing())?;
        }
        let rhs = rhs.scale_matrix(p.rho_inv())?;
        let per_degree: Vec<DegreeStatus> = (0..=w - 2)
            .map(|d| compare_vectors(d, lhs.coeff(d), rhs.coeff(d), plan))
            .collect();
        let passed = per_degree.iter().all(|s| s.passed);
        corrections.push(CorrectionAudit {
            correction: j,
            per_degree,
            passed,
        });
    }
    let overall = corrections.iter().all(|c| c.passed);
    Ok(HpmAuditReport { corrections, overall })
}
