//! Homotopy-perturbation corrections.
//!
//! With `rho · u_tt = p [L u + f]` and `u = Σ p^j u^(j)`, matching powers of
//! `p` gives
//!
//! ```text
//! ∂²u^(0)/∂t² = 0
//! ∂²u^(j)/∂t² = rho⁻¹ [L u^(j-1) + f δ_{j1}],   j ≥ 1
//! ```
//!
//! `u^(0) = u0 + t u1` carries all of the initial data, so every later
//! correction is the double time integral with zero integration constants.
//! The sum is evaluated at `p = 1`.

use crate::series::{expand_vector_in_time, ProblemSpec, SeriesError, TimeSeriesVec};

#[derive(Clone, Debug, PartialEq)]
pub struct HpmExpansion {
    corrections: Vec<TimeSeriesVec>,
    forcing: TimeSeriesVec,
    working_order: usize,
}

impl HpmExpansion {
    /// Assembles an expansion from precomputed corrections, e.g. to audit
    /// corrections produced elsewhere. All series are resized to
    /// `working_order`.
    pub fn from_parts(
        corrections: Vec<TimeSeriesVec>,
        forcing: TimeSeriesVec,
        working_order: usize,
    ) -> Result<Self, SeriesError> {
        if corrections.is_empty() {
            return Err(SeriesError::Invalid(
                "at least the zeroth correction is required".into(),
            ));
        }
        let m = forcing.system_size();
        if let Some(c) = corrections.iter().find(|c| c.system_size() != m) {
            return Err(SeriesError::mismatch("correction system size", m, c.system_size()));
        }
        Ok(HpmExpansion {
            corrections: corrections.iter().map(|c| c.resized(working_order)).collect(),
            forcing: forcing.resized(working_order),
            working_order,
        })
    }

    /// `u^(0) ..= u^(J)`.
    pub fn corrections(&self) -> &[TimeSeriesVec] {
        &self.corrections
    }

    /// Highest correction index `J`.
    pub fn max_correction(&self) -> usize {
        self.corrections.len() - 1
    }

    /// Time expansion of `f` that entered the first correction.
    pub fn forcing(&self) -> &TimeSeriesVec {
        &self.forcing
    }

    /// Degree at which every stored correction is truncated.
    pub fn working_order(&self) -> usize {
        self.working_order
    }

    /// Coefficient-wise `Σ_j u^(j)` (the `p = 1` value) over degrees `0..=degree`.
    pub fn partial_sum(&self, degree: usize) -> TimeSeriesVec {
        let m = self.forcing.system_size();
        self.corrections.iter().fold(TimeSeriesVec::zeros(m, degree), |acc, c| {
            acc.add(&c.resized(degree)).expect("corrections share the system size")
        })
    }
}

/// Computes `u^(0) ..= u^(J)`.
///
/// Corrections are kept to the working order `W = 2J + 1 + d`, where `d`
/// is the highest nonzero degree of `f` expanded to `max(N, 2J + 1)`. The
/// forcing itself is expanded through `W`, so every stored coefficient is
/// exact and raising `J` never changes the lower corrections.
pub fn solve_hpm(p: &ProblemSpec, corrections: usize) -> Result<HpmExpansion, SeriesError> {
    let m = p.system_size();
    let probe_order = p.order().max(2 * corrections + 1);
    let forcing = expand_vector_in_time(p.forcing(), probe_order)?;
    let forcing_degree = forcing.max_degree().unwrap_or(0);
    let working_order = 2 * corrections + 1 + forcing_degree;
    let forcing = if working_order > probe_order {
        expand_vector_in_time(p.forcing(), working_order)?
    } else {
        forcing.resized(working_order)
    };

    let zeroth = TimeSeriesVec::zeros(m, working_order)
        .with_coeff(0, p.u0().to_vec())?
        .with_coeff(1, p.u1().to_vec())?;
    let mut out = Vec::with_capacity(corrections + 1);
    out.push(zeroth);
    for j in 1..=corrections {
        let mut rhs = out[j - 1].apply_operator(p.operator())?;
        if j == 1 {
            rhs = rhs.add(&forcing)?;
        }
        let next = rhs
            .scale_matrix(p.rho_inv())?
            .double_time_integral()
            .resized(working_order);
        out.push(next);
    }
    Ok(HpmExpansion {
        corrections: out,
        forcing,
        working_order,
    })
}
