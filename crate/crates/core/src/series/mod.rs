//! Exact linear algebra for the mass matrix, matrix-valued spatial operators
//! and truncated time-power series with expression coefficients.

mod expand;
mod matrix;
mod operator;
mod problem;
mod timeseries;

use thiserror::Error;

pub use expand::{expand_in_time, expand_vector_in_time};
pub use matrix::{series_scale_matrix, RationalMatrix};
pub use operator::{OperatorTerm, SpatialOperator};
pub use problem::{ProblemData, ProblemSpec};
pub use timeseries::TimeSeriesVec;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("rho is singular (rank {rank} < {size})")]
    SingularRho { rank: usize, size: usize },
    #[error("time expansion is singular at t = 0 for coefficient {degree}")]
    ExpansionSingular { degree: usize },
    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: String,
        expected: usize,
        found: usize,
    },
    #[error("time symbol not allowed in {what}")]
    TimeNotAllowed { what: String },
    #[error("invalid argument: {0}")]
    Invalid(String),
}

impl SeriesError {
    pub(crate) fn mismatch(what: impl Into<String>, expected: usize, found: usize) -> Self {
        SeriesError::DimensionMismatch {
            what: what.into(),
            expected,
            found,
        }
    }
}
