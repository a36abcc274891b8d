use num::BigInt;

use super::{RationalMatrix, SeriesError, SpatialOperator};
use crate::expr::{Expr, Rational};

/// Truncated vector series `Σ_{j=0}^{N} t^j c_j(x)`, `c_j ∈ Expr^m`.
///
/// `coeffs[j][k]` is component `k` of the degree-`j` coefficient. Every
/// coefficient is normalized and time-free, and there are exactly
/// `order + 1` of them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TimeSeriesVec {
    m: usize,
    coeffs: Vec<Vec<Expr>>,
}

impl TimeSeriesVec {
    pub fn new(m: usize, coeffs: Vec<Vec<Expr>>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::Invalid("a series needs at least one coefficient".into()));
        }
        let mut out = Vec::with_capacity(coeffs.len());
        for (j, c) in coeffs.into_iter().enumerate() {
            if c.len() != m {
                return Err(SeriesError::mismatch(format!("series coefficient {j}"), m, c.len()));
            }
            if c.iter().any(Expr::contains_time) {
                return Err(SeriesError::TimeNotAllowed {
                    what: format!("series coefficient {j}"),
                });
            }
            out.push(c.iter().map(Expr::normalize).collect());
        }
        Ok(TimeSeriesVec { m, coeffs: out })
    }

    /// Internal constructor for coefficients already known to be valid.
    pub(crate) fn from_parts(m: usize, coeffs: Vec<Vec<Expr>>) -> Self {
        debug_assert!(!coeffs.is_empty());
        debug_assert!(coeffs.iter().all(|c| c.len() == m));
        TimeSeriesVec { m, coeffs }
    }

    pub fn zeros(m: usize, order: usize) -> Self {
        TimeSeriesVec {
            m,
            coeffs: vec![vec![Expr::zero(); m]; order + 1],
        }
    }

    pub fn system_size(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Degree-`j` coefficient vector.
    pub fn coeff(&self, j: usize) -> &[Expr] {
        &self.coeffs[j]
    }

    pub fn get(&self, j: usize, component: usize) -> &Expr {
        &self.coeffs[j][component]
    }

    pub fn coeffs(&self) -> &[Vec<Expr>] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Vec<Expr>> {
        self.coeffs
    }

    /// Replaces one coefficient vector.
    pub fn with_coeff(mut self, j: usize, value: Vec<Expr>) -> Result<Self, SeriesError> {
        if j > self.order() {
            return Err(SeriesError::Invalid(format!(
                "degree {j} beyond order {}",
                self.order()
            )));
        }
        if value.len() != self.m {
            return Err(SeriesError::mismatch(
                format!("series coefficient {j}"),
                self.m,
                value.len(),
            ));
        }
        if value.iter().any(Expr::contains_time) {
            return Err(SeriesError::TimeNotAllowed {
                what: format!("series coefficient {j}"),
            });
        }
        self.coeffs[j] = value.iter().map(Expr::normalize).collect();
        Ok(self)
    }

    /// Truncates or zero-pads to `order`.
    pub fn resized(&self, order: usize) -> Self {
        let mut coeffs: Vec<Vec<Expr>> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, vec![Expr::zero(); self.m]);
        TimeSeriesVec { m: self.m, coeffs }
    }

    /// Coefficient-wise sum; the result has the larger of the two orders.
    pub fn add(&self, other: &TimeSeriesVec) -> Result<Self, SeriesError> {
        if self.m != other.m {
            return Err(SeriesError::mismatch("series sum", self.m, other.m));
        }
        let order = self.order().max(other.order());
        let zero = vec![Expr::zero(); self.m];
        let coeffs = (0..=order)
            .map(|j| {
                let a = self.coeffs.get(j).unwrap_or(&zero);
                let b = other.coeffs.get(j).unwrap_or(&zero);
                a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
            })
            .collect();
        Ok(TimeSeriesVec { m: self.m, coeffs })
    }

    /// `∂²/∂t²`: degree `j` of the result is `(j+1)(j+2)·c_{j+2}`. A series of
    /// order below 2 differentiates to the zero series of order 0.
    pub fn second_time_derivative(&self) -> Self {
        if self.order() < 2 {
            return Self::zeros(self.m, 0);
        }
        let coeffs = (0..=self.order() - 2)
            .map(|j| {
                let factor = Rational::from_integer(BigInt::from((j + 1) * (j + 2)));
                self.coeffs[j + 2].iter().map(|e| e.scale(&factor)).collect()
            })
            .collect();
        TimeSeriesVec { m: self.m, coeffs }
    }

    /// Double time integral with zero integration constants:
    /// `c·t^k ↦ c·t^{k+2}/((k+1)(k+2))`. Raises the order by two.
    pub fn double_time_integral(&self) -> Self {
        let mut coeffs = vec![vec![Expr::zero(); self.m]; 2];
        coeffs.extend(self.coeffs.iter().enumerate().map(|(k, c)| {
            let factor = Rational::new(BigInt::from(1), BigInt::from((k + 1) * (k + 2)));
            c.iter().map(|e| e.scale(&factor)).collect::<Vec<_>>()
        }));
        TimeSeriesVec { m: self.m, coeffs }
    }

    pub fn apply_operator(&self, op: &SpatialOperator) -> Result<Self, SeriesError> {
        let coeffs = self.coeffs.iter().map(|c| op.apply(c)).collect::<Result<_, _>>()?;
        Ok(TimeSeriesVec {
            m: op.system_size(),
            coeffs,
        })
    }

    pub fn scale_matrix(&self, matrix: &RationalMatrix) -> Result<Self, SeriesError> {
        let coeffs = self.coeffs.iter().map(|c| matrix.apply(c)).collect::<Result<_, _>>()?;
        Ok(TimeSeriesVec {
            m: matrix.size(),
            coeffs,
        })
    }

    /// Lowest degree with a structurally nonzero coefficient.
    pub fn min_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| c.iter().any(|e| !e.is_zero()))
    }

    /// Highest degree with a structurally nonzero coefficient.
    pub fn max_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| c.iter().any(|e| !e.is_zero()))
    }

    pub fn is_structurally_zero(&self) -> bool {
        self.min_degree().is_none()
    }

    /// Evaluates `Σ t^j c_j(x)` componentwise.
    pub fn evaluate(&self, point: &[f64], t: f64) -> Result<Vec<f64>, crate::expr::DomainError> {
        let mut out = vec![0.0; self.m];
        for (j, c) in self.coeffs.iter().enumerate() {
            let tj = t.powi(j as i32);
            for (k, e) in c.iter().enumerate() {
                if !e.is_zero() {
                    out[k] += tj * e.evaluate(point)?;
                }
            }
        }
        Ok(out)
    }
}

impl Default for TimeSeriesVec {
    fn default() -> Self {
        Self::zeros(1, 0)
    }
}
