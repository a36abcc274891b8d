use num::{BigInt, One};

use super::{SeriesError, TimeSeriesVec};
use crate::expr::{Expr, Rational, Symbol};

/// Coefficients `g_0..g_N` of `e(x, t) = Σ t^j g_j(x) + O(t^{N+1})`.
///
/// Computed by repeated symbolic `t`-differentiation, substitution `t = 0`
/// and exact division by `j!`.
pub fn expand_in_time(e: &Expr, order: usize) -> Result<Vec<Expr>, SeriesError> {
    let zero_time = Expr::zero();
    let mut out = Vec::with_capacity(order + 1);
    let mut current = e.normalize();
    let mut inv_factorial = Rational::one();
    for j in 0..=order {
        if j > 0 {
            inv_factorial /= Rational::from_integer(BigInt::from(j));
        }
        if current.is_zero() {
            out.push(Expr::zero());
            continue;
        }
        let at_zero = current.substitute_time(&zero_time);
        if at_zero.is_undefined() {
            return Err(SeriesError::ExpansionSingular { degree: j });
        }
        out.push(at_zero.scale(&inv_factorial));
        current = if current.contains_time() {
            current.derivative(Symbol::Time)
        } else {
            Expr::zero()
        };
    }
    Ok(out)
}

/// Componentwise [`expand_in_time`], transposed into a series.
pub fn expand_vector_in_time(es: &[Expr], order: usize) -> Result<TimeSeriesVec, SeriesError> {
    let per_component = es
        .iter()
        .map(|e| expand_in_time(e, order))
        .collect::<Result<Vec<_>, _>>()?;
    let coeffs = (0..=order)
        .map(|j| per_component.iter().map(|c| c[j].clone()).collect())
        .collect();
    Ok(TimeSeriesVec::from_parts(es.len(), coeffs))
}
