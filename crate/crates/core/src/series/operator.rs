use std::collections::HashMap;

use super::SeriesError;
use crate::expr::{Expr, Symbol};

/// One term `coeff(x) · ∂^multi_index` acting from component `col` into
/// component `row`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OperatorTerm {
    pub row: usize,
    pub col: usize,
    pub coeff: Expr,
    /// Derivative order per spatial variable; length `n`.
    pub multi_index: Vec<u32>,
}

/// Matrix-valued linear differential operator, the sum of its terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpatialOperator {
    m: usize,
    n: usize,
    terms: Vec<OperatorTerm>,
}

impl SpatialOperator {
    pub fn new(m: usize, n: usize, terms: Vec<OperatorTerm>) -> Result<Self, SeriesError> {
        for (i, term) in terms.iter().enumerate() {
            if term.row >= m {
                return Err(SeriesError::mismatch(format!("operator term {i} row"), m, term.row));
            }
            if term.col >= m {
                return Err(SeriesError::mismatch(format!("operator term {i} col"), m, term.col));
            }
            if term.multi_index.len() != n {
                return Err(SeriesError::mismatch(
                    format!("operator term {i} multi-index"),
                    n,
                    term.multi_index.len(),
                ));
            }
            if term.coeff.contains_time() {
                return Err(SeriesError::TimeNotAllowed {
                    what: format!("operator term {i} coefficient"),
                });
            }
            if term.coeff.max_var() > n {
                return Err(SeriesError::mismatch(
                    format!("operator term {i} coefficient variables"),
                    n,
                    term.coeff.max_var(),
                ));
            }
        }
        let terms = terms
            .into_iter()
            .map(|t| OperatorTerm {
                coeff: t.coeff.normalize(),
                ..t
            })
            .collect();
        Ok(SpatialOperator { m, n, terms })
    }

    /// `∇²` acting on each of the `m` components independently.
    pub fn laplacian(m: usize, n: usize) -> Self {
        let mut terms = Vec::with_capacity(m * n);
        for c in 0..m {
            for v in 0..n {
                let mut multi_index = vec![0; n];
                multi_index[v] = 2;
                terms.push(OperatorTerm {
                    row: c,
                    col: c,
                    coeff: Expr::one(),
                    multi_index,
                });
            }
        }
        SpatialOperator { m, n, terms }
    }

    pub fn system_size(&self) -> usize {
        self.m
    }

    pub fn spatial_dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[OperatorTerm] {
        &self.terms
    }

    /// `(L v)_r = Σ_{terms with row r} coeff · ∂^α v[col]`.
    pub fn apply(&self, v: &[Expr]) -> Result<Vec<Expr>, SeriesError> {
        if v.len() != self.m {
            return Err(SeriesError::mismatch("operator argument", self.m, v.len()));
        }
        if let Some(i) = v.iter().position(Expr::contains_time) {
            return Err(SeriesError::TimeNotAllowed {
                what: format!("operator argument component {i}"),
            });
        }
        let mut partials: HashMap<(usize, &[u32]), Expr> = HashMap::new();
        let mut rows: Vec<Vec<Expr>> = vec![Vec::new(); self.m];
        for term in &self.terms {
            if v[term.col].is_zero() {
                continue;
            }
            let d = partials
                .entry((term.col, term.multi_index.as_slice()))
                .or_insert_with(|| partial(&v[term.col], &term.multi_index))
                .clone();
            if !d.is_zero() {
                rows[term.row].push(term.coeff.clone() * d);
            }
        }
        Ok(rows.into_iter().map(Expr::sum).collect())
    }
}

fn partial(e: &Expr, multi_index: &[u32]) -> Expr {
    multi_index
        .iter()
        .enumerate()
        .fold(e.clone(), |acc, (v, &k)| acc.derivative_n(Symbol::Space(v + 1), k))
}
