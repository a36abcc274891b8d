//! JSON problem files.
//!
//! ```json
//! {
//!   "m": 1, "n": 2,
//!   "rho": [["1"]],
//!   "L": [{"row": 0, "col": 0, "coeff": "1", "derivs": [2, 0]}],
//!   "f": ["t*x1"], "u0": ["0"], "u1": ["x2"],
//!   "order": 6
//! }
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{parse_expr_with, print_expr, ParseError, TimeSymbol};
use crate::expr::{Expr, Rational};
use crate::series::{OperatorTerm, ProblemData, ProblemSpec, RationalMatrix, SeriesError, SpatialOperator};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProblemError {
    #[error("format error: {0}")]
    Format(String),
    #[error("in field `{field}`: {source}")]
    Expression {
        field: String,
        #[source]
        source: ParseError,
    },
    #[error("dimension mismatch in `{field}`: expected {expected}, found {found}")]
    DimensionMismatch {
        field: String,
        expected: usize,
        found: usize,
    },
    #[error("rho is singular (rank {rank} < {size})")]
    SingularRho { rank: usize, size: usize },
    #[error("time symbol not allowed in `{field}`")]
    TimeNotAllowed { field: String },
    #[error(transparent)]
    Series(SeriesError),
}

impl From<SeriesError> for ProblemError {
    fn from(e: SeriesError) -> Self {
        match e {
            SeriesError::SingularRho { rank, size } => ProblemError::SingularRho { rank, size },
            SeriesError::DimensionMismatch { what, expected, found } => ProblemError::DimensionMismatch {
                field: what,
                expected,
                found,
            },
            SeriesError::TimeNotAllowed { what } => ProblemError::TimeNotAllowed { field: what },
            other => ProblemError::Series(other),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    m: usize,
    n: usize,
    rho: Vec<Vec<String>>,
    #[serde(rename = "L")]
    operator: Vec<RawTerm>,
    f: Vec<String>,
    u0: Vec<String>,
    u1: Vec<String>,
    order: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    row: usize,
    col: usize,
    coeff: String,
    derivs: Vec<u32>,
}

/// Parses an exact rational literal: `3`, `-3/2`, `0.25`, `-1.5/3`.
pub fn parse_rational(src: &str) -> Option<Rational> {
    let s = src.trim();
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, s),
    };
    let (num, den) = match body.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (body, None),
    };
    let decimal = |text: &str| -> Option<Rational> {
        let tokens = super::tokenize(text).ok()?;
        match tokens.as_slice() {
            [tok, end] if tok.kind == super::TokenKind::Number && end.kind == super::TokenKind::End => {
                Some(tok.number_value())
            }
            _ => None,
        }
    };
    let mut value = decimal(num)?;
    if let Some(den) = den {
        let d = decimal(den)?;
        if num::Zero::is_zero(&d) {
            return None;
        }
        value /= d;
    }
    Some(if negative { -value } else { value })
}

fn check_len(field: &str, expected: usize, found: usize) -> Result<(), ProblemError> {
    if expected != found {
        return Err(ProblemError::DimensionMismatch {
            field: field.into(),
            expected,
            found,
        });
    }
    Ok(())
}

fn parse_field(field: String, src: &str, n: usize, time: TimeSymbol) -> Result<Expr, ProblemError> {
    parse_expr_with(src, n, time).map_err(|source| match source {
        ParseError::TimeNotAllowed { .. } => ProblemError::TimeNotAllowed { field },
        source => ProblemError::Expression { field, source },
    })
}

/// Reads and validates a problem file; `rho` is inverted here so a singular
/// matrix fails at load time.
pub fn parse_problem(src: &str) -> Result<ProblemSpec, ProblemError> {
    let raw: RawProblem = serde_json::from_str(src).map_err(|e| ProblemError::Format(e.to_string()))?;
    let RawProblem {
        m,
        n,
        rho,
        operator,
        f,
        u0,
        u1,
        order,
    } = raw;
    if m == 0 {
        return Err(ProblemError::Format("`m` must be at least 1".into()));
    }
    if n == 0 {
        return Err(ProblemError::Format("`n` must be at least 1".into()));
    }
    if order == 0 {
        return Err(ProblemError::Format("`order` must be at least 1".into()));
    }

    check_len("rho", m, rho.len())?;
    let mut rho_rows = Vec::with_capacity(m);
    for (r, row) in rho.iter().enumerate() {
        check_len(&format!("rho[{r}]"), m, row.len())?;
        let parsed = row
            .iter()
            .enumerate()
            .map(|(c, s)| {
                parse_rational(s).ok_or_else(|| ProblemError::Format(format!("rho[{r}][{c}]: `{s}` is not a rational")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        rho_rows.push(parsed);
    }
    let rho = RationalMatrix::new(rho_rows)?;

    let mut terms = Vec::with_capacity(operator.len());
    for (i, t) in operator.into_iter().enumerate() {
        if t.row >= m {
            return Err(ProblemError::DimensionMismatch {
                field: format!("L[{i}].row"),
                expected: m,
                found: t.row,
            });
        }
        if t.col >= m {
            return Err(ProblemError::DimensionMismatch {
                field: format!("L[{i}].col"),
                expected: m,
                found: t.col,
            });
        }
        check_len(&format!("L[{i}].derivs"), n, t.derivs.len())?;
        let coeff = parse_field(format!("L[{i}].coeff"), &t.coeff, n, TimeSymbol::Forbidden)?;
        terms.push(OperatorTerm {
            row: t.row,
            col: t.col,
            coeff,
            multi_index: t.derivs,
        });
    }
    let operator = SpatialOperator::new(m, n, terms)?;

    let vector = |name: &str, items: Vec<String>, time: TimeSymbol| -> Result<Vec<Expr>, ProblemError> {
        check_len(name, m, items.len())?;
        items
            .iter()
            .enumerate()
            .map(|(k, s)| parse_field(format!("{name}[{k}]"), s, n, time))
            .collect()
    };
    let forcing = vector("f", f, TimeSymbol::Allowed)?;
    let u0 = vector("u0", u0, TimeSymbol::Forbidden)?;
    let u1 = vector("u1", u1, TimeSymbol::Forbidden)?;

    Ok(ProblemSpec::new(ProblemData {
        m,
        n,
        rho,
        operator,
        forcing,
        u0,
        u1,
        order,
    })?)
}

/// Serializes a problem back into the file format (pretty JSON, canonical
/// expression text).
pub fn write_problem(p: &ProblemSpec) -> String {
    let exprs = |v: &[Expr]| v.iter().map(print_expr).collect::<Vec<_>>();
    let raw = RawProblem {
        m: p.system_size(),
        n: p.spatial_dim(),
        rho: p
            .rho()
            .rows()
            .map(|row| row.iter().map(|c| c.to_string()).collect())
            .collect(),
        operator: p
            .operator()
            .terms()
            .iter()
            .map(|t| RawTerm {
                row: t.row,
                col: t.col,
                coeff: print_expr(&t.coeff),
                derivs: t.multi_index.clone(),
            })
            .collect(),
        f: exprs(p.forcing()),
        u0: exprs(p.u0()),
        u1: exprs(p.u1()),
        order: p.order(),
    };
    serde_json::to_string_pretty(&raw).expect("problem serializes")
}
