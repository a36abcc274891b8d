use super::{RationalMatrix, SeriesError, SpatialOperator};
use crate::expr::Expr;

/// Unvalidated problem description; see [`ProblemSpec::new`].
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemData {
    pub m: usize,
    pub n: usize,
    pub rho: RationalMatrix,
    pub operator: SpatialOperator,
    /// Forcing `f(x, t)`; the time symbol is allowed.
    pub forcing: Vec<Expr>,
    pub u0: Vec<Expr>,
    pub u1: Vec<Expr>,
    pub order: usize,
}

/// Validated instance of `rho · u_tt = L u + f`, `u(x,0) = u0`, `u_t(x,0) = u1`.
///
/// `rho` is inverted once at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemSpec {
    m: usize,
    n: usize,
    rho: RationalMatrix,
    rho_inv: RationalMatrix,
    operator: SpatialOperator,
    forcing: Vec<Expr>,
    u0: Vec<Expr>,
    u1: Vec<Expr>,
    order: usize,
}

impl ProblemSpec {
    pub fn new(data: ProblemData) -> Result<Self, SeriesError> {
        let ProblemData {
            m,
            n,
            rho,
            operator,
            forcing,
            u0,
            u1,
            order,
        } = data;
        if m == 0 || n == 0 {
            return Err(SeriesError::Invalid("m and n must be at least 1".into()));
        }
        if order == 0 {
            return Err(SeriesError::Invalid("order must be at least 1".into()));
        }
        if rho.size() != m {
            return Err(SeriesError::mismatch("rho", m, rho.size()));
        }
        if operator.system_size() != m {
            return Err(SeriesError::mismatch("operator system size", m, operator.system_size()));
        }
        if operator.spatial_dim() != n {
            return Err(SeriesError::mismatch(
                "operator spatial dimension",
                n,
                operator.spatial_dim(),
            ));
        }
        for (name, v) in [("f", &forcing), ("u0", &u0), ("u1", &u1)] {
            if v.len() != m {
                return Err(SeriesError::mismatch(name, m, v.len()));
            }
            if let Some(e) = v.iter().find(|e| e.max_var() > n) {
                return Err(SeriesError::mismatch(format!("{name} variables"), n, e.max_var()));
            }
        }
        for (name, v) in [("u0", &u0), ("u1", &u1)] {
            if v.iter().any(Expr::contains_time) {
                return Err(SeriesError::TimeNotAllowed { what: name.into() });
            }
        }
        let rho_inv = rho.invert()?;
        let norm = |v: Vec<Expr>| v.iter().map(Expr::normalize).collect::<Vec<_>>();
        Ok(ProblemSpec {
            m,
            n,
            rho,
            rho_inv,
            operator,
            forcing: norm(forcing),
            u0: norm(u0),
            u1: norm(u1),
            order,
        })
    }

    pub fn system_size(&self) -> usize {
        self.m
    }

    pub fn spatial_dim(&self) -> usize {
        self.n
    }

    pub fn rho(&self) -> &RationalMatrix {
        &self.rho
    }

    pub fn rho_inv(&self) -> &RationalMatrix {
        &self.rho_inv
    }

    pub fn operator(&self) -> &SpatialOperator {
        &self.operator
    }

    pub fn forcing(&self) -> &[Expr] {
        &self.forcing
    }

    pub fn u0(&self) -> &[Expr] {
        &self.u0
    }

    pub fn u1(&self) -> &[Expr] {
        &self.u1
    }

    /// Truncation order `N`; solutions carry coefficients `0..=N`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn with_order(&self, order: usize) -> Result<Self, SeriesError> {
        if order == 0 {
            return Err(SeriesError::Invalid("order must be at least 1".into()));
        }
        Ok(ProblemSpec { order, ..self.clone() })
    }

    pub fn to_data(&self) -> ProblemData {
        ProblemData {
            m: self.m,
            n: self.n,
            rho: self.rho.clone(),
            operator: self.operator.clone(),
            forcing: self.forcing.clone(),
            u0: self.u0.clone(),
            u1: self.u1.clone(),
            order: self.order,
        }
    }
}
