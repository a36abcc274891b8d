use thiserror::Error;

use super::{rational_to_f64, Expr, Func};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("ln of non-positive argument {0}")]
    LogOfNonPositive(f64),
    #[error("division by zero (zero base raised to a negative power)")]
    DivisionByZero,
    #[error("variable x{index} outside point of dimension {dims}")]
    VariableOutOfRange { index: usize, dims: usize },
    #[error("time symbol evaluated without a time value")]
    TimeUnbound,
}

impl Expr {
    /// Evaluates a time-free expression at a spatial point.
    pub fn evaluate(&self, point: &[f64]) -> Result<f64, DomainError> {
        self.evaluate_at(point, None)
    }

    /// Evaluates at a spatial point and, if given, a time value.
    pub fn evaluate_at(&self, point: &[f64], time: Option<f64>) -> Result<f64, DomainError> {
        Ok(match self {
            Expr::Const(c) => rational_to_f64(c),
            Expr::Var(i) => *point.get(i.wrapping_sub(1)).ok_or(DomainError::VariableOutOfRange {
                index: *i,
                dims: point.len(),
            })?,
            Expr::Time => time.ok_or(DomainError::TimeUnbound)?,
            Expr::Sum(terms) => {
                let mut acc = 0.0;
                for t in terms {
                    acc += t.evaluate_at(point, time)?;
                }
                acc
            }
            Expr::Product(factors) => {
                let mut acc = 1.0;
                for f in factors {
                    acc *= f.evaluate_at(point, time)?;
                }
                acc
            }
            Expr::Pow(base, k) => {
                let b = base.evaluate_at(point, time)?;
                if b == 0.0 && *k < 0 {
                    return Err(DomainError::DivisionByZero);
                }
                match i32::try_from(*k) {
                    Ok(k) => b.powi(k),
                    Err(_) => b.powf(*k as f64),
                }
            }
            Expr::Func(func, arg) => {
                let a = arg.evaluate_at(point, time)?;
                match func {
                    Func::Sin => a.sin(),
                    Func::Cos => a.cos(),
                    Func::Exp => a.exp(),
                    Func::Ln => {
                        if a <= 0.0 {
                            return Err(DomainError::LogOfNonPositive(a));
                        }
                        a.ln()
                    }
                    Func::Sinh => a.sinh(),
                    Func::Cosh => a.cosh(),
                    Func::Tanh => a.tanh(),
                }
            }
        })
    }
}
