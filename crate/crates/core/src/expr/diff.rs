use super::{Expr, Func, Rational};

/// Differentiation variable: a spatial coordinate or the time symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    Space(usize),
    Time,
}

impl Expr {
    /// Exact partial derivative with respect to `x_var`.
    pub fn differentiate(&self, var: usize) -> Expr {
        self.normalize().derivative(Symbol::Space(var))
    }

    /// Derivative of an already-normalized tree.
    pub fn derivative(&self, symbol: Symbol) -> Expr {
        if !self.depends_on(symbol) {
            return Expr::zero();
        }
        match self {
            Expr::Const(_) => Expr::zero(),
            Expr::Var(_) | Expr::Time => Expr::one(),
            Expr::Sum(terms) => Expr::sum(terms.iter().map(|t| t.derivative(symbol))),
            Expr::Product(factors) => {
                let terms = factors.iter().enumerate().filter_map(|(i, f)| {
                    let df = f.derivative(symbol);
                    if df.is_zero() {
                        return None;
                    }
                    let others = factors
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .map(|(_, g)| g.clone());
                    Some(Expr::product(others.chain(std::iter::once(df))))
                });
                Expr::sum(terms.collect::<Vec<_>>())
            }
            Expr::Pow(base, k) => Expr::product([
                Expr::Const(Rational::from_integer((*k).into())),
                base.as_ref().clone().pow(k - 1),
                base.derivative(symbol),
            ]),
            Expr::Func(func, arg) => {
                let inner = arg.derivative(symbol);
                let a = arg.as_ref().clone();
                let outer = match func {
                    Func::Sin => a.cos(),
                    Func::Cos => a.sin().neg(),
                    Func::Exp => self.clone(),
                    Func::Ln => a.pow(-1),
                    Func::Sinh => a.cosh(),
                    Func::Cosh => a.sinh(),
                    // 1 - tanh(a)^2
                    Func::Tanh => Expr::one() - self.clone().pow(2),
                };
                Expr::product([outer, inner])
            }
        }
    }

    /// Applies `d^k/dsymbol^k`.
    pub fn derivative_n(&self, symbol: Symbol, k: u32) -> Expr {
        let mut out = self.clone();
        for _ in 0..k {
            if out.is_zero() {
                break;
            }
            out = out.derivative(symbol);
        }
        out
    }
}
