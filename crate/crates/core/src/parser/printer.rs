use num::{Signed, Zero};

use crate::expr::{Expr, Rational};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Ctx {
    /// Top level, function argument, or summand.
    Term,
    /// Operand of `*`.
    Factor,
    /// Base of `^`.
    PowBase,
}

/// Renders an expression in the input grammar.
///
/// For normalized input, parsing the output yields a structurally equal tree.
pub fn print_expr(e: &Expr) -> String {
    let mut out = String::new();
    write_expr(&mut out, e, Ctx::Term);
    out
}

fn write_rational(out: &mut String, c: &Rational) {
    if c.is_integer() {
        out.push_str(&c.numer().to_string());
    } else {
        out.push_str(&format!("{}/{}", c.numer(), c.denom()));
    }
}

fn write_expr(out: &mut String, e: &Expr, ctx: Ctx) {
    match e {
        Expr::Const(c) => {
            let needs_parens = ctx == Ctx::PowBase && (c.is_negative() || !c.is_integer());
            wrap(out, needs_parens, |out| write_rational(out, c));
        }
        Expr::Var(i) => out.push_str(&format!("x{i}")),
        Expr::Time => out.push('t'),
        Expr::Pow(base, k) => {
            wrap(out, ctx == Ctx::PowBase, |out| {
                write_expr(out, base, Ctx::PowBase);
                out.push_str(&format!("^{k}"));
            });
        }
        Expr::Func(f, arg) => {
            out.push_str(f.name());
            out.push('(');
            write_expr(out, arg, Ctx::Term);
            out.push(')');
        }
        Expr::Product(factors) => {
            wrap(out, ctx != Ctx::Term, |out| write_product(out, factors));
        }
        Expr::Sum(terms) => {
            wrap(out, ctx != Ctx::Term, |out| {
                for (i, term) in terms.iter().enumerate() {
                    match negated_term(term) {
                        Some(positive) if i > 0 => {
                            out.push_str(" - ");
                            write_expr(out, &positive, Ctx::Term);
                        }
                        _ => {
                            if i > 0 {
                                out.push_str(" + ");
                            }
                            write_expr(out, term, Ctx::Term);
                        }
                    }
                }
            });
        }
    }
}

fn write_product(out: &mut String, factors: &[Expr]) {
    let (coeff, rest) = match factors.split_first() {
        Some((Expr::Const(c), rest)) if !rest.is_empty() => (Some(c), rest),
        _ => (None, factors),
    };
    if let Some(c) = coeff {
        if *c == -Rational::from_integer(1.into()) {
            out.push('-');
        } else if !(c.is_integer() && c.numer() == &1.into()) {
            write_rational(out, c);
            out.push('*');
        }
    }
    for (i, f) in rest.iter().enumerate() {
        if i > 0 {
            out.push('*');
        }
        write_expr(out, f, Ctx::Factor);
    }
}

/// If `term` carries a negative coefficient, returns the term with the
/// sign flipped.
fn negated_term(term: &Expr) -> Option<Expr> {
    match term {
        Expr::Const(c) if c.is_negative() => Some(Expr::Const(-c)),
        Expr::Product(factors) => match factors.split_first() {
            Some((Expr::Const(c), rest)) if c.is_negative() && !c.is_zero() => {
                let flipped = -c;
                let mut out = Vec::with_capacity(factors.len());
                if flipped != Rational::from_integer(1.into()) {
                    out.push(Expr::Const(flipped));
                }
                out.extend(rest.iter().cloned());
                Some(if out.len() == 1 {
                    out.pop().unwrap()
                } else {
                    Expr::Product(out)
                })
            }
            _ => None,
        },
        _ => None,
    }
}

fn wrap(out: &mut String, parens: bool, body: impl FnOnce(&mut String)) {
    if parens {
        out.push('(');
    }
    body(out);
    if parens {
        out.push(')');
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_expr;

    fn x(i: usize) -> Expr {
        Expr::var(i)
    }

    #[test]
    fn simple_forms() {
        assert_eq!(print_expr(&(Expr::int(2) * x(1))), "2*x1");
        assert_eq!(print_expr(&x(1).sin().pow(2)), "sin(x1)^2");
        assert_eq!(print_expr(&(Expr::rational(1, 2) * x(1).pow(2))), "1/2*x1^2");
        assert_eq!(print_expr(&(x(1) - x(2))), "x1 - x2");
        assert_eq!(print_expr(&x(1).pow(2).neg()), "-x1^2");
        assert_eq!(print_expr(&(x(1) / x(2))), "x1*x2^-1");
        assert_eq!(print_expr(&Expr::undefined()), "0^-1");
        assert_eq!(print_expr(&(x(1) + Expr::one()).pow(3)), "(1 + x1)^3");
        assert_eq!(print_expr(&Expr::rational(-3, 4)), "-3/4");
    }

    #[test]
    fn product_factor_order_matches_input_convention() {
        let e = x(1).sin().pow(2) * x(2).cos();
        assert_eq!(print_expr(&e), "sin(x1)^2*cos(x2)");
    }

    #[test]
    fn raw_trees_print_unambiguously() {
        let raw = Expr::Pow(Box::new(Expr::Const(Rational::new((-1).into(), 2.into()))), 3);
        assert_eq!(print_expr(&raw), "(-1/2)^3");
        assert_eq!(parse_expr(&print_expr(&raw), 1).unwrap(), raw.normalize());
        let raw = Expr::Product(vec![x(1), Expr::Product(vec![Expr::int(-1), x(2)])]);
        assert_eq!(parse_expr(&print_expr(&raw), 2).unwrap(), raw.normalize());
    }

    #[test]
    fn round_trips() {
        let samples = [
            "x1 - 3",
            "-3 + x1",
            "-x1*x2 + 2*(x1 + x2)*x2^-2",
            "sin(1/2)*exp(-x1) - 7/3*tanh(x2)^2",
            "ln(x1^2 + 1)^-1 - cosh(t*x1)",
            "0^-1",
        ];
        for src in samples {
            let e = parse_expr(src, 2).unwrap();
            let printed = print_expr(&e);
            assert_eq!(parse_expr(&printed, 2).unwrap(), e, "{src} -> {printed}");
        }
    }
}
