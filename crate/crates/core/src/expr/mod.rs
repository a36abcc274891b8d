//! Symbolic scalar expressions.
//!
//! An [`Expr`] is an immutable tree over the spatial variables `x1..xn`,
//! exact rational constants and a small set of elementary functions. The
//! time symbol `t` is only permitted in the extended expression space used
//! for forcing terms; it is eliminated by expanding in powers of `t`.
//!
//! Every constructor in this module assumes its operands are already
//! normalized and returns a normalized tree. [`Expr::normalize`] brings an
//! arbitrary tree into that form.

mod diff;
mod eval;
mod sample;

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

pub use diff::Symbol;
pub use eval::DomainError;
pub use sample::{compare_sampled, equal_sampled, is_zero_sampled, Interval, SampleError, SamplePlan, SampleStats};

/// Exact rational number used for every constant in the symbolic layer.
pub type Rational = BigRational;

/// Elementary functions admitted by the grammar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Ln,
    Sinh,
    Cosh,
    Tanh,
}

impl Func {
    pub const ALL: [Func; 7] = [
        Func::Sin,
        Func::Cos,
        Func::Exp,
        Func::Ln,
        Func::Sinh,
        Func::Cosh,
        Func::Tanh,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.iter().copied().find(|f| f.name() == name)
    }
}

impl fmt::Display for Func {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Expression tree node.
///
/// The derived ordering is the fixed total order used to sort the terms of
/// sums during normalization; product factors are sorted by base, then by
/// exponent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Expr {
    Const(Rational),
    /// Spatial variable `x_i`, 1-based.
    Var(usize),
    /// The time symbol `t` (extended expression space only).
    Time,
    /// Integer power; exponent is never 0 or 1 once normalized.
    Pow(Box<Expr>, i64),
    Func(Func, Box<Expr>),
    Product(Vec<Expr>),
    Sum(Vec<Expr>),
}

impl Default for Expr {
    fn default() -> Self {
        Expr::zero()
    }
}

impl Expr {
    pub fn zero() -> Expr {
        Expr::Const(Rational::zero())
    }

    pub fn one() -> Expr {
        Expr::Const(Rational::one())
    }

    pub fn int(value: i64) -> Expr {
        Expr::Const(Rational::from_integer(BigInt::from(value)))
    }

    /// `numer/denom` reduced. Panics on a zero denominator.
    pub fn rational(numer: i64, denom: i64) -> Expr {
        Expr::Const(Rational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn constant(value: Rational) -> Expr {
        Expr::Const(value)
    }

    /// Spatial variable `x_index` (1-based).
    pub fn var(index: usize) -> Expr {
        assert!(index >= 1, "spatial variables are 1-based");
        Expr::Var(index)
    }

    pub fn time() -> Expr {
        Expr::Time
    }

    /// Canonical marker for a value that is undefined over the reals,
    /// printed as `0^-1`. It absorbs every enclosing operation.
    pub fn undefined() -> Expr {
        Expr::Pow(Box::default(), -1)
    }

    pub fn is_undefined(&self) -> bool {
        matches!(self, Expr::Pow(base, -1) if base.is_zero())
    }

    /// Structural zero test. Use [`is_zero_sampled`] for value-level zero.
    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Const(c) if c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Expr::Const(c) if c.is_one())
    }

    pub fn as_const(&self) -> Option<&Rational> {
        match self {
            Expr::Const(c) => Some(c),
            _ => None,
        }
    }

    pub fn contains_time(&self) -> bool {
        match self {
            Expr::Const(_) | Expr::Var(_) => false,
            Expr::Time => true,
            Expr::Pow(b, _) | Expr::Func(_, b) => b.contains_time(),
            Expr::Product(xs) | Expr::Sum(xs) => xs.iter().any(Expr::contains_time),
        }
    }

    /// Largest spatial variable index appearing in the tree (0 if none).
    pub fn max_var(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Time => 0,
            Expr::Var(i) => *i,
            Expr::Pow(b, _) | Expr::Func(_, b) => b.max_var(),
            Expr::Product(xs) | Expr::Sum(xs) => xs.iter().map(Expr::max_var).max().unwrap_or(0),
        }
    }

    pub fn depends_on(&self, symbol: Symbol) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Var(i) => symbol == Symbol::Space(*i),
            Expr::Time => symbol == Symbol::Time,
            Expr::Pow(b, _) | Expr::Func(_, b) => b.depends_on(symbol),
            Expr::Product(xs) | Expr::Sum(xs) => xs.iter().any(|x| x.depends_on(symbol)),
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Var(_) | Expr::Time => 1,
            Expr::Pow(b, _) | Expr::Func(_, b) => 1 + b.size(),
            Expr::Product(xs) | Expr::Sum(xs) => 1 + xs.iter().map(Expr::size).sum::<usize>(),
        }
    }

    /// Flattens nested sums and products, folds constants exactly, collects
    /// like terms and like factors, drops zero summands and unit factors and
    /// sorts children. A sum appearing as a factor is rescaled so that its
    /// first term has coefficient one, the scale moving into the product's
    /// coefficient; a coefficient times a single sum is distributed. No
    /// trigonometric or exponential identities are used.
    pub fn normalize(&self) -> Expr {
        match self {
            Expr::Const(_) | Expr::Var(_) | Expr::Time => self.clone(),
            Expr::Pow(b, k) => b.normalize().pow(*k),
            Expr::Func(f, a) => Expr::apply(*f, a.normalize()),
            Expr::Product(xs) => Expr::product(xs.iter().map(Expr::normalize)),
            Expr::Sum(xs) => Expr::sum(xs.iter().map(Expr::normalize)),
        }
    }

    /// Replaces the time symbol by `value` and renormalizes.
    pub fn substitute_time(&self, value: &Expr) -> Expr {
        if !self.contains_time() {
            return self.clone();
        }
        match self {
            Expr::Time => value.clone(),
            Expr::Const(_) | Expr::Var(_) => self.clone(),
            Expr::Pow(b, k) => b.substitute_time(value).pow(*k),
            Expr::Func(f, a) => Expr::apply(*f, a.substitute_time(value)),
            Expr::Product(xs) => Expr::product(xs.iter().map(|x| x.substitute_time(value))),
            Expr::Sum(xs) => Expr::sum(xs.iter().map(|x| x.substitute_time(value))),
        }
    }

    /// `base^exponent`.
    pub fn pow(self, exponent: i64) -> Expr {
        if self.is_undefined() {
            return Expr::undefined();
        }
        if exponent == 0 {
            return Expr::one();
        }
        if exponent == 1 {
            return self;
        }
        match self {
            Expr::Const(c) => {
                if c.is_zero() {
                    if exponent > 0 {
                        Expr::zero()
                    } else {
                        Expr::undefined()
                    }
                } else {
                    Expr::Const(rational_pow(&c, exponent))
                }
            }
            Expr::Pow(b, k) => match k.checked_mul(exponent) {
                Some(e) => b.pow(e),
                None => Expr::Pow(Box::new(Expr::Pow(b, k)), exponent),
            },
            Expr::Product(factors) => Expr::product(factors.into_iter().map(|f| f.pow(exponent))),
            Expr::Sum(terms) => {
                let (content, monic) = primitive_sum(terms);
                let power = Expr::Pow(Box::new(monic), exponent);
                let factor = rational_pow(&content, exponent);
                if factor.is_one() {
                    power
                } else {
                    Expr::Product(vec![Expr::Const(factor), power])
                }
            }
            other => Expr::Pow(Box::new(other), exponent),
        }
    }

    /// Applies an elementary function, folding the exact special values
    /// `f(0)` and `ln(1)`.
    pub fn apply(func: Func, arg: Expr) -> Expr {
        if arg.is_undefined() {
            return Expr::undefined();
        }
        if let Expr::Const(c) = &arg {
            if c.is_zero() {
                return match func {
                    Func::Sin | Func::Sinh | Func::Tanh => Expr::zero(),
                    Func::Cos | Func::Cosh | Func::Exp => Expr::one(),
                    Func::Ln => Expr::undefined(),
                };
            }
            if func == Func::Ln {
                if c.is_one() {
                    return Expr::zero();
                }
                if c.is_negative() {
                    return Expr::undefined();
                }
            }
        }
        Expr::Func(func, Box::new(arg))
    }

    pub fn sin(self) -> Expr {
        Expr::apply(Func::Sin, self)
    }

    pub fn cos(self) -> Expr {
        Expr::apply(Func::Cos, self)
    }

    pub fn exp(self) -> Expr {
        Expr::apply(Func::Exp, self)
    }

    pub fn ln(self) -> Expr {
        Expr::apply(Func::Ln, self)
    }

    pub fn sinh(self) -> Expr {
        Expr::apply(Func::Sinh, self)
    }

    pub fn cosh(self) -> Expr {
        Expr::apply(Func::Cosh, self)
    }

    pub fn tanh(self) -> Expr {
        Expr::apply(Func::Tanh, self)
    }

    /// Multiplies by an exact rational.
    pub fn scale(&self, factor: &Rational) -> Expr {
        if factor.is_zero() {
            return if self.is_undefined() {
                Expr::undefined()
            } else {
                Expr::zero()
            };
        }
        if factor.is_one() {
            return self.clone();
        }
        Expr::product([Expr::Const(factor.clone()), self.clone()])
    }

    /// Sum of normalized terms.
    pub fn sum<I: IntoIterator<Item = Expr>>(terms: I) -> Expr {
        let mut constant = Rational::zero();
        let mut collected: BTreeMap<Expr, Rational> = BTreeMap::new();

        let mut add_term = |term: Expr, constant: &mut Rational| -> bool {
            if term.is_undefined() {
                return false;
            }
            match term {
                Expr::Const(c) => *constant += c,
                other => {
                    let (coeff, rest) = split_coefficient(other);
                    *collected.entry(rest).or_insert_with(Rational::zero) += coeff;
                }
            }
            true
        };

        for term in terms {
            let ok = match term {
                Expr::Sum(inner) => inner.into_iter().all(|t| add_term(t, &mut constant)),
                other => add_term(other, &mut constant),
            };
            if !ok {
                return Expr::undefined();
            }
        }

        let mut out = Vec::with_capacity(collected.len() + 1);
        if !constant.is_zero() {
            out.push(Expr::Const(constant));
        }
        for (rest, coeff) in collected {
            if coeff.is_zero() {
                continue;
            }
            out.push(attach_coefficient(coeff, rest));
        }
        match out.len() {
            0 => Expr::zero(),
            1 => out.pop().unwrap(),
            _ => Expr::Sum(out),
        }
    }

    /// Product of normalized factors.
    pub fn product<I: IntoIterator<Item = Expr>>(factors: I) -> Expr {
        let mut coeff = Rational::one();
        let mut powers: BTreeMap<Expr, i64> = BTreeMap::new();

        let mut add_factor = |factor: Expr, coeff: &mut Rational| -> bool {
            if factor.is_undefined() {
                return false;
            }
            match factor {
                Expr::Const(c) => *coeff *= c,
                Expr::Pow(base, k) => {
                    let base = match *base {
                        Expr::Sum(terms) => {
                            let (content, monic) = primitive_sum(terms);
                            *coeff *= rational_pow(&content, k);
                            monic
                        }
                        other => other,
                    };
                    let slot = powers.entry(base).or_insert(0);
                    *slot = slot.checked_add(k).expect("integer exponent overflow");
                }
                Expr::Sum(terms) => {
                    let (content, monic) = primitive_sum(terms);
                    *coeff *= content;
                    *powers.entry(monic).or_insert(0) += 1;
                }
                other => *powers.entry(other).or_insert(0) += 1,
            }
            true
        };

        for factor in factors {
            let ok = match factor {
                Expr::Product(inner) => inner.into_iter().all(|f| add_factor(f, &mut coeff)),
                other => add_factor(other, &mut coeff),
            };
            if !ok {
                return Expr::undefined();
            }
        }

        if coeff.is_zero() {
            return Expr::zero();
        }

        let mut out: Vec<Expr> = Vec::with_capacity(powers.len() + 1);
        let mut extra_coeff = Rational::one();
        for (base, k) in powers {
            match base.pow(k) {
                Expr::Const(c) => extra_coeff *= c,
                Expr::Product(inner) => {
                    for f in inner {
                        match f {
                            Expr::Const(c) => extra_coeff *= c,
                            other => out.push(other),
                        }
                    }
                }
                other => out.push(other),
            }
        }
        coeff *= extra_coeff;
        if coeff.is_zero() {
            return Expr::zero();
        }
        out.sort_by(|a, b| factor_key(a).cmp(&factor_key(b)));

        match out.len() {
            0 => Expr::Const(coeff),
            1 if coeff.is_one() => out.pop().unwrap(),
            1 if matches!(out[0], Expr::Sum(_)) => {
                let Some(Expr::Sum(terms)) = out.pop() else {
                    unreachable!()
                };
                Expr::sum(terms.into_iter().map(|t| t.scale(&coeff)))
            }
            _ => {
                if !coeff.is_one() {
                    out.insert(0, Expr::Const(coeff));
                }
                Expr::Product(out)
            }
        }
    }

    pub fn neg(&self) -> Expr {
        self.scale(&-Rational::one())
    }
}

/// Splits a normalized non-constant term into its rational coefficient and
/// the remaining expression.
fn split_coefficient(term: Expr) -> (Rational, Expr) {
    match term {
        Expr::Product(mut factors) if matches!(factors.first(), Some(Expr::Const(_))) => {
            let Expr::Const(c) = factors.remove(0) else {
                unreachable!()
            };
            let rest = if factors.len() == 1 {
                factors.pop().unwrap()
            } else {
                Expr::Product(factors)
            };
            (c, rest)
        }
        other => (Rational::one(), other),
    }
}

/// Factors are ordered by base first, so `x1^2` precedes `x2`.
fn factor_key(factor: &Expr) -> (&Expr, i64) {
    match factor {
        Expr::Pow(base, k) => (base, *k),
        other => (other, 1),
    }
}

/// Splits a normalized sum into the coefficient of its first term and the
/// sum divided by it, whose first term then has coefficient one.
fn primitive_sum(terms: Vec<Expr>) -> (Rational, Expr) {
    let content = match terms.first() {
        Some(Expr::Const(c)) => c.clone(),
        Some(Expr::Product(factors)) => match factors.first() {
            Some(Expr::Const(c)) => c.clone(),
            _ => Rational::one(),
        },
        _ => Rational::one(),
    };
    if content.is_one() {
        return (content, Expr::Sum(terms));
    }
    let inverse = content.recip();
    let monic = terms.into_iter().map(|t| t.scale(&inverse)).collect();
    (content, Expr::Sum(monic))
}

fn attach_coefficient(coeff: Rational, rest: Expr) -> Expr {
    if coeff.is_one() {
        return rest;
    }
    match rest {
        Expr::Product(mut factors) => {
            factors.insert(0, Expr::Const(coeff));
            Expr::Product(factors)
        }
        other => Expr::Product(vec![Expr::Const(coeff), other]),
    }
}

fn rational_pow(base: &Rational, exponent: i64) -> Rational {
    let magnitude = exponent.unsigned_abs();
    let e = u32::try_from(magnitude).expect("exponent too large for exact power");
    let numer = num::pow::pow(base.numer().clone(), e as usize);
    let denom = num::pow::pow(base.denom().clone(), e as usize);
    if exponent >= 0 {
        Rational::new(numer, denom)
    } else {
        Rational::new(denom, numer)
    }
}

/// Lossy conversion used by evaluation.
pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// `n!` as an exact rational.
pub fn factorial(n: u64) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rational::from_integer(acc)
}

impl std::ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::sum([self, rhs])
    }
}

impl std::ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::sum([self, rhs.neg()])
    }
}

impl std::ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::product([self, rhs])
    }
}

impl std::ops::Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        Expr::product([self, rhs.pow(-1)])
    }
}

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(&self)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::print_expr(self))
    }
}
