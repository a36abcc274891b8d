//! Seeded generators shared by the integration suites.

#![allow(dead_code)]

use hpm_taylor::expr::Func;
use hpm_taylor::series::{OperatorTerm, ProblemData, ProblemSpec, RationalMatrix, SpatialOperator};
use hpm_taylor::{Expr, Rational};
use proptest::test_runner::{Config, RngSeed};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Fixed-seed proptest configuration; failures are not persisted to disk.
/// `PROPTEST_CASES` in the environment overrides `cases`.
pub fn proptest_config(cases: u32) -> Config {
    let base = Config::default();
    let cases = if std::env::var_os("PROPTEST_CASES").is_some() {
        base.cases
    } else {
        cases
    };
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x7a91_0c3e),
        failure_persistence: None,
        ..base
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num: i64 = rng.gen_range(-5..=5);
    let den: i64 = rng.gen_range(1..=4);
    Rational::new(num.into(), den.into())
}

pub fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = small_rational(rng);
        if r != Rational::from_integer(0.into()) {
            return r;
        }
    }
}

/// `c · x^a · [sin|cos](x_k)` with total polynomial degree at most 3.
fn spatial_term(rng: &mut ChaCha8Rng, n: usize) -> Expr {
    let mut factors = vec![Expr::constant(nonzero_rational(rng))];
    let mut budget = 3;
    for k in 1..=n {
        let d = rng.gen_range(0..=budget);
        budget -= d;
        if d > 0 {
            factors.push(Expr::var(k).pow(d as i64));
        }
    }
    if rng.gen_bool(0.4) {
        let k = rng.gen_range(1..=n);
        let arg = Expr::var(k);
        factors.push(if rng.gen_bool(0.5) { arg.sin() } else { arg.cos() });
    }
    Expr::product(factors)
}

/// Polynomial or trigonometric data in `x1..xn`; zero with some probability.
pub fn spatial_expr(rng: &mut ChaCha8Rng, n: usize) -> Expr {
    if rng.gen_bool(0.15) {
        return Expr::zero();
    }
    let terms = rng.gen_range(1..=3);
    Expr::sum((0..terms).map(|_| spatial_term(rng, n)))
}

/// Like [`spatial_expr`] but never structurally zero.
pub fn nonzero_spatial_expr(rng: &mut ChaCha8Rng, n: usize) -> Expr {
    loop {
        let e = spatial_expr(rng, n);
        if !e.is_zero() {
            return e;
        }
    }
}

/// `Σ_k t^k g_k(x)` with `k ≤ 3`, occasionally times `sin t` or `cos t`.
pub fn forcing_expr(rng: &mut ChaCha8Rng, n: usize) -> Expr {
    if rng.gen_bool(0.2) {
        return Expr::zero();
    }
    let terms = rng.gen_range(1..=2);
    Expr::sum((0..terms).map(|_| {
        let k = rng.gen_range(0..=3);
        let mut factors = vec![Expr::time().pow(k), spatial_term(rng, n)];
        if rng.gen_bool(0.2) {
            factors.push(if rng.gen_bool(0.5) {
                Expr::time().sin()
            } else {
                Expr::time().cos()
            });
        }
        Expr::product(factors)
    }))
}

pub fn invertible_matrix(rng: &mut ChaCha8Rng, m: usize) -> RationalMatrix {
    loop {
        let rows = (0..m).map(|_| (0..m).map(|_| small_rational(rng)).collect()).collect();
        let candidate = RationalMatrix::new(rows).expect("square");
        if candidate.invert().is_ok() {
            return candidate;
        }
    }
}

/// Up to four terms of order at most two; coefficients are constants or,
/// now and then, a single coordinate.
pub fn random_operator(rng: &mut ChaCha8Rng, m: usize, n: usize) -> SpatialOperator {
    let count = rng.gen_range(1..=4);
    let terms = (0..count)
        .map(|_| {
            let mut multi_index = vec![0u32; n];
            let order = rng.gen_range(0..=2);
            for _ in 0..order {
                multi_index[rng.gen_range(0..n)] += 1;
            }
            let mut coeff = Expr::constant(nonzero_rational(rng));
            if rng.gen_bool(0.15) {
                coeff = coeff * Expr::var(rng.gen_range(1..=n));
            }
            OperatorTerm {
                row: rng.gen_range(0..m),
                col: rng.gen_range(0..m),
                coeff,
                multi_index,
            }
        })
        .collect();
    SpatialOperator::new(m, n, terms).expect("valid operator")
}

/// Random problem with `m, n ≤ 2`.
pub fn random_problem(rng: &mut ChaCha8Rng, order: usize) -> ProblemSpec {
    let m = rng.gen_range(1..=2);
    let n = rng.gen_range(1..=2);
    let rho = if rng.gen_bool(0.5) {
        RationalMatrix::identity(m)
    } else {
        invertible_matrix(rng, m)
    };
    let operator = random_operator(rng, m, n);
    let forcing = (0..m).map(|_| forcing_expr(rng, n)).collect();
    let u0 = (0..m).map(|_| spatial_expr(rng, n)).collect();
    let u1 = (0..m).map(|_| spatial_expr(rng, n)).collect();
    ProblemSpec::new(ProblemData {
        m,
        n,
        rho,
        operator,
        forcing,
        u0,
        u1,
        order,
    })
    .expect("valid problem")
}

/// Unrestricted random tree over every node kind, normalized.
pub fn random_expr(rng: &mut ChaCha8Rng, dims: usize, depth: u32) -> Expr {
    raw_expr(rng, dims, depth).normalize()
}

/// Random tree exactly as generated, not normalized.
pub fn raw_expr(rng: &mut ChaCha8Rng, dims: usize, depth: u32) -> Expr {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        return match rng.gen_range(0..4) {
            0 => Expr::Const(small_rational(rng)),
            1 => Expr::Time,
            _ => Expr::Var(rng.gen_range(1..=dims)),
        };
    }
    match rng.gen_range(0..4) {
        0 => {
            let exp = rng.gen_range(-3..=4);
            Expr::Pow(Box::new(raw_expr(rng, dims, depth - 1)), exp)
        }
        1 => {
            let f = Func::ALL[rng.gen_range(0..Func::ALL.len())];
            Expr::Func(f, Box::new(raw_expr(rng, dims, depth - 1)))
        }
        2 => {
            let k = rng.gen_range(2..=3);
            Expr::Product((0..k).map(|_| raw_expr(rng, dims, depth - 1)).collect())
        }
        _ => {
            let k = rng.gen_range(2..=3);
            Expr::Sum((0..k).map(|_| raw_expr(rng, dims, depth - 1)).collect())
        }
    }
}

/// Tree without `ln`, negative powers or `t`: smooth everywhere.
pub fn smooth_expr(rng: &mut ChaCha8Rng, dims: usize, depth: u32) -> Expr {
    if depth == 0 || rng.gen_bool(0.3) {
        return if rng.gen_bool(0.3) {
            Expr::Const(small_rational(rng))
        } else {
            Expr::Var(rng.gen_range(1..=dims))
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..4) {
        0 => {
            let base = smooth_expr(rng, dims, d);
            Expr::Pow(Box::new(base), rng.gen_range(0..=3))
        }
        1 => {
            let f = [Func::Sin, Func::Cos, Func::Exp, Func::Sinh, Func::Cosh, Func::Tanh][rng.gen_range(0..6)];
            Expr::Func(f, Box::new(smooth_expr(rng, dims, d)))
        }
        2 => Expr::Product(vec![smooth_expr(rng, dims, d), smooth_expr(rng, dims, d)]),
        _ => Expr::Sum(vec![smooth_expr(rng, dims, d), smooth_expr(rng, dims, d)]),
    }
}

/// Uniform point of `[-1, 1]^dims`.
pub fn point(rng: &mut ChaCha8Rng, dims: usize) -> Vec<f64> {
    (0..dims).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}
