//! Seeded numeric sampling as a decision procedure for expression equality.
//!
//! Zero-equivalence over this function class is not decidable in general, so
//! two expressions are declared equal when they agree at a fixed set of
//! pseudo-random points. Points come from a ChaCha stream keyed by the plan's
//! seed, which makes every verdict reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::Expr;

/// Closed sampling interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    fn is_valid(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite() && self.lo <= self.hi
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        if self.lo == self.hi {
            self.lo
        } else {
            rng.gen_range(self.lo..=self.hi)
        }
    }
}

impl Default for Interval {
    fn default() -> Self {
        Interval::new(-1.0, 1.0)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SampleError {
    #[error("invalid sample plan: {0}")]
    InvalidPlan(&'static str),
    #[error("sampling exhausted: found {found} of {wanted} valid points after {attempts} attempts")]
    SamplingExhausted {
        found: usize,
        wanted: usize,
        attempts: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplePlan {
    pub seed: u64,
    pub points_per_check: usize,
    /// Interval for `x_i` is `domain[i-1]`; the last entry repeats for
    /// higher indices.
    pub domain: Vec<Interval>,
    /// Interval for the time symbol when it appears.
    pub time_domain: Interval,
    pub tolerance: f64,
}

impl Default for SamplePlan {
    fn default() -> Self {
        SamplePlan {
            seed: 42,
            points_per_check: 32,
            domain: vec![Interval::default()],
            time_domain: Interval::default(),
            tolerance: 1e-9,
        }
    }
}

/// Attempts allowed per requested point before giving up.
const ATTEMPTS_PER_POINT: usize = 16;

impl SamplePlan {
    pub fn new(seed: u64, points_per_check: usize, domain: Vec<Interval>, tolerance: f64) -> Result<Self, SampleError> {
        let plan = SamplePlan {
            seed,
            points_per_check,
            domain,
            time_domain: Interval::default(),
            tolerance,
        };
        plan.validate()?;
        Ok(plan)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn validate(&self) -> Result<(), SampleError> {
        if self.points_per_check == 0 {
            return Err(SampleError::InvalidPlan("points_per_check must be at least 1"));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(SampleError::InvalidPlan("tolerance must be positive and finite"));
        }
        if self.domain.is_empty() {
            return Err(SampleError::InvalidPlan("domain needs at least one interval"));
        }
        if !self.domain.iter().all(Interval::is_valid) || !self.time_domain.is_valid() {
            return Err(SampleError::InvalidPlan("interval must be finite and nonempty"));
        }
        Ok(())
    }

    fn interval(&self, var: usize) -> Interval {
        self.domain
            .get(var)
            .or_else(|| self.domain.last())
            .copied()
            .unwrap_or_default()
    }
}

/// Outcome of a sampled comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleStats {
    pub equal: bool,
    pub points: usize,
    /// Largest `|a - b|` seen.
    pub max_abs_deviation: f64,
    /// Largest `|a - b| / (1 + max(|a|, |b|))` seen.
    pub max_scaled_deviation: f64,
}

/// Compares `a` and `b` at `plan.points_per_check` valid points.
///
/// A point is valid when both sides evaluate to finite values; invalid
/// points are redrawn a bounded number of times.
pub fn compare_sampled(a: &Expr, b: &Expr, plan: &SamplePlan) -> Result<SampleStats, SampleError> {
    plan.validate()?;
    if a == b && !a.is_undefined() {
        return Ok(SampleStats {
            equal: true,
            points: 0,
            max_abs_deviation: 0.0,
            max_scaled_deviation: 0.0,
        });
    }

    let dims = a.max_var().max(b.max_var());
    let with_time = a.contains_time() || b.contains_time();
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let mut point = vec![0.0; dims];

    let wanted = plan.points_per_check;
    let max_attempts = wanted * ATTEMPTS_PER_POINT;
    let mut found = 0;
    let mut attempts = 0;
    let mut max_abs = 0.0_f64;
    let mut max_scaled = 0.0_f64;
    let mut equal = true;

    while found < wanted {
        if attempts == max_attempts {
            return Err(SampleError::SamplingExhausted {
                found,
                wanted,
                attempts,
            });
        }
        attempts += 1;
        for (i, slot) in point.iter_mut().enumerate() {
            *slot = plan.interval(i).draw(&mut rng);
        }
        let time = with_time.then(|| plan.time_domain.draw(&mut rng));

        let (Ok(va), Ok(vb)) = (a.evaluate_at(&point, time), b.evaluate_at(&point, time)) else {
            continue;
        };
        if !va.is_finite() || !vb.is_finite() {
            continue;
        }
        found += 1;
        let diff = (va - vb).abs();
        let scaled = diff / (1.0 + va.abs().max(vb.abs()));
        max_abs = max_abs.max(diff);
        max_scaled = max_scaled.max(scaled);
        if diff > plan.tolerance * (1.0 + va.abs().max(vb.abs())) {
            equal = false;
        }
    }

    Ok(SampleStats {
        equal,
        points: found,
        max_abs_deviation: max_abs,
        max_scaled_deviation: max_scaled,
    })
}

pub fn equal_sampled(a: &Expr, b: &Expr, plan: &SamplePlan) -> Result<bool, SampleError> {
    compare_sampled(a, b, plan).map(|s| s.equal)
}

/// Value-level zero test; structural zeros short-circuit.
pub fn is_zero_sampled(e: &Expr, plan: &SamplePlan) -> Result<bool, SampleError> {
    if e.is_zero() {
        return Ok(true);
    }
    equal_sampled(e, &Expr::zero(), plan)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Expr {
        Expr::var(i)
    }

    #[test]
    fn double_angle_identity() {
        let lhs = Expr::int(2) * (Expr::int(2) * x(1)).cos();
        let rhs = Expr::int(2) * x(1).cos().pow(2) - Expr::int(2) * x(1).sin().pow(2);
        assert!(equal_sampled(&lhs, &rhs, &SamplePlan::default()).unwrap());
    }

    #[test]
    fn distinct_variables_differ() {
        assert!(!equal_sampled(&x(1), &x(2), &SamplePlan::default()).unwrap());
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = x(1).sin() + x(2);
        let b = x(1) + x(2).cos();
        let plan = SamplePlan::default();
        assert_eq!(compare_sampled(&a, &b, &plan), compare_sampled(&a, &b, &plan));
        let other = compare_sampled(&a, &b, &plan.clone().with_seed(7)).unwrap();
        assert_ne!(
            compare_sampled(&a, &b, &plan).unwrap().max_abs_deviation,
            other.max_abs_deviation
        );
    }

    #[test]
    fn resamples_around_singularities() {
        // ln(x1) is undefined on half the default domain.
        let a = x(1).ln() * Expr::int(2);
        let b = x(1).pow(2).ln();
        let stats = compare_sampled(&a, &b, &SamplePlan::default()).unwrap();
        assert!(stats.equal);
        assert_eq!(stats.points, 32);
    }

    #[test]
    fn pervasive_singularity_exhausts() {
        let a = (Expr::int(-1) - x(1).pow(2)).ln();
        let err = equal_sampled(&a, &Expr::zero(), &SamplePlan::default()).unwrap_err();
        assert!(matches!(err, SampleError::SamplingExhausted { found: 0, .. }));
        assert!(equal_sampled(&Expr::undefined(), &Expr::undefined(), &SamplePlan::default()).is_err());
    }

    #[test]
    fn plan_validation() {
        assert!(SamplePlan::new(1, 0, vec![Interval::default()], 1e-9).is_err());
        assert!(SamplePlan::new(1, 4, vec![Interval::default()], 0.0).is_err());
        assert!(SamplePlan::new(1, 4, vec![Interval::new(1.0, -1.0)], 1e-9).is_err());
        assert!(SamplePlan::new(1, 4, vec![], 1e-9).is_err());
        assert!(SamplePlan::new(1, 4, vec![Interval::new(0.5, 0.5)], 1e-9).is_ok());
    }

    #[test]
    fn relative_tolerance_scales_with_magnitude() {
        let big = Expr::int(1_000_000_000);
        let nudged = Expr::int(1_000_000_001);
        assert!(equal_sampled(&big, &nudged, &SamplePlan::default()).unwrap());
        assert!(!equal_sampled(&Expr::zero(), &Expr::rational(1, 1_000_000), &SamplePlan::default()).unwrap());
    }
}
