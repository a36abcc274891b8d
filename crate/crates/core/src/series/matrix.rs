use std::fmt;

use num::{BigInt, Signed, Zero};

use super::SeriesError;
use crate::expr::{Expr, Rational};

/// Square matrix of exact rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    size: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self, SeriesError> {
        let size = rows.len();
        if size == 0 {
            return Err(SeriesError::Invalid("matrix must be at least 1x1".into()));
        }
        let mut entries = Vec::with_capacity(size * size);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != size {
                return Err(SeriesError::mismatch(format!("matrix row {r}"), size, row.len()));
            }
            entries.extend(row);
        }
        Ok(RationalMatrix { size, entries })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, SeriesError> {
        Self::new(
            rows.iter()
                .map(|row| row.iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect())
                .collect(),
        )
    }

    pub fn identity(size: usize) -> Self {
        Self::scalar(size, Rational::from_integer(1.into()))
    }

    pub fn scalar(size: usize, value: Rational) -> Self {
        let mut entries = vec![Rational::zero(); size * size];
        for i in 0..size {
            entries[i * size + i] = value.clone();
        }
        RationalMatrix { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.size + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.size)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.size)
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        RationalMatrix {
            size: self.size,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix, SeriesError> {
        if self.size != other.size {
            return Err(SeriesError::mismatch("matrix product", self.size, other.size));
        }
        let n = self.size;
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        Ok(RationalMatrix { size: n, entries })
    }

    /// Exact inverse by Gauss–Jordan elimination on `[A | I]`, pivoting on
    /// the entry of largest magnitude in each column.
    pub fn invert(&self) -> Result<RationalMatrix, SeriesError> {
        let n = self.size;
        let mut a = self.entries.clone();
        let mut inv = Self::identity(n).entries;
        let mut rank = 0;

        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a[r * n + col].is_zero())
                .max_by(|&r1, &r2| a[r1 * n + col].abs().cmp(&a[r2 * n + col].abs()).then(r2.cmp(&r1)));
            let Some(pivot) = pivot else {
                // Rank deficiency; count remaining independent columns for the report.
                return Err(SeriesError::SingularRho {
                    rank: rank_of(&self.entries, n),
                    size: n,
                });
            };
            rank += 1;
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    inv.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a[col * n + col].clone();
            for j in 0..n {
                a[col * n + j] /= &p;
                inv[col * n + j] /= &p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * n + col].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let da = &factor * &a[col * n + j];
                    a[r * n + j] -= da;
                    let di = &factor * &inv[col * n + j];
                    inv[r * n + j] -= di;
                }
            }
        }
        debug_assert_eq!(rank, n);
        Ok(RationalMatrix { size: n, entries: inv })
    }

    /// Matrix–vector product with expression entries.
    pub fn apply(&self, v: &[Expr]) -> Result<Vec<Expr>, SeriesError> {
        series_scale_matrix(self, v)
    }
}

/// Rank by fraction-exact row reduction.
fn rank_of(entries: &[Rational], n: usize) -> usize {
    let mut a = entries.to_vec();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..n).find(|&r| !a[r * n + col].is_zero()) else {
            continue;
        };
        for j in 0..n {
            a.swap(p * n + j, rank * n + j);
        }
        for r in rank + 1..n {
            let factor = &a[r * n + col] / &a[rank * n + col];
            for j in 0..n {
                let d = &factor * &a[rank * n + j];
                a[r * n + j] -= d;
            }
        }
        rank += 1;
    }
    rank
}

/// `minv · s` with rational scalars distributed into the expressions.
pub fn series_scale_matrix(minv: &RationalMatrix, s: &[Expr]) -> Result<Vec<Expr>, SeriesError> {
    if s.len() != minv.size {
        return Err(SeriesError::mismatch("matrix-vector product", minv.size, s.len()));
    }
    Ok(minv
        .rows()
        .map(|row| {
            Expr::sum(
                row.iter()
                    .zip(s)
                    .filter(|(c, e)| !c.is_zero() && !e.is_zero())
                    .map(|(c, e)| e.scale(c))
                    .collect::<Vec<_>>(),
            )
        })
        .collect())
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}
