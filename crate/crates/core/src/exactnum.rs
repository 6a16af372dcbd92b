//! Exact rational scalars and dense exact linear algebra.
//!
//! Everything downstream computes over [`Rational`]; no floating point enters
//! the kernel. The claims this crate verifies are exact equalities (column
//! sums exactly zero, inverses exact), so approximate arithmetic would be
//! useless here.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Exact arbitrary-precision rational scalar.
///
/// `BigRational` maintains the canonical form this crate relies on: the
/// denominator is always positive and `gcd(|numerator|, denominator) = 1`
/// after every operation. [`is_canonical`] re-checks this explicitly.
pub type Rational = BigRational;

/// Integer as a rational.
pub fn rat(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// The fraction `p/q`, reduced to canonical form.
///
/// # Panics
///
/// Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Checks the canonical-form invariants of a rational: positive denominator
/// and fully reduced fraction.
pub fn is_canonical(value: &Rational) -> bool {
    value.denom().is_positive() && value.numer().gcd(value.denom()).is_one()
}

/// Parses an exact rational from an integer (`-3`), fraction (`2/3`) or
/// finite decimal (`0.25`) literal.
///
/// Decimals are read positionally, so `"0.25"` becomes exactly `1/4`. There
/// is no binary floating point anywhere in this path. Exponent notation is
/// rejected.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let text = text.trim();
    let malformed = || Error::MalformedNumber {
        text: text.to_string(),
    };
    if text.is_empty() {
        return Err(malformed());
    }
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| malformed())?;
        let den: BigInt = den.trim().parse().map_err(|_| malformed())?;
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        let (sign, whole_digits) = match whole.as_bytes().first() {
            Some(b'-') => (-1, &whole[1..]),
            Some(b'+') => (1, &whole[1..]),
            _ => (1, whole),
        };
        if whole_digits.is_empty() && frac.is_empty() {
            return Err(malformed());
        }
        if !whole_digits.bytes().all(|b| b.is_ascii_digit())
            || !frac.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(malformed());
        }
        let mut digits = String::with_capacity(whole_digits.len() + frac.len());
        digits.push_str(whole_digits);
        digits.push_str(frac);
        if digits.is_empty() {
            return Err(malformed());
        }
        let numer: BigInt = digits.parse().map_err(|_| malformed())?;
        let denom = BigInt::from(10u32).pow(frac.len() as u32);
        return Ok(Rational::new(BigInt::from(sign) * numer, denom));
    }
    let value: BigInt = text.parse().map_err(|_| malformed())?;
    Ok(Rational::from_integer(value))
}

/// Dense matrix of exact rationals, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RMatrix {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<Rational>,
}

impl std::fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "RMatrix {}x{} [", self.n_rows, self.n_cols)?;
        for i in 0..self.n_rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RMatrix {
    /// Builds a matrix from a row-major entry list. The list length must be
    /// exactly `n_rows * n_cols`.
    pub fn new(n_rows: usize, n_cols: usize, entries: Vec<Rational>) -> Result<Self, Error> {
        if entries.len() != n_rows * n_cols {
            return Err(Error::DimensionMismatch {
                expected: n_rows * n_cols,
                actual: entries.len(),
            });
        }
        Ok(Self {
            n_rows,
            n_cols,
            entries,
        })
    }

    /// Builds a matrix from rows, which must all have equal length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, Error> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            if row.len() != n_cols {
                return Err(Error::DimensionMismatch {
                    expected: n_cols,
                    actual: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self {
            n_rows,
            n_cols,
            entries,
        })
    }

    /// Builds a matrix from integer rows; convenient for fixtures.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, Error> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().copied().map(rat).collect())
                .collect(),
        )
    }

    /// Matrix with every entry produced by `f(i, j)` over 0-based indices.
    pub fn from_fn(n_rows: usize, n_cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for i in 0..n_rows {
            for j in 0..n_cols {
                entries.push(f(i, j));
            }
        }
        Self {
            n_rows,
            n_cols,
            entries,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { rat(1) } else { rat(0) })
    }

    pub fn zero(n_rows: usize, n_cols: usize) -> Self {
        Self::from_fn(n_rows, n_cols, |_, _| rat(0))
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    /// Entry at 0-based position `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n_cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.n_cols + j] = value;
    }

    /// Row `i` as a slice (0-based).
    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.n_cols..(i + 1) * self.n_cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks_exact(self.n_cols)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n_cols, self.n_rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.n_rows).all(|i| {
                (0..self.n_cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// Exact matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        if self.n_cols != other.n_rows {
            return Err(Error::DimensionMismatch {
                expected: self.n_cols,
                actual: other.n_rows,
            });
        }
        Ok(Self::from_fn(self.n_rows, other.n_cols, |i, j| {
            let mut acc = rat(0);
            for k in 0..self.n_cols {
                let a = self.get(i, k);
                if !a.is_zero() {
                    acc += a * other.get(k, j);
                }
            }
            acc
        }))
    }

    /// Exact row-vector product `v * self`.
    pub fn mul_left(&self, v: &[Rational]) -> Result<Vec<Rational>, Error> {
        if v.len() != self.n_rows {
            return Err(Error::DimensionMismatch {
                expected: self.n_rows,
                actual: v.len(),
            });
        }
        let mut out = vec![rat(0); self.n_cols];
        for (vi, row) in v.iter().zip(self.rows()) {
            if vi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(row) {
                if !a.is_zero() {
                    *o += vi * a;
                }
            }
        }
        Ok(out)
    }

    pub fn row_sums(&self) -> Vec<Rational> {
        self.rows().map(|row| row.iter().sum()).collect()
    }

    pub fn column_sums(&self) -> Vec<Rational> {
        let mut sums = vec![rat(0); self.n_cols];
        for row in self.rows() {
            for (s, e) in sums.iter_mut().zip(row) {
                *s += e;
            }
        }
        sums
    }

    /// Exact inverse by Gauss-Jordan elimination on `[A | I]`.
    ///
    /// The pivot in each column is the first row (lowest index) with a
    /// nonzero entry; exact arithmetic makes pivot magnitude irrelevant and
    /// this rule keeps elimination traces reproducible.
    pub fn invert(&self) -> Result<Self, Error> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.n_rows,
                actual: self.n_cols,
            });
        }
        let n = self.n_rows;
        let mut work: Vec<Vec<Rational>> = self
            .rows()
            .enumerate()
            .map(|(i, row)| {
                let mut w = row.to_vec();
                w.extend((0..n).map(|j| if i == j { rat(1) } else { rat(0) }));
                w
            })
            .collect();
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !work[r][col].is_zero())
                .ok_or(Error::SingularMatrix { column: col })?;
            work.swap(col, pivot_row);
            let pivot = work[col][col].clone();
            if !pivot.is_one() {
                for e in work[col].iter_mut() {
                    if !e.is_zero() {
                        *e /= &pivot;
                    }
                }
            }
            for r in 0..n {
                if r != col && !work[r][col].is_zero() {
                    let factor = std::mem::replace(&mut work[r][col], rat(0));
                    let (pivot_part, rest) = if r < col {
                        let (a, b) = work.split_at_mut(col);
                        (&b[0], &mut a[r])
                    } else {
                        let (a, b) = work.split_at_mut(r);
                        (&a[col], &mut b[0])
                    };
                    for (e, p) in rest.iter_mut().zip(pivot_part.iter()).skip(col + 1) {
                        if !p.is_zero() {
                            *e -= &factor * p;
                        }
                    }
                }
            }
        }
        Self::from_rows(work.into_iter().map(|row| row[n..].to_vec()).collect())
    }

    /// Solves `x * self = v` exactly for the row vector `x`.
    pub fn solve_left(&self, v: &[Rational]) -> Result<Vec<Rational>, Error> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.n_rows,
                actual: self.n_cols,
            });
        }
        if v.len() != self.n_cols {
            return Err(Error::DimensionMismatch {
                expected: self.n_cols,
                actual: v.len(),
            });
        }
        // x * A = v  <=>  A^T x^T = v^T; eliminate on the transpose with a
        // single augmented column.
        let n = self.n_rows;
        let mut work: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational> = (0..n).map(|j| self.get(j, i).clone()).collect();
                row.push(v[i].clone());
                row
            })
            .collect();
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !work[r][col].is_zero())
                .ok_or(Error::SingularMatrix { column: col })?;
            work.swap(col, pivot_row);
            let pivot = work[col][col].clone();
            if !pivot.is_one() {
                for e in work[col].iter_mut() {
                    if !e.is_zero() {
                        *e /= &pivot;
                    }
                }
            }
            for r in 0..n {
                if r != col && !work[r][col].is_zero() {
                    let factor = std::mem::replace(&mut work[r][col], rat(0));
                    let (pivot_part, rest) = if r < col {
                        let (a, b) = work.split_at_mut(col);
                        (&b[0], &mut a[r])
                    } else {
                        let (a, b) = work.split_at_mut(r);
                        (&a[col], &mut b[0])
                    };
                    for (e, p) in rest.iter_mut().zip(pivot_part.iter()).skip(col + 1) {
                        if !p.is_zero() {
                            *e -= &factor * p;
                        }
                    }
                }
            }
        }
        Ok(work.into_iter().map(|mut row| row.pop().unwrap()).collect())
    }
}
