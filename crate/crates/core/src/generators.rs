//! The standard generator families spanning the extreme rays of each shape
//! cone.
//!
//! All families use 1-based indices to match the usual sequence notation.
//! Every generator is normalized to have maximal component exactly 1.

use crate::error::Error;
use crate::exactnum::{rat, ratio, RMatrix, Rational};
use crate::shapes::{PredicateKind, ShapeVector};

/// The nine shape cones handled by this crate.
///
/// All of them are simplicial (n linearly independent generators) except
/// [`ConeKind::PositiveConvex`], which has `2n - 2` extreme rays for n >= 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConeKind {
    Positive,
    PositiveIncreasing,
    PositiveDecreasing,
    PositiveConcave,
    PositiveConvex,
    IncreasingConvex,
    DecreasingConvex,
    IncreasingConcave,
    DecreasingConcave,
}

impl ConeKind {
    pub const ALL: [ConeKind; 9] = [
        ConeKind::Positive,
        ConeKind::PositiveIncreasing,
        ConeKind::PositiveDecreasing,
        ConeKind::PositiveConcave,
        ConeKind::PositiveConvex,
        ConeKind::IncreasingConvex,
        ConeKind::DecreasingConvex,
        ConeKind::IncreasingConcave,
        ConeKind::DecreasingConcave,
    ];

    /// Simplicial cones have exactly n generators forming a basis, so every
    /// member has unique nonnegative coordinates.
    pub fn is_simplicial(self) -> bool {
        !matches!(self, ConeKind::PositiveConvex)
    }

    pub fn name(self) -> &'static str {
        match self {
            ConeKind::Positive => "positive",
            ConeKind::PositiveIncreasing => "positive_increasing",
            ConeKind::PositiveDecreasing => "positive_decreasing",
            ConeKind::PositiveConcave => "positive_concave",
            ConeKind::PositiveConvex => "positive_convex",
            ConeKind::IncreasingConvex => "increasing_convex",
            ConeKind::DecreasingConvex => "decreasing_convex",
            ConeKind::IncreasingConcave => "increasing_concave",
            ConeKind::DecreasingConcave => "decreasing_concave",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == text)
    }

    /// The defining inequalities of the cone, in the order membership
    /// witnesses cite them.
    pub fn defining_predicates(self) -> &'static [PredicateKind] {
        use PredicateKind::*;
        match self {
            ConeKind::Positive => &[Positive],
            ConeKind::PositiveIncreasing => &[Positive, Increasing],
            ConeKind::PositiveDecreasing => &[Positive, Decreasing],
            ConeKind::PositiveConcave => &[Positive, Concave],
            ConeKind::PositiveConvex => &[Positive, Convex],
            ConeKind::IncreasingConvex => &[Positive, Increasing, Convex],
            ConeKind::DecreasingConvex => &[Positive, Decreasing, Convex],
            ConeKind::IncreasingConcave => &[Positive, Increasing, Concave],
            ConeKind::DecreasingConcave => &[Positive, Decreasing, Concave],
        }
    }

    /// Number of generators at dimension `n >= 1`.
    pub fn generator_count(self, n: usize) -> usize {
        if n == 1 {
            1
        } else if self.is_simplicial() {
            n
        } else {
            2 * n - 2
        }
    }
}

impl std::fmt::Display for ConeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Ordered list of generator vectors for one cone, with symbolic labels such
/// as `c(3)`, `a(2)`, `b(1)` or `1`.
///
/// The ordering is fixed (by family index, the all-ones vector first in the
/// convex families) so coefficient vectors are comparable bit for bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    pub kind: ConeKind,
    pub n: usize,
    pub rows: Vec<ShapeVector>,
    pub labels: Vec<String>,
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// The generators stacked as matrix rows.
    pub fn matrix(&self) -> RMatrix {
        RMatrix::from_rows(self.rows.iter().map(|r| r.entries().to_vec()).collect())
            .expect("generator rows share the cone dimension")
    }

    /// The conic combination with the given coefficients, one per generator.
    pub fn combine(&self, coefficients: &[Rational]) -> Result<ShapeVector, Error> {
        if coefficients.len() != self.rows.len() {
            return Err(Error::DimensionMismatch {
                expected: self.rows.len(),
                actual: coefficients.len(),
            });
        }
        let mut acc = vec![rat(0); self.n];
        for (coef, row) in coefficients.iter().zip(&self.rows) {
            if coef == &rat(0) {
                continue;
            }
            for (a, e) in acc.iter_mut().zip(row.entries()) {
                *a += coef * e;
            }
        }
        ShapeVector::new(acc)
    }

    /// The generator set with one row removed; used for extreme-ray checks.
    pub fn without(&self, index: usize) -> GeneratorSet {
        let mut rows = self.rows.clone();
        let mut labels = self.labels.clone();
        rows.remove(index);
        labels.remove(index);
        GeneratorSet {
            kind: self.kind,
            n: self.n,
            rows,
            labels,
        }
    }
}

fn check_index(n: usize, i: usize, max: usize) -> Result<(), Error> {
    if n == 0 {
        return Err(Error::EmptyVector);
    }
    if i == 0 || i > max {
        return Err(Error::IndexOutOfRange { index: i, max });
    }
    Ok(())
}

/// The all-ones vector.
pub fn ones(n: usize) -> ShapeVector {
    ShapeVector::new(vec![rat(1); n]).expect("n >= 1")
}

/// The i-th unit coordinate vector (1-based).
pub fn unit_vector(n: usize, i: usize) -> Result<ShapeVector, Error> {
    check_index(n, i, n)?;
    ShapeVector::new((1..=n).map(|j| rat((j == i) as i64)).collect())
}

/// The i-th minimal standard concave vector `c(i)` (1-based, 1 <= i <= n):
/// an arithmetic progression rising from 0 to 1 at position i, then an
/// arithmetic progression falling back to 0. It is the smallest positive
/// concave vector whose i-th component equals 1.
pub fn standard_concave(n: usize, i: usize) -> Result<ShapeVector, Error> {
    check_index(n, i, n)?;
    let entries = (1..=n)
        .map(|j| {
            if j == i {
                rat(1)
            } else if j < i {
                ratio(j as i64 - 1, i as i64 - 1)
            } else {
                ratio(n as i64 - j as i64, n as i64 - i as i64)
            }
        })
        .collect();
    ShapeVector::new(entries)
}

/// The i-th standard increasing convex vector `a(i)` (1-based,
/// 1 <= i <= n-1): exactly i leading zeros, then a linear ramp to 1. It is
/// the componentwise-largest positive increasing convex vector with maximal
/// component 1 and exactly i zero entries.
pub fn standard_increasing_convex(n: usize, i: usize) -> Result<ShapeVector, Error> {
    if n < 2 {
        return Err(Error::IndexOutOfRange { index: i, max: 0 });
    }
    check_index(n, i, n - 1)?;
    let entries = (1..=n)
        .map(|j| {
            if j <= i {
                rat(0)
            } else {
                ratio(j as i64 - i as i64, n as i64 - i as i64)
            }
        })
        .collect();
    ShapeVector::new(entries)
}

/// The i-th standard decreasing convex vector `b(i)`, the reverse of `a(i)`.
pub fn standard_decreasing_convex(n: usize, i: usize) -> Result<ShapeVector, Error> {
    Ok(standard_increasing_convex(n, i)?.reversed())
}

/// The 0/1 step vector with ones from position i on (1-based).
pub fn step_vector(n: usize, i: usize) -> Result<ShapeVector, Error> {
    check_index(n, i, n)?;
    ShapeVector::new((1..=n).map(|j| rat((j >= i) as i64)).collect())
}

/// The reversed step vector with ones through position i (1-based).
pub fn step_vector_decreasing(n: usize, i: usize) -> Result<ShapeVector, Error> {
    check_index(n, i, n)?;
    ShapeVector::new((1..=n).map(|j| rat((j <= i) as i64)).collect())
}

/// The i-th standard increasing concave vector `h(i)` (1-based,
/// 1 <= i <= n): `h(1)` is the all-ones vector; for i >= 2 the entries are
/// `min(j-1, i-1)/(i-1)`, a linear rise from 0 reaching 1 at position i and
/// a plateau of ones after it.
///
/// These n vectors form a basis and generate the cone of positive increasing
/// concave vectors; the oracle module certifies each one as an extreme ray.
pub fn standard_increasing_concave(n: usize, i: usize) -> Result<ShapeVector, Error> {
    check_index(n, i, n)?;
    if i == 1 {
        return Ok(ones(n));
    }
    let entries = (1..=n)
        .map(|j| ratio((j - 1).min(i - 1) as i64, i as i64 - 1))
        .collect();
    ShapeVector::new(entries)
}

/// The i-th standard decreasing concave vector `r(i)` (1-based,
/// 1 <= i <= n): a plateau of ones through position i, then a linear fall
/// to 0 at position n. Equals the reverse of `h(n+1-i)`, mirroring the
/// reversal symmetry `reverse(c(i)) = c(n-i+1)` of the concave family.
pub fn standard_decreasing_concave(n: usize, i: usize) -> Result<ShapeVector, Error> {
    check_index(n, i, n)?;
    Ok(standard_increasing_concave(n, n + 1 - i)?.reversed())
}

/// The full ordered generator list for a cone at dimension `n >= 1`.
///
/// At n = 1 every cone degenerates to the nonnegative half-line with the
/// single generator `(1)`.
pub fn generators(kind: ConeKind, n: usize) -> Result<GeneratorSet, Error> {
    if n == 0 {
        return Err(Error::EmptyVector);
    }
    if n == 1 {
        let label = match kind {
            ConeKind::Positive => "e(1)",
            ConeKind::PositiveIncreasing => "z(1)",
            ConeKind::PositiveDecreasing => "w(1)",
            ConeKind::PositiveConcave => "c(1)",
            ConeKind::IncreasingConcave => "h(1)",
            ConeKind::DecreasingConcave => "r(1)",
            ConeKind::PositiveConvex | ConeKind::IncreasingConvex | ConeKind::DecreasingConvex => "1",
        };
        return Ok(GeneratorSet {
            kind,
            n,
            rows: vec![ones(1)],
            labels: vec![label.to_string()],
        });
    }
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    let mut push = |row: ShapeVector, label: String| {
        rows.push(row);
        labels.push(label);
    };
    match kind {
        ConeKind::Positive => {
            for i in 1..=n {
                push(unit_vector(n, i)?, format!("e({i})"));
            }
        }
        ConeKind::PositiveIncreasing => {
            for i in 1..=n {
                push(step_vector(n, i)?, format!("z({i})"));
            }
        }
        ConeKind::PositiveDecreasing => {
            for i in 1..=n {
                push(step_vector_decreasing(n, i)?, format!("w({i})"));
            }
        }
        ConeKind::PositiveConcave => {
            for i in 1..=n {
                push(standard_concave(n, i)?, format!("c({i})"));
            }
        }
        ConeKind::PositiveConvex => {
            for i in 1..n {
                push(standard_increasing_convex(n, i)?, format!("a({i})"));
            }
            for i in 1..n {
                push(standard_decreasing_convex(n, i)?, format!("b({i})"));
            }
        }
        ConeKind::IncreasingConvex => {
            push(ones(n), "1".to_string());
            for i in 1..n {
                push(standard_increasing_convex(n, i)?, format!("a({i})"));
            }
        }
        ConeKind::DecreasingConvex => {
            push(ones(n), "1".to_string());
            for i in 1..n {
                push(standard_decreasing_convex(n, i)?, format!("b({i})"));
            }
        }
        ConeKind::IncreasingConcave => {
            for i in 1..=n {
                push(standard_increasing_concave(n, i)?, format!("h({i})"));
            }
        }
        ConeKind::DecreasingConcave => {
            for i in 1..=n {
                push(standard_decreasing_concave(n, i)?, format!("r({i})"));
            }
        }
    }
    Ok(GeneratorSet {
        kind,
        n,
        rows,
        labels,
    })
}
