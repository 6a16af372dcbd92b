//! Closed-form basis-change matrices between the positive orthant and the
//! shape cones, their exact inverses, and structural verification.
//!
//! `M` stacks the minimal standard concave vectors, `N` the all-ones vector
//! and the standard increasing convex vectors, `Z` the 0/1 step vectors.
//! Their inverses carry the structure the rest of the crate checks: banded
//! nonzero patterns and row/column sums that are constant apart from a
//! handful of special rows and columns.

use num_traits::Zero;

use crate::error::Error;
use crate::exactnum::{parse_rational, rat, ratio, RMatrix, Rational};
use crate::generators::{generators, ConeKind};

/// The matrix whose rows are the minimal standard concave vectors
/// `c(1)..c(n)`. Centrally symmetric with unit diagonal; below the diagonal
/// the entries are `(j-1)/(i-1)`.
pub fn matrix_m(n: usize) -> RMatrix {
    generators(ConeKind::PositiveConcave, n).expect("n >= 1").matrix()
}

/// The inverse of [`matrix_m`], built directly from its closed form: the
/// diagonal is `1, ..., 2(i-1)(n-i)/(n-1), ..., 1` and for interior columns
/// the entries just above and below the diagonal equal minus half the
/// diagonal entry. Everything else is zero.
pub fn matrix_m_inverse(n: usize) -> RMatrix {
    assert!(n >= 1, "n >= 1");
    if n == 1 {
        return RMatrix::identity(1);
    }
    let diag = |i: usize| -> Rational {
        if i == 1 || i == n {
            rat(1)
        } else {
            ratio(2 * (i as i64 - 1) * (n as i64 - i as i64), n as i64 - 1)
        }
    };
    RMatrix::from_fn(n, n, |r, c| {
        let (i, j) = (r + 1, c + 1);
        if i == j {
            diag(i)
        } else if j > 1 && j < n && (i + 1 == j || i == j + 1) {
            -diag(j) / rat(2)
        } else {
            rat(0)
        }
    })
}

/// The upper-triangular matrix whose first row is all ones and whose row i
/// (i >= 2) is the standard increasing convex vector `a(i-1)`; entries are
/// `(j-i+1)/(n-i+1)` on and above the diagonal.
pub fn matrix_n(n: usize) -> RMatrix {
    generators(ConeKind::IncreasingConvex, n).expect("n >= 1").matrix()
}

/// The exact inverse of [`matrix_n`], with its claimed structure verified:
/// upper triangular with diagonal `1/N(i,i)`, nonzero entries only for
/// `0 <= j-i <= 2`, and zero row and column sums apart from the first column
/// and the last row.
///
/// A [`Error::StructuralViolation`] here means the implementation itself is
/// broken, not that the input was bad.
pub fn matrix_n_inverse(n: usize) -> Result<RMatrix, Error> {
    let m = matrix_n(n);
    let inv = m.invert().expect("N is upper triangular with nonzero diagonal");
    let n = m.n_rows();
    for i in 0..n {
        let expected = rat(1) / m.get(i, i);
        if inv.get(i, i) != &expected {
            return Err(Error::StructuralViolation(format!(
                "N^-1 diagonal entry {} is not the reciprocal of N's",
                i + 1
            )));
        }
        for j in 0..n {
            if !(i <= j && j <= i + 2) && !inv.get(i, j).is_zero() {
                return Err(Error::StructuralViolation(format!(
                    "N^-1 has a nonzero entry at ({}, {}) outside the band 0 <= j-i <= 2",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    for (i, sum) in inv.row_sums().iter().enumerate() {
        if i + 1 < n && !sum.is_zero() {
            return Err(Error::StructuralViolation(format!(
                "N^-1 row {} sums to {} instead of 0",
                i + 1,
                sum
            )));
        }
    }
    for (j, sum) in inv.column_sums().iter().enumerate() {
        if j > 0 && !sum.is_zero() {
            return Err(Error::StructuralViolation(format!(
                "N^-1 column {} sums to {} instead of 0",
                j + 1,
                sum
            )));
        }
    }
    Ok(inv)
}

/// The upper-triangular 0/1 matrix whose rows are the step vectors.
pub fn matrix_z(n: usize) -> RMatrix {
    generators(ConeKind::PositiveIncreasing, n).expect("n >= 1").matrix()
}

/// The exact inverse of [`matrix_z`]: bidiagonal (`j - i` in {0, 1}) with
/// zero column sums apart from the first column. Structure verified as in
/// [`matrix_n_inverse`].
pub fn matrix_z_inverse(n: usize) -> Result<RMatrix, Error> {
    let z = matrix_z(n);
    let inv = z.invert().expect("Z is unitriangular");
    let n = z.n_rows();
    for i in 0..n {
        for j in 0..n {
            if !(j == i || j == i + 1) && !inv.get(i, j).is_zero() {
                return Err(Error::StructuralViolation(format!(
                    "Z^-1 has a nonzero entry at ({}, {}) off its two diagonals",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    for (j, sum) in inv.column_sums().iter().enumerate() {
        if j > 0 && !sum.is_zero() {
            return Err(Error::StructuralViolation(format!(
                "Z^-1 column {} sums to {} instead of 0",
                j + 1,
                sum
            )));
        }
    }
    Ok(inv)
}

/// Structural facts about a square matrix: central symmetry, band widths,
/// exact row and column sums, and which rows or columns deviate from the
/// most common sum value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub is_centrally_symmetric: bool,
    /// Largest `i - j` over nonzero entries (0 for upper-triangular).
    pub band_lower: usize,
    /// Largest `j - i` over nonzero entries.
    pub band_upper: usize,
    pub row_sums: Vec<Rational>,
    pub column_sums: Vec<Rational>,
    /// 1-based indices of rows whose sum differs from the modal row sum.
    pub exceptional_rows: Vec<usize>,
    /// 1-based indices of columns whose sum differs from the modal column sum.
    pub exceptional_columns: Vec<usize>,
}

impl StructureReport {
    /// Width of the nonzero band around the main diagonal.
    pub fn band_width(&self) -> usize {
        self.band_lower + self.band_upper + 1
    }
}

fn modal_value(values: &[Rational]) -> Rational {
    // Most frequent value; ties go to the first occurrence.
    let mut best: Option<(&Rational, usize)> = None;
    for v in values {
        let count = values.iter().filter(|w| *w == v).count();
        match best {
            Some((_, c)) if c >= count => {}
            _ => best = Some((v, count)),
        }
    }
    best.expect("non-empty").0.clone()
}

fn exceptions(values: &[Rational]) -> Vec<usize> {
    let modal = modal_value(values);
    values
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != modal)
        .map(|(i, _)| i + 1)
        .collect()
}

/// Computes the [`StructureReport`] of a square matrix.
pub fn structure_report(a: &RMatrix) -> Result<StructureReport, Error> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.n_rows(),
            actual: a.n_cols(),
        });
    }
    let n = a.n_rows();
    let mut symmetric = true;
    let mut band_lower = 0usize;
    let mut band_upper = 0usize;
    for i in 0..n {
        for j in 0..n {
            if a.get(i, j) != a.get(n - 1 - i, n - 1 - j) {
                symmetric = false;
            }
            if !a.get(i, j).is_zero() {
                if i > j {
                    band_lower = band_lower.max(i - j);
                } else {
                    band_upper = band_upper.max(j - i);
                }
            }
        }
    }
    let row_sums = a.row_sums();
    let column_sums = a.column_sums();
    let exceptional_rows = exceptions(&row_sums);
    let exceptional_columns = exceptions(&column_sums);
    Ok(StructureReport {
        is_centrally_symmetric: symmetric,
        band_lower,
        band_upper,
        row_sums,
        column_sums,
        exceptional_rows,
        exceptional_columns,
    })
}

/// Inverts a generator matrix and checks the almost-diagonal structure the
/// monotone concave families share with the M and N inverses: nonzero
/// entries on at most three diagonals (`|i - j| <= 1`) and row and column
/// sums constant except for at most one special row and one special column.
pub fn verify_almost_diagonal_inverse(g: &RMatrix) -> Result<StructureReport, Error> {
    let inv = g.invert()?;
    let report = structure_report(&inv)?;
    if report.band_lower > 1 || report.band_upper > 1 {
        return Err(Error::StructuralViolation(format!(
            "inverse has band widths {} below and {} above the diagonal",
            report.band_lower, report.band_upper
        )));
    }
    if report.exceptional_rows.len() > 1 {
        return Err(Error::StructuralViolation(format!(
            "inverse row sums deviate in {} rows",
            report.exceptional_rows.len()
        )));
    }
    if report.exceptional_columns.len() > 1 {
        return Err(Error::StructuralViolation(format!(
            "inverse column sums deviate in {} columns",
            report.exceptional_columns.len()
        )));
    }
    Ok(report)
}

/// Renders a rational in lowest terms, as `p/q` or a bare integer when the
/// denominator is 1.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Least common multiple of all entry denominators; 1 for an all-integer
/// matrix. Used by the common-denominator display mode.
pub fn common_denominator(a: &RMatrix) -> num_bigint::BigInt {
    use num_integer::Integer;
    let mut lcm = num_bigint::BigInt::from(1);
    for row in a.rows() {
        for e in row {
            lcm = lcm.lcm(e.denom());
        }
    }
    lcm
}

/// Serializes a square matrix as `{"n": int, "rows": [["p/q", ...], ...]}`.
/// The rendering is exact and round-trips bit for bit.
pub fn matrix_to_json(a: &RMatrix) -> String {
    let rows: Vec<Vec<String>> = a
        .rows()
        .map(|row| row.iter().map(format_rational).collect())
        .collect();
    serde_json::json!({ "n": a.n_cols(), "rows": rows }).to_string()
}

/// Parses the JSON layout produced by [`matrix_to_json`], including the
/// common-denominator variant with a top-level `"denominator"` field.
pub fn matrix_from_json(text: &str) -> Result<RMatrix, Error> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::MalformedData(e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::MalformedData("expected a JSON object".into()))?;
    let n = obj
        .get("n")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| Error::MalformedData("missing integer field \"n\"".into()))?
        as usize;
    let denominator = match obj.get("denominator") {
        None => rat(1),
        Some(v) => {
            let text = v
                .as_str()
                .map(str::to_owned)
                .or_else(|| v.as_u64().map(|u| u.to_string()))
                .ok_or_else(|| Error::MalformedData("bad \"denominator\" field".into()))?;
            let d = parse_rational(&text)?;
            if d.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            d
        }
    };
    let rows_json = obj
        .get("rows")
        .and_then(|v| v.as_array())
        .ok_or_else(|| Error::MalformedData("missing array field \"rows\"".into()))?;
    let mut rows = Vec::with_capacity(rows_json.len());
    for row in rows_json {
        let row = row
            .as_array()
            .ok_or_else(|| Error::MalformedData("rows must be arrays".into()))?;
        if row.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: row.len(),
            });
        }
        let mut parsed = Vec::with_capacity(row.len());
        for e in row {
            let text = e
                .as_str()
                .ok_or_else(|| Error::MalformedData("entries must be strings".into()))?;
            parsed.push(parse_rational(text)? / &denominator);
        }
        rows.push(parsed);
    }
    if rows.is_empty() {
        return Err(Error::MalformedData("matrix has no rows".into()));
    }
    RMatrix::from_rows(rows)
}

/// Serializes a matrix as CSV with exact `p/q` entries (bare integers when
/// the denominator is 1), one row per line.
pub fn matrix_to_csv(a: &RMatrix) -> String {
    let mut out = String::new();
    for row in a.rows() {
        let line: Vec<String> = row.iter().map(format_rational).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Parses the CSV layout produced by [`matrix_to_csv`]. A leading
/// `denominator,<d>` line (from the common-denominator display mode) is
/// honored.
pub fn matrix_from_csv(text: &str) -> Result<RMatrix, Error> {
    let mut denominator = rat(1);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if idx == 0 {
            if let Some(rest) = line.strip_prefix("denominator,") {
                let d = parse_rational(rest)?;
                if d.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                denominator = d;
                continue;
            }
        }
        let mut parsed = Vec::new();
        for field in line.split(',') {
            parsed.push(parse_rational(field)? / &denominator);
        }
        rows.push(parsed);
    }
    if rows.is_empty() {
        return Err(Error::MalformedData("matrix has no rows".into()));
    }
    RMatrix::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The reference 5x5 instances: M and its inverse as twelfths, N as
    /// twelfths, and the integer inverse of N.
    pub fn reference_m5() -> RMatrix {
        scaled_by_12(&[
            &[12, 9, 6, 3, 0],
            &[0, 12, 8, 4, 0],
            &[0, 6, 12, 6, 0],
            &[0, 4, 8, 12, 0],
            &[0, 3, 6, 9, 12],
        ])
    }

    pub fn reference_m5_inverse() -> RMatrix {
        scaled_by_12(&[
            &[12, -9, 0, 0, 0],
            &[0, 18, -12, 0, 0],
            &[0, -9, 24, -9, 0],
            &[0, 0, -12, 18, 0],
            &[0, 0, 0, -9, 12],
        ])
    }

    pub fn reference_n5() -> RMatrix {
        scaled_by_12(&[
            &[12, 12, 12, 12, 12],
            &[0, 3, 6, 9, 12],
            &[0, 0, 4, 8, 12],
            &[0, 0, 0, 6, 12],
            &[0, 0, 0, 0, 12],
        ])
    }

    pub fn reference_n5_inverse() -> RMatrix {
        RMatrix::from_i64_rows(&[
            &[1, -4, 3, 0, 0],
            &[0, 4, -6, 2, 0],
            &[0, 0, 3, -4, 1],
            &[0, 0, 0, 2, -2],
            &[0, 0, 0, 0, 1],
        ])
        .unwrap()
    }

    fn scaled_by_12(rows: &[&[i64]]) -> RMatrix {
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|row| row.iter().map(|&v| ratio(v, 12)).collect())
            .collect();
        RMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn golden_m5() {
        assert_eq!(matrix_m(5), reference_m5());
    }

    #[test]
    fn golden_m5_inverse() {
        assert_eq!(matrix_m_inverse(5), reference_m5_inverse());
    }

    #[test]
    fn golden_n5() {
        assert_eq!(matrix_n(5), reference_n5());
    }

    #[test]
    fn golden_n5_inverse() {
        assert_eq!(matrix_n_inverse(5).unwrap(), reference_n5_inverse());
    }

    #[test]
    fn m_small_cases() {
        assert!(matrix_m(1).is_identity());
        assert!(matrix_m(2).is_identity());
        assert!(matrix_m_inverse(2).is_identity());
    }

    #[test]
    fn m_entry_formula() {
        for n in 2..=12 {
            let m = matrix_m(n);
            for i in 1..=n {
                for j in 1..=n {
                    let expected = if i == j {
                        rat(1)
                    } else if i > j {
                        ratio(j as i64 - 1, i as i64 - 1)
                    } else {
                        ratio(n as i64 - j as i64, n as i64 - i as i64)
                    };
                    assert_eq!(m.get(i - 1, j - 1), &expected, "n={n} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn m_inverse_diagonal_formula_n4() {
        let inv = matrix_m_inverse(4);
        let diag: Vec<Rational> = (0..4).map(|i| inv.get(i, i).clone()).collect();
        assert_eq!(diag, vec![rat(1), ratio(4, 3), ratio(4, 3), rat(1)]);
        assert_eq!(matrix_m(4).invert().unwrap(), inv);
    }

    #[test]
    fn n_small_cases() {
        assert_eq!(matrix_n(1), RMatrix::identity(1));
        assert_eq!(matrix_n(2), RMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]).unwrap());
        assert_eq!(
            matrix_n_inverse(2).unwrap(),
            RMatrix::from_i64_rows(&[&[1, -1], &[0, 1]]).unwrap()
        );
        assert_eq!(
            matrix_n_inverse(3).unwrap(),
            RMatrix::from_i64_rows(&[&[1, -2, 1], &[0, 2, -2], &[0, 0, 1]]).unwrap()
        );
    }

    #[test]
    fn n_entry_formula() {
        for n in 1..=12 {
            let m = matrix_n(n);
            for j in 1..=n {
                assert_eq!(m.get(0, j - 1), &rat(1));
            }
            for i in 2..=n {
                for j in 1..=n {
                    let expected = if j >= i {
                        ratio(j as i64 - i as i64 + 1, n as i64 - i as i64 + 1)
                    } else {
                        rat(0)
                    };
                    assert_eq!(m.get(i - 1, j - 1), &expected, "n={n} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn z_pair_small_cases() {
        let z3 = matrix_z(3);
        assert_eq!(
            z3,
            RMatrix::from_i64_rows(&[&[1, 1, 1], &[0, 1, 1], &[0, 0, 1]]).unwrap()
        );
        assert_eq!(
            matrix_z_inverse(3).unwrap(),
            RMatrix::from_i64_rows(&[&[1, -1, 0], &[0, 1, -1], &[0, 0, 1]]).unwrap()
        );
        assert_eq!(matrix_z(1), RMatrix::identity(1));
        assert_eq!(matrix_z_inverse(1).unwrap(), RMatrix::identity(1));
        assert_eq!(
            matrix_z_inverse(2).unwrap(),
            RMatrix::from_i64_rows(&[&[1, -1], &[0, 1]]).unwrap()
        );
    }

    #[test]
    fn closed_form_m_inverse_matches_elimination() {
        for n in 1..=24 {
            let closed = matrix_m_inverse(n);
            let eliminated = matrix_m(n).invert().unwrap();
            assert_eq!(closed, eliminated, "n={n}");
        }
    }

    #[test]
    fn structure_report_on_m_family() {
        let report = structure_report(&matrix_m(5)).unwrap();
        assert!(report.is_centrally_symmetric);

        let report = structure_report(&matrix_m_inverse(5)).unwrap();
        assert!(report.is_centrally_symmetric);
        assert_eq!(report.band_lower, 1);
        assert_eq!(report.band_upper, 1);
        assert_eq!(report.exceptional_columns, vec![1, 5]);
    }

    #[test]
    fn structure_report_identity() {
        let report = structure_report(&RMatrix::identity(4)).unwrap();
        assert!(report.is_centrally_symmetric);
        assert_eq!(report.band_lower, 0);
        assert_eq!(report.band_upper, 0);
        assert!(report.exceptional_rows.is_empty());
        assert!(report.exceptional_columns.is_empty());
        assert_eq!(report.row_sums, vec![rat(1); 4]);
    }

    #[test]
    fn structure_report_rejects_non_square() {
        let a = RMatrix::zero(2, 3);
        assert!(matches!(
            structure_report(&a),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn monotone_concave_inverses_are_almost_diagonal() {
        for kind in [ConeKind::IncreasingConcave, ConeKind::DecreasingConcave] {
            for n in 1..=16 {
                let g = generators(kind, n).unwrap().matrix();
                let report = verify_almost_diagonal_inverse(&g)
                    .unwrap_or_else(|e| panic!("{kind} n={n}: {e}"));
                assert!(report.band_lower <= 1 && report.band_upper <= 1);
            }
        }
    }

    #[test]
    fn json_round_trip_is_exact() {
        for n in 1..=7 {
            let m = matrix_m(n);
            assert_eq!(matrix_from_json(&matrix_to_json(&m)).unwrap(), m);
            let ninv = matrix_n_inverse(n).unwrap();
            assert_eq!(matrix_from_json(&matrix_to_json(&ninv)).unwrap(), ninv);
        }
    }

    #[test]
    fn csv_round_trip_is_exact() {
        for n in 1..=7 {
            let m = matrix_m(n);
            assert_eq!(matrix_from_csv(&matrix_to_csv(&m)).unwrap(), m);
        }
    }

    #[test]
    fn csv_renders_integers_bare() {
        let csv = matrix_to_csv(&matrix_n_inverse(3).unwrap());
        assert_eq!(csv, "1,-2,1\n0,2,-2\n0,0,1\n");
    }

    #[test]
    fn common_denominator_of_m5_is_twelve() {
        assert_eq!(common_denominator(&matrix_m(5)), 12.into());
        assert_eq!(common_denominator(&matrix_n_inverse(5).unwrap()), 1.into());
    }

    #[test]
    fn csv_with_denominator_header_parses() {
        let text = "denominator,12\n12,9\n0,12\n";
        let parsed = matrix_from_csv(text).unwrap();
        assert_eq!(parsed.get(0, 1), &ratio(9, 12));
        assert_eq!(parsed.get(0, 0), &rat(1));
    }
}
