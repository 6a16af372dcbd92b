//! The `verify` subcommand: golden 5x5 comparisons, inverse identities,
//! structural claims and extreme-ray certification, reported line by line.

use shapecones::exactnum::{rat, ratio, RMatrix};
use shapecones::generators::{
    generators, ones, standard_decreasing_convex, standard_increasing_convex, ConeKind,
};
use shapecones::matrices::{
    matrix_m, matrix_m_inverse, matrix_n, matrix_n_inverse, matrix_z, matrix_z_inverse,
    structure_report, verify_almost_diagonal_inverse,
};
use shapecones::oracle::verify_extreme_rays;
use shapecones::shapes::predicate;

fn twelfths(rows: &[&[i64]]) -> RMatrix {
    RMatrix::from_rows(
        rows.iter()
            .map(|row| row.iter().map(|&v| ratio(v, 12)).collect())
            .collect(),
    )
    .unwrap()
}

fn golden_matrices() -> Result<(), String> {
    let m5 = twelfths(&[
        &[12, 9, 6, 3, 0],
        &[0, 12, 8, 4, 0],
        &[0, 6, 12, 6, 0],
        &[0, 4, 8, 12, 0],
        &[0, 3, 6, 9, 12],
    ]);
    let m5_inverse = twelfths(&[
        &[12, -9, 0, 0, 0],
        &[0, 18, -12, 0, 0],
        &[0, -9, 24, -9, 0],
        &[0, 0, -12, 18, 0],
        &[0, 0, 0, -9, 12],
    ]);
    let n5 = twelfths(&[
        &[12, 12, 12, 12, 12],
        &[0, 3, 6, 9, 12],
        &[0, 0, 4, 8, 12],
        &[0, 0, 0, 6, 12],
        &[0, 0, 0, 0, 12],
    ]);
    let n5_inverse = RMatrix::from_i64_rows(&[
        &[1, -4, 3, 0, 0],
        &[0, 4, -6, 2, 0],
        &[0, 0, 3, -4, 1],
        &[0, 0, 0, 2, -2],
        &[0, 0, 0, 0, 1],
    ])
    .unwrap();
    if matrix_m(5) != m5 {
        return Err("M(5) differs from the golden matrix".into());
    }
    if matrix_m_inverse(5) != m5_inverse {
        return Err("M^-1(5) differs from the golden matrix".into());
    }
    if matrix_n(5) != n5 {
        return Err("N(5) differs from the golden matrix".into());
    }
    match matrix_n_inverse(5) {
        Ok(inv) if inv == n5_inverse => Ok(()),
        Ok(_) => Err("N^-1(5) differs from the golden matrix".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn inverse_identities(n_max: usize) -> Result<(), String> {
    for n in 1..=n_max {
        let m = matrix_m(n);
        let m_inv = matrix_m_inverse(n);
        if !m.mul(&m_inv).map_err(|e| e.to_string())?.is_identity() {
            return Err(format!("M * M^-1 is not the identity at n={n}"));
        }
        if m_inv != m.invert().map_err(|e| e.to_string())? {
            return Err(format!("closed-form M^-1 differs from elimination at n={n}"));
        }
        let nn = matrix_n(n);
        let n_inv = matrix_n_inverse(n).map_err(|e| format!("n={n}: {e}"))?;
        if !nn.mul(&n_inv).map_err(|e| e.to_string())?.is_identity() {
            return Err(format!("N * N^-1 is not the identity at n={n}"));
        }
        let z = matrix_z(n);
        let z_inv = matrix_z_inverse(n).map_err(|e| format!("n={n}: {e}"))?;
        if !z.mul(&z_inv).map_err(|e| e.to_string())?.is_identity() {
            return Err(format!("Z * Z^-1 is not the identity at n={n}"));
        }
    }
    Ok(())
}

fn central_symmetry(n_max: usize) -> Result<(), String> {
    for n in 2..=n_max {
        for (label, a) in [("M", matrix_m(n)), ("M^-1", matrix_m_inverse(n))] {
            let report = structure_report(&a).map_err(|e| e.to_string())?;
            if !report.is_centrally_symmetric {
                return Err(format!("{label} is not centrally symmetric at n={n}"));
            }
        }
    }
    Ok(())
}

fn m_inverse_structure(n_max: usize) -> Result<(), String> {
    for n in 2..=n_max {
        let inv = matrix_m_inverse(n);
        let report = structure_report(&inv).map_err(|e| e.to_string())?;
        if report.band_lower > 1 || report.band_upper > 1 {
            return Err(format!("M^-1 is not tridiagonal at n={n}"));
        }
        for (j, sum) in report.column_sums.iter().enumerate() {
            if j > 0 && j + 1 < n && sum != &rat(0) {
                return Err(format!(
                    "M^-1 interior column {} sums to {} at n={n}",
                    j + 1,
                    sum
                ));
            }
        }
    }
    Ok(())
}

fn ramp_complement(n_max: usize) -> Result<(), String> {
    for n in 2..=n_max {
        let a1 = standard_increasing_convex(n, 1).map_err(|e| e.to_string())?;
        let b1 = standard_decreasing_convex(n, 1).map_err(|e| e.to_string())?;
        let all_ones = ones(n);
        let sums = a1
            .entries()
            .iter()
            .zip(b1.entries())
            .zip(all_ones.entries())
            .all(|((x, y), one)| &(x + y) == one);
        if !sums {
            return Err(format!("a(1) + b(1) is not the all-ones vector at n={n}"));
        }
    }
    Ok(())
}

fn concave_family_structure(n_max: usize) -> Result<(), String> {
    for kind in [ConeKind::IncreasingConcave, ConeKind::DecreasingConcave] {
        for n in 2..=n_max {
            let g = generators(kind, n).map_err(|e| e.to_string())?.matrix();
            verify_almost_diagonal_inverse(&g).map_err(|e| format!("{kind} n={n}: {e}"))?;
        }
    }
    Ok(())
}

fn generator_membership(n_max: usize) -> Result<(), String> {
    for kind in ConeKind::ALL {
        for n in 1..=n_max {
            let gens = generators(kind, n).map_err(|e| e.to_string())?;
            for (row, label) in gens.rows.iter().zip(&gens.labels) {
                for &pred in kind.defining_predicates() {
                    if !predicate(row, pred).map_err(|e| e.to_string())? {
                        return Err(format!("{kind} n={n}: generator {label} fails {pred}"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn extreme_rays(kind: ConeKind, n_top: usize, limit: usize) -> Result<(), String> {
    for n in 2..=n_top {
        let report = verify_extreme_rays(kind, n, limit).map_err(|e| e.to_string())?;
        let expected = kind.generator_count(n);
        if report.extreme_count() != expected {
            return Err(format!(
                "{kind} n={n}: {} of {} generators certified extreme",
                report.extreme_count(),
                expected
            ));
        }
    }
    Ok(())
}

/// Runs every check up to dimension `n_max` (extreme rays up to
/// `min(n_max, extreme_limit)`), printing one PASS/FAIL line per check and
/// a summary. Returns whether everything passed.
pub fn run(n_max: usize, extreme_limit: usize, out: &mut dyn std::io::Write) -> std::io::Result<bool> {
    let n_max = n_max.max(1);
    let extreme_top = n_max.min(extreme_limit);
    let mut checks: Vec<(String, Result<(), String>)> = vec![
        ("golden 5x5 matrices".into(), golden_matrices()),
        (
            format!("inverse identities M/N/Z (n = 1..{n_max})"),
            inverse_identities(n_max),
        ),
        (
            format!("central symmetry of M and M^-1 (n = 2..{n_max})"),
            central_symmetry(n_max),
        ),
        (
            format!("M^-1 band and column sums (n = 2..{n_max})"),
            m_inverse_structure(n_max),
        ),
        (
            format!("ramp complement a(1) + b(1) = 1 (n = 2..{n_max})"),
            ramp_complement(n_max),
        ),
        (
            format!("monotone concave inverse structure (n = 2..{n_max})"),
            concave_family_structure(n_max),
        ),
        (
            format!("generator membership predicates (n = 1..{n_max})"),
            generator_membership(n_max),
        ),
    ];
    for kind in ConeKind::ALL {
        checks.push((
            format!("extreme rays of {kind} (n = 2..{extreme_top})"),
            extreme_rays(kind, extreme_top, extreme_limit),
        ));
    }
    let mut failed = 0usize;
    for (name, result) in &checks {
        match result {
            Ok(()) => writeln!(out, "PASS {name}")?,
            Err(reason) => {
                failed += 1;
                writeln!(out, "FAIL {name}: {reason}")?;
            }
        }
    }
    writeln!(out, "{} passed, {failed} failed", checks.len() - failed)?;
    Ok(failed == 0)
}
