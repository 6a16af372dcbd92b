//! Acceptance suite: one test per release criterion, every check exact
//! (zero tolerance). Run with
//! `cargo test -p shapecones --test acceptance -- --show-output`
//! to see one pass line per criterion.

use shapecones::decompose::{
    canonical_by_support_solve, decompose_concave_greedy, decompose_convex_canonical,
    decompose_decreasing_convex_greedy, decompose_increasing_convex_greedy, ConeBasis,
};
use shapecones::exactnum::{rat, ratio, RMatrix, Rational};
use shapecones::generators::{
    generators, ones, standard_decreasing_convex, standard_increasing_convex, ConeKind,
};
use shapecones::matrices::{
    matrix_m, matrix_m_inverse, matrix_n, matrix_n_inverse, matrix_z, matrix_z_inverse,
    verify_almost_diagonal_inverse,
};
use shapecones::oracle::{
    brute_force_membership, conic_feasibility, sample_coefficients, sample_in_cone,
    sample_outside_cone, verify_extreme_rays, SeedStream,
};
use shapecones::ShapeVector;

use num_traits::Zero;

fn twelfths(rows: &[&[i64]]) -> RMatrix {
    RMatrix::from_rows(
        rows.iter()
            .map(|row| row.iter().map(|&v| ratio(v, 12)).collect())
            .collect(),
    )
    .unwrap()
}

/// Deterministic per-case seed so every draw in the suite is reproducible.
fn case_seed(kind: ConeKind, n: usize, trial: u64) -> u64 {
    let kind_index = ConeKind::ALL.iter().position(|k| *k == kind).unwrap() as u64;
    (kind_index << 40) ^ ((n as u64) << 24) ^ trial
}

#[test]
fn criterion_1_golden_matrices() {
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
    assert_eq!(matrix_m(5), m5, "M(5) golden mismatch");
    assert_eq!(matrix_m_inverse(5), m5_inverse, "M^-1(5) golden mismatch");
    assert_eq!(matrix_n(5), n5, "N(5) golden mismatch");
    assert_eq!(
        matrix_n_inverse(5).unwrap(),
        n5_inverse,
        "N^-1(5) golden mismatch"
    );
    println!("criterion 1 (golden n=5 matrices, exact): PASS");
}

#[test]
fn criterion_2_exact_inverses() {
    for n in 1..=64 {
        let m = matrix_m(n);
        let m_inv = matrix_m_inverse(n);
        assert!(m.mul(&m_inv).unwrap().is_identity(), "M M^-1 != I at n={n}");
        assert!(m_inv.mul(&m).unwrap().is_identity(), "M^-1 M != I at n={n}");
        assert_eq!(
            m_inv,
            m.invert().unwrap(),
            "closed-form M^-1 differs from elimination at n={n}"
        );
        let nn = matrix_n(n);
        let n_inv = matrix_n_inverse(n).unwrap();
        assert!(nn.mul(&n_inv).unwrap().is_identity(), "N N^-1 != I at n={n}");
        let z = matrix_z(n);
        let z_inv = matrix_z_inverse(n).unwrap();
        assert!(z.mul(&z_inv).unwrap().is_identity(), "Z Z^-1 != I at n={n}");
    }
    println!("criterion 2 (exact inverses, n = 1..64): PASS");
}

#[test]
fn criterion_3_structural_claims() {
    for n in 2..=64 {
        let m = matrix_m(n);
        let m_inv = matrix_m_inverse(n);
        for (label, a) in [("M", &m), ("M^-1", &m_inv)] {
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(
                        a.get(i, j),
                        a.get(n - 1 - i, n - 1 - j),
                        "{label} not centrally symmetric at n={n}"
                    );
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i.abs_diff(j) > 1 {
                    assert!(
                        m_inv.get(i, j).is_zero(),
                        "M^-1 outside tridiagonal band at n={n} ({i},{j})"
                    );
                }
            }
        }
        for (j, sum) in m_inv.column_sums().iter().enumerate() {
            if j == 0 || j == n - 1 {
                continue;
            }
            assert!(sum.is_zero(), "M^-1 interior column {j} sum != 0 at n={n}");
        }

        let n_inv = matrix_n_inverse(n).unwrap();
        for i in 0..n {
            for j in 0..n {
                if !(j >= i && j - i <= 2) {
                    assert!(
                        n_inv.get(i, j).is_zero(),
                        "N^-1 outside band 0 <= j-i <= 2 at n={n} ({i},{j})"
                    );
                }
            }
        }
        for (i, sum) in n_inv.row_sums().iter().enumerate() {
            if i + 1 < n {
                assert!(sum.is_zero(), "N^-1 row {i} sum != 0 at n={n}");
            }
        }
        for (j, sum) in n_inv.column_sums().iter().enumerate() {
            if j > 0 {
                assert!(sum.is_zero(), "N^-1 column {j} sum != 0 at n={n}");
            }
        }

        let z_inv = matrix_z_inverse(n).unwrap();
        for i in 0..n {
            for j in 0..n {
                if !(j == i || j == i + 1) {
                    assert!(
                        z_inv.get(i, j).is_zero(),
                        "Z^-1 outside two diagonals at n={n} ({i},{j})"
                    );
                }
            }
        }
        for (j, sum) in z_inv.column_sums().iter().enumerate() {
            if j > 0 {
                assert!(sum.is_zero(), "Z^-1 column {j} sum != 0 at n={n}");
            }
        }
    }
    println!("criterion 3 (band and sum structure, n = 2..64): PASS");
}

#[test]
fn criterion_4_decomposition_round_trip() {
    let sizes = [2usize, 3, 5, 8, 13, 20];
    let simplicial: Vec<ConeKind> = ConeKind::ALL
        .into_iter()
        .filter(|k| k.is_simplicial())
        .collect();
    let mut checked = 0u64;
    for &kind in &simplicial {
        for &n in &sizes {
            let gens = generators(kind, n).unwrap();
            let basis = ConeBasis::new(kind, n).unwrap();
            for trial in 0..1000 {
                let coefficients =
                    sample_coefficients(kind, n, case_seed(kind, n, trial)).unwrap();
                let v = gens.combine(&coefficients).unwrap();
                let recovered = basis.coordinates(&v).unwrap();
                assert_eq!(
                    recovered, coefficients,
                    "{kind} n={n} trial={trial}: matrix solve lost the coefficients"
                );
                let greedy = match kind {
                    ConeKind::PositiveConcave => Some(decompose_concave_greedy(&v).unwrap()),
                    ConeKind::IncreasingConvex => {
                        Some(decompose_increasing_convex_greedy(&v).unwrap())
                    }
                    ConeKind::DecreasingConvex => {
                        Some(decompose_decreasing_convex_greedy(&v).unwrap())
                    }
                    _ => None,
                };
                if let Some(greedy) = greedy {
                    assert_eq!(
                        greedy.coefficients, coefficients,
                        "{kind} n={n} trial={trial}: greedy disagrees with matrix solve"
                    );
                }
                checked += 1;
            }
        }
    }
    println!(
        "criterion 4 (round-trip and greedy agreement, {} draws over {} kinds): PASS",
        checked,
        simplicial.len()
    );
}

#[test]
fn criterion_5_extreme_rays() {
    for n in 3..=7 {
        let report = verify_extreme_rays(ConeKind::PositiveConvex, n, 8).unwrap();
        assert_eq!(
            report.extreme_count(),
            2 * n - 2,
            "positive_convex at n={n} must have exactly 2n-2 extreme generators"
        );
        assert_eq!(report.verdicts.len(), 2 * n - 2);
        for kind in ConeKind::ALL.into_iter().filter(|k| k.is_simplicial()) {
            let report = verify_extreme_rays(kind, n, 8).unwrap();
            assert_eq!(report.verdicts.len(), n);
            assert!(
                report.all_extreme(),
                "{kind} at n={n}: some generator is not extreme"
            );
        }
    }
    println!("criterion 5 (extreme-ray counts, n = 3..7): PASS");
}

#[test]
fn criterion_6_corrected_ramp_identity() {
    // The first standard increasing and decreasing convex vectors sum to the
    // all-ones vector. (The decreasing family has no index n; b(1) is the
    // complement of a(1).)
    for n in 2..=32 {
        let a1 = standard_increasing_convex(n, 1).unwrap();
        let b1 = standard_decreasing_convex(n, 1).unwrap();
        let sum: Vec<Rational> = a1
            .entries()
            .iter()
            .zip(b1.entries())
            .map(|(x, y)| x + y)
            .collect();
        assert_eq!(
            ShapeVector::new(sum).unwrap(),
            ones(n),
            "a(1) + b(1) != 1 at n={n}"
        );
    }
    println!("criterion 6 (a(1) + b(1) = 1, n = 2..32): PASS");
}

#[test]
fn criterion_7_canonical_convex_form() {
    let mut checked = 0u64;
    for n in 3..=12 {
        let gens = generators(ConeKind::PositiveConvex, n).unwrap();
        for trial in 0..1000 {
            let seed = case_seed(ConeKind::PositiveConvex, n, trial);
            let coefficients = sample_coefficients(ConeKind::PositiveConvex, n, seed).unwrap();
            let mut entries = gens.combine(&coefficients).unwrap().into_entries();
            // Seeded baseline so vectors with strictly positive minimum are
            // common.
            let baseline = SeedStream::new(seed ^ 0xA5A5_A5A5).next_coefficient();
            for e in entries.iter_mut() {
                *e += &baseline;
            }
            let v = ShapeVector::new(entries).unwrap();
            let greedy = decompose_convex_canonical(&v).unwrap();
            let solved = canonical_by_support_solve(&v).unwrap();
            assert_eq!(
                greedy, solved,
                "n={n} trial={trial}: the two canonical computations disagree"
            );
            assert_eq!(
                greedy.reconstruct(),
                v,
                "n={n} trial={trial}: canonical form does not reconstruct"
            );
            assert_eq!(greedy.baseline, v.min().clone());
            assert!(greedy.lambda.iter().all(|x| x >= &rat(0)));
            assert!(greedy.theta.iter().all(|x| x >= &rat(0)));
            checked += 1;
        }
    }
    println!(
        "criterion 7 (canonical convex form, {checked} draws, two routes agree): PASS"
    );
}

#[test]
fn criterion_8_oracle_agreement() {
    let mut disagreements = 0u64;
    let mut checked = 0u64;
    for kind in ConeKind::ALL {
        for n in 2..=10 {
            let basis = if kind.is_simplicial() {
                Some(ConeBasis::new(kind, n).unwrap())
            } else {
                None
            };
            let verdict = |v: &ShapeVector| -> bool {
                match &basis {
                    Some(basis) => basis.membership(v).is_in_cone(),
                    None => shapecones::decompose::membership(v, kind).is_in_cone(),
                }
            };
            for trial in 0..1000 {
                let seed = case_seed(kind, n, trial);
                let inside = sample_in_cone(kind, n, seed).unwrap();
                if verdict(&inside) != brute_force_membership(&inside, kind) {
                    disagreements += 1;
                }
                assert!(
                    brute_force_membership(&inside, kind),
                    "{kind} n={n} trial={trial}: in-cone sample fails predicates"
                );
                let outside = sample_outside_cone(kind, n, seed).unwrap();
                assert!(
                    !brute_force_membership(&outside, kind),
                    "{kind} n={n} trial={trial}: perturbed sample still passes predicates"
                );
                if verdict(&outside) != brute_force_membership(&outside, kind) {
                    disagreements += 1;
                }
                checked += 2;
            }
        }
    }
    assert_eq!(disagreements, 0, "membership routes disagree");
    println!(
        "criterion 8 (oracle agreement on {checked} samples, 0 disagreements): PASS"
    );
}

#[test]
fn criterion_9_derived_family_gate() {
    for kind in [ConeKind::IncreasingConcave, ConeKind::DecreasingConcave] {
        for n in 2..=7 {
            let report = verify_extreme_rays(kind, n, 8).unwrap();
            assert_eq!(report.verdicts.len(), n);
            assert!(
                report.all_extreme(),
                "{kind} n={n}: generator family is not extreme-ray certified"
            );
            // The family must also span the whole cone: every sampled
            // in-cone vector is feasible over it.
            let gens = generators(kind, n).unwrap();
            for trial in 0..100 {
                let v = sample_in_cone(kind, n, case_seed(kind, n, trial)).unwrap();
                let result = conic_feasibility(&v, &gens).unwrap();
                assert!(
                    result.is_feasible(),
                    "{kind} n={n} trial={trial}: in-cone sample rejected"
                );
            }
        }
        for n in 2..=64 {
            let g = generators(kind, n).unwrap().matrix();
            let report = verify_almost_diagonal_inverse(&g)
                .unwrap_or_else(|e| panic!("{kind} n={n}: {e}"));
            assert!(report.band_lower <= 1 && report.band_upper <= 1);
            assert!(report.exceptional_rows.len() <= 1);
            assert!(report.exceptional_columns.len() <= 1);
        }
    }
    println!(
        "criterion 9 (derived concave families: extreme rays n<=7, almost-diagonal inverses n=2..64): PASS"
    );
}
