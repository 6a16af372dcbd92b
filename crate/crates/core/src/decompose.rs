//! Conic decomposition: greedy kink-removal algorithms for the simplicial
//! cones, the canonical representation of positive convex vectors, and
//! membership certificates.
//!
//! Every decomposition here is exact: coefficients are nonnegative rationals
//! and the conic combination reconstructs the input bit for bit.

use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::exactnum::{rat, ratio, RMatrix, Rational};
use crate::generators::{
    generators, standard_concave, standard_decreasing_convex, standard_increasing_convex,
    ConeKind, GeneratorSet,
};
use crate::shapes::{evaluate, PredicateKind, PredicateOutcome, ShapeVector};

/// Nonnegative coordinates of a vector in a cone's generator basis, aligned
/// with `generators(kind, n).labels`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub kind: ConeKind,
    pub n: usize,
    pub coefficients: Vec<Rational>,
}

impl Decomposition {
    pub fn generator_set(&self) -> GeneratorSet {
        generators(self.kind, self.n).expect("n >= 1")
    }

    /// The conic combination of the coefficients, which must equal the
    /// decomposed input exactly.
    pub fn reconstruct(&self) -> ShapeVector {
        self.generator_set()
            .combine(&self.coefficients)
            .expect("coefficients align with the generator set")
    }
}

/// The unique representation of a positive convex vector as
/// `baseline * 1 + sum lambda_i a(i) + sum theta_i b(i)` with
/// `baseline = min(c)` and all coefficients nonnegative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexCanonicalForm {
    pub n: usize,
    /// Multiplier of the all-ones vector; equals the minimum of the input.
    pub baseline: Rational,
    /// Coefficients of `a(1)..a(n-1)`; empty for n = 1.
    pub lambda: Vec<Rational>,
    /// Coefficients of `b(1)..b(n-1)`; empty for n = 1.
    pub theta: Vec<Rational>,
}

impl ConvexCanonicalForm {
    pub fn reconstruct(&self) -> ShapeVector {
        let mut acc = vec![self.baseline.clone(); self.n];
        for (i, coef) in self.lambda.iter().enumerate() {
            if !coef.is_zero() {
                let a = standard_increasing_convex(self.n, i + 1).expect("index in range");
                for (slot, e) in acc.iter_mut().zip(a.entries()) {
                    *slot += coef * e;
                }
            }
        }
        for (i, coef) in self.theta.iter().enumerate() {
            if !coef.is_zero() {
                let b = standard_decreasing_convex(self.n, i + 1).expect("index in range");
                for (slot, e) in acc.iter_mut().zip(b.entries()) {
                    *slot += coef * e;
                }
            }
        }
        ShapeVector::new(acc).expect("n >= 1")
    }
}

/// Proof object for cone membership: either nonnegative coordinates that
/// reconstruct the vector, or the first defining inequality it violates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipCertificate {
    InCone {
        kind: ConeKind,
        witness: CertificateWitness,
    },
    OutOfCone {
        kind: ConeKind,
        predicate: PredicateKind,
        /// 1-based index of the violated inequality.
        witness: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateWitness {
    Decomposition(Decomposition),
    Canonical(ConvexCanonicalForm),
}

impl MembershipCertificate {
    pub fn is_in_cone(&self) -> bool {
        matches!(self, MembershipCertificate::InCone { .. })
    }
}

/// First defining inequality of `kind` that `v` violates, if any, as a
/// (predicate, 1-based index) pair. Predicates are tried in the fixed order
/// of [`ConeKind::defining_predicates`].
pub fn first_violation(v: &ShapeVector, kind: ConeKind) -> Option<(PredicateKind, usize)> {
    let zero = rat(0);
    for &pred in kind.defining_predicates() {
        if let PredicateOutcome::Fails { witness } = evaluate(v, pred, &zero) {
            return Some((pred, witness));
        }
    }
    None
}

fn require_in_cone(v: &ShapeVector, kind: ConeKind) -> Result<(), Error> {
    match first_violation(v, kind) {
        Some((predicate, index)) => Err(Error::NotInCone {
            kind,
            predicate,
            index,
        }),
        None => Ok(()),
    }
}

fn subtract_scaled(work: &mut [Rational], generator: &ShapeVector, coefficient: &Rational) {
    if coefficient.is_zero() {
        return;
    }
    for (slot, e) in work.iter_mut().zip(generator.entries()) {
        if !e.is_zero() {
            *slot -= coefficient * e;
        }
    }
}

#[cfg(debug_assertions)]
fn singular_concave_indices(work: &[Rational]) -> Vec<usize> {
    // 1-based interior indices where 2 c_i > c_{i-1} + c_{i+1}.
    (2..work.len())
        .filter(|&i| &work[i - 1] + &work[i - 1] > &work[i - 2] + &work[i])
        .collect()
}

/// Decomposes a positive concave vector over the minimal standard concave
/// vectors by the constructive induction: peel `c_1 c(1)` and `c_n c(n)`,
/// then repeatedly flatten the first singular interior index i (one where
/// `2 c_i > c_{i-1} + c_{i+1}`) by subtracting
/// `lambda_i = (2 c_i - c_{i-1} - c_{i+1}) (i-1)(n-i)/(n-1)` copies of
/// `c(i)`, the unique multiple that makes i non-singular. Terminates in at
/// most n-2 rounds with the zero vector.
pub fn decompose_concave_greedy(c: &ShapeVector) -> Result<Decomposition, Error> {
    require_in_cone(c, ConeKind::PositiveConcave)?;
    let n = c.len();
    let mut coefficients = vec![rat(0); n];
    if n == 1 {
        coefficients[0] = c.get(0).clone();
        return Ok(Decomposition {
            kind: ConeKind::PositiveConcave,
            n,
            coefficients,
        });
    }
    let mut work: Vec<Rational> = c.entries().to_vec();
    coefficients[0] = work[0].clone();
    coefficients[n - 1] = work[n - 1].clone();
    subtract_scaled(&mut work, &standard_concave(n, 1)?, &coefficients[0].clone());
    subtract_scaled(&mut work, &standard_concave(n, n)?, &coefficients[n - 1].clone());
    debug_assert!(work[0].is_zero() && work[n - 1].is_zero());
    let mut rounds = 0usize;
    loop {
        let singular = (2..n).find(|&i| &work[i - 1] + &work[i - 1] > &work[i - 2] + &work[i]);
        let Some(i) = singular else { break };
        let kink = (&work[i - 1] + &work[i - 1]) - &work[i - 2] - &work[i];
        let lambda = &kink * ratio(((i - 1) * (n - i)) as i64, (n - 1) as i64);
        #[cfg(debug_assertions)]
        let singular_before = singular_concave_indices(&work);
        subtract_scaled(&mut work, &standard_concave(n, i)?, &lambda);
        #[cfg(debug_assertions)]
        {
            // The subtraction flattens index i exactly and leaves the
            // singularity status of every other index untouched.
            assert_eq!(&work[i - 1] + &work[i - 1], &work[i - 2] + &work[i]);
            let singular_after = singular_concave_indices(&work);
            let expected: Vec<usize> =
                singular_before.iter().copied().filter(|&j| j != i).collect();
            assert_eq!(singular_after, expected);
            assert!(work.iter().all(|e| !e.is_negative()));
        }
        debug_assert!(!lambda.is_negative());
        coefficients[i - 1] = lambda;
        rounds += 1;
        debug_assert!(rounds <= n - 2, "more rounds than singular indices");
    }
    debug_assert!(work.iter().all(Zero::is_zero), "greedy residual nonzero");
    Ok(Decomposition {
        kind: ConeKind::PositiveConcave,
        n,
        coefficients,
    })
}

/// Decomposes a positive increasing convex vector over `{1, a(1)..a(n-1)}`:
/// the coefficient of the all-ones vector is `c_1`; after subtracting it,
/// each strictly positive second difference `s_i` at the first interior
/// index i is removed by `s_i (n-i)` copies of `a(i)`; the kink-free
/// remainder is a multiple of the pure ramp `a(1)`.
pub fn decompose_increasing_convex_greedy(c: &ShapeVector) -> Result<Decomposition, Error> {
    require_in_cone(c, ConeKind::IncreasingConvex)?;
    let n = c.len();
    if n == 1 {
        return Ok(Decomposition {
            kind: ConeKind::IncreasingConvex,
            n,
            coefficients: vec![c.get(0).clone()],
        });
    }
    // Coefficients align with labels [1, a(1), ..., a(n-1)].
    let mut coefficients = vec![rat(0); n];
    let mut work: Vec<Rational> = c.entries().to_vec();
    coefficients[0] = work[0].clone();
    if !coefficients[0].is_zero() {
        for slot in work.iter_mut() {
            *slot -= &coefficients[0];
        }
    }
    loop {
        let kinked = (2..n).find(|&i| &work[i] + &work[i - 2] > &work[i - 1] + &work[i - 1]);
        let Some(i) = kinked else { break };
        let s = (&work[i] + &work[i - 2]) - &work[i - 1] - &work[i - 1];
        let lambda = &s * rat((n - i) as i64);
        subtract_scaled(&mut work, &standard_increasing_convex(n, i)?, &lambda);
        debug_assert_eq!(&work[i] + &work[i - 2], &work[i - 1] + &work[i - 1]);
        debug_assert!(work.iter().all(|e| !e.is_negative()));
        debug_assert!(work.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(work.windows(3).all(|w| &w[2] + &w[0] >= &w[1] + &w[1]));
        coefficients[i] = lambda;
    }
    // Kink-free with first entry 0: a multiple of the pure ramp, read off
    // the last entry.
    let ramp = work[n - 1].clone();
    subtract_scaled(&mut work, &standard_increasing_convex(n, 1)?, &ramp);
    coefficients[1] = ramp;
    debug_assert!(work.iter().all(Zero::is_zero), "greedy residual nonzero");
    Ok(Decomposition {
        kind: ConeKind::IncreasingConvex,
        n,
        coefficients,
    })
}

/// Mirror of [`decompose_increasing_convex_greedy`] for positive decreasing
/// convex vectors: reverse, decompose, and reuse the coefficients, since
/// `b(i)` is the reverse of `a(i)`.
pub fn decompose_decreasing_convex_greedy(c: &ShapeVector) -> Result<Decomposition, Error> {
    require_in_cone(c, ConeKind::DecreasingConvex)?;
    let reversed = decompose_increasing_convex_greedy(&c.reversed()).map_err(|e| match e {
        Error::NotInCone {
            predicate, index, ..
        } => Error::NotInCone {
            kind: ConeKind::DecreasingConvex,
            predicate,
            index,
        },
        other => other,
    })?;
    Ok(Decomposition {
        kind: ConeKind::DecreasingConvex,
        n: c.len(),
        coefficients: reversed.coefficients,
    })
}

/// Signed coordinates of `c` in the generator basis of a simplicial cone,
/// computed by an exact left solve against the generator matrix. All
/// coordinates are nonnegative exactly when `c` lies in the cone.
///
/// # Panics
///
/// Panics if `kind` is not simplicial.
pub fn basis_coordinates(c: &ShapeVector, kind: ConeKind) -> Result<Vec<Rational>, Error> {
    assert!(kind.is_simplicial(), "basis coordinates need a simplicial cone");
    let gens = generators(kind, c.len())?;
    gens.matrix().solve_left(c.entries())
}

/// Decomposes `c` over a simplicial cone by the exact matrix solve,
/// rejecting vectors outside the cone (negative coordinate) with the first
/// violated defining inequality.
///
/// # Panics
///
/// Panics if `kind` is not simplicial.
pub fn decompose_via_matrix(c: &ShapeVector, kind: ConeKind) -> Result<Decomposition, Error> {
    let coords = basis_coordinates(c, kind)?;
    if coords.iter().any(|x| x.is_negative()) {
        return Err(require_in_cone(c, kind).expect_err(
            "a negative basis coordinate implies a violated defining inequality",
        ));
    }
    Ok(Decomposition {
        kind,
        n: c.len(),
        coefficients: coords,
    })
}

/// A simplicial cone with its generator matrix inverted once, for
/// decomposing many vectors of the same dimension cheaply.
#[derive(Debug, Clone)]
pub struct ConeBasis {
    gens: GeneratorSet,
    inverse: RMatrix,
}

impl ConeBasis {
    /// # Panics
    ///
    /// Panics if `kind` is not simplicial.
    pub fn new(kind: ConeKind, n: usize) -> Result<Self, Error> {
        assert!(kind.is_simplicial(), "cone basis needs a simplicial cone");
        let gens = generators(kind, n)?;
        let inverse = gens.matrix().invert()?;
        Ok(Self { gens, inverse })
    }

    pub fn kind(&self) -> ConeKind {
        self.gens.kind
    }

    pub fn n(&self) -> usize {
        self.gens.n
    }

    pub fn generator_set(&self) -> &GeneratorSet {
        &self.gens
    }

    /// Signed coordinates `c * G^-1`.
    pub fn coordinates(&self, c: &ShapeVector) -> Result<Vec<Rational>, Error> {
        self.inverse.mul_left(c.entries())
    }

    pub fn decompose(&self, c: &ShapeVector) -> Result<Decomposition, Error> {
        let coords = self.coordinates(c)?;
        if coords.iter().any(|x| x.is_negative()) {
            return Err(require_in_cone(c, self.gens.kind).expect_err(
                "a negative basis coordinate implies a violated defining inequality",
            ));
        }
        Ok(Decomposition {
            kind: self.gens.kind,
            n: self.gens.n,
            coefficients: coords,
        })
    }

    /// Membership decided by the coordinate sign pattern, with the
    /// decomposition as the in-cone witness.
    pub fn membership(&self, c: &ShapeVector) -> MembershipCertificate {
        let kind = self.gens.kind;
        let coords = self
            .coordinates(c)
            .expect("cone basis dimension matches the vector");
        if coords.iter().all(|x| !x.is_negative()) {
            MembershipCertificate::InCone {
                kind,
                witness: CertificateWitness::Decomposition(Decomposition {
                    kind,
                    n: self.gens.n,
                    coefficients: coords,
                }),
            }
        } else {
            let (predicate, witness) = first_violation(c, kind).expect(
                "a negative basis coordinate implies a violated defining inequality",
            );
            MembershipCertificate::OutOfCone {
                kind,
                predicate,
                witness,
            }
        }
    }
}

/// The zero interval `[p, q]` (1-based, inclusive) of a residual vector
/// whose minimum is zero. Convexity forces the zero set to be contiguous.
fn zero_interval(residual: &[Rational]) -> (usize, usize) {
    let p = residual
        .iter()
        .position(Zero::is_zero)
        .expect("residual attains its zero minimum");
    let q = residual
        .iter()
        .rposition(Zero::is_zero)
        .expect("residual attains its zero minimum");
    debug_assert!(
        residual[p..=q].iter().all(Zero::is_zero),
        "zero set of a convex residual must be contiguous"
    );
    (p + 1, q + 1)
}

/// Splits `c - min(c) * 1` at its zero interval into a decreasing head and
/// an increasing tail, both positive monotone convex.
fn canonical_split(c: &ShapeVector) -> (Rational, Vec<Rational>, usize, usize) {
    let baseline = c.min().clone();
    let residual: Vec<Rational> = c.entries().iter().map(|e| e - &baseline).collect();
    let (p, q) = zero_interval(&residual);
    (baseline, residual, p, q)
}

/// Canonical form of a positive convex vector: subtract `(min c) * 1`, split
/// the residual at its zero interval `[p, q]` into the decreasing part
/// (entries before p) and the increasing part (entries after q), and
/// decompose each half greedily. The split makes the coefficients unique:
/// on the zero interval every conic contribution must vanish, which pins the
/// support of both coefficient families.
pub fn decompose_convex_canonical(c: &ShapeVector) -> Result<ConvexCanonicalForm, Error> {
    require_in_cone(c, ConeKind::PositiveConvex)?;
    let n = c.len();
    if n == 1 {
        return Ok(ConvexCanonicalForm {
            n,
            baseline: c.get(0).clone(),
            lambda: Vec::new(),
            theta: Vec::new(),
        });
    }
    let (baseline, residual, p, q) = canonical_split(c);
    let increasing: Vec<Rational> = residual
        .iter()
        .enumerate()
        .map(|(j, e)| if j + 1 > q { e.clone() } else { rat(0) })
        .collect();
    let decreasing: Vec<Rational> = residual
        .iter()
        .enumerate()
        .map(|(j, e)| if j + 1 < p { e.clone() } else { rat(0) })
        .collect();
    let inc = decompose_increasing_convex_greedy(&ShapeVector::new(increasing)?)?;
    let dec = decompose_decreasing_convex_greedy(&ShapeVector::new(decreasing)?)?;
    debug_assert!(inc.coefficients[0].is_zero(), "increasing part has min 0");
    debug_assert!(dec.coefficients[0].is_zero(), "decreasing part has min 0");
    Ok(ConvexCanonicalForm {
        n,
        baseline,
        lambda: inc.coefficients[1..].to_vec(),
        theta: dec.coefficients[1..].to_vec(),
    })
}

/// Independent second route to the canonical coefficients: restrict to the
/// support pattern forced by the zero interval (`lambda_i` free only for
/// i >= q, `theta_i` only for i >= n-p+1) and solve the resulting triangular
/// linear systems exactly. Used to confirm the uniqueness of the canonical
/// form against [`decompose_convex_canonical`].
pub fn canonical_by_support_solve(c: &ShapeVector) -> Result<ConvexCanonicalForm, Error> {
    require_in_cone(c, ConeKind::PositiveConvex)?;
    let n = c.len();
    if n == 1 {
        return Ok(ConvexCanonicalForm {
            n,
            baseline: c.get(0).clone(),
            lambda: Vec::new(),
            theta: Vec::new(),
        });
    }
    let (baseline, residual, p, q) = canonical_split(c);
    let mut lambda = vec![rat(0); n - 1];
    let mut theta = vec![rat(0); n - 1];
    // Increasing side: coordinates j = q+1..n, new unknown lambda_{j-1} at
    // each step since a(i) vanishes on positions <= i.
    let all_a: Vec<ShapeVector> = (1..n)
        .map(|i| standard_increasing_convex(n, i).expect("index in range"))
        .collect();
    for j in (q + 1)..=n {
        let i = j - 1;
        let mut s = residual[j - 1].clone();
        for k in q..i {
            let a_kj = all_a[k - 1].get(j - 1);
            if !a_kj.is_zero() {
                s -= &lambda[k - 1] * a_kj;
            }
        }
        // a(i) at position i+1 is 1/(n-i).
        lambda[i - 1] = s * rat((n - i) as i64);
    }
    // Decreasing side, mirrored: coordinates j = p-1 down to 1, new unknown
    // theta_{n-j}; b(i) at position n-i is 1/(n-i), i.e. 1/j here.
    let all_b: Vec<ShapeVector> = (1..n)
        .map(|i| standard_decreasing_convex(n, i).expect("index in range"))
        .collect();
    for j in (1..p).rev() {
        let i = n - j;
        let mut s = residual[j - 1].clone();
        for k in (n + 1 - p)..i {
            let b_kj = all_b[k - 1].get(j - 1);
            if !b_kj.is_zero() {
                s -= &theta[k - 1] * b_kj;
            }
        }
        theta[i - 1] = s * rat(j as i64);
    }
    debug_assert!(lambda.iter().chain(&theta).all(|x| !x.is_negative()));
    Ok(ConvexCanonicalForm {
        n,
        baseline,
        lambda,
        theta,
    })
}

/// Decides membership of `c` in a cone, with a proof either way: a
/// nonnegative decomposition (simplicial kinds), the canonical form
/// (positive convex), or the first violated defining inequality.
///
/// For simplicial kinds the verdict comes from the coordinate sign pattern,
/// not from the predicates, so predicate-based checks can cross-validate it.
pub fn membership(c: &ShapeVector, kind: ConeKind) -> MembershipCertificate {
    if kind.is_simplicial() {
        let basis = ConeBasis::new(kind, c.len()).expect("simplicial generator matrix inverts");
        basis.membership(c)
    } else {
        match first_violation(c, kind) {
            Some((predicate, witness)) => MembershipCertificate::OutOfCone {
                kind,
                predicate,
                witness,
            },
            None => MembershipCertificate::InCone {
                kind,
                witness: CertificateWitness::Canonical(
                    decompose_convex_canonical(c).expect("predicates hold"),
                ),
            },
        }
    }
}
