//! Independent exact verification: conic feasibility by an exact
//! feasibility-phase simplex, extreme-ray certification, deterministic
//! in-cone and out-of-cone sampling, and predicate-level membership used to
//! cross-check the decomposition routes.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::exactnum::{rat, ratio, Rational};
use crate::generators::{generators, ConeKind, GeneratorSet};
use crate::shapes::{evaluate, PredicateKind, ShapeVector};

/// Default dimension bound for extreme-ray verification; the exact solver
/// cost grows quickly with n. Configurable upward per call.
pub const DEFAULT_EXTREME_RAY_LIMIT: usize = 8;

/// Exact answer to "is v a nonnegative combination of these generators?",
/// with a checkable witness either way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeasibilityResult {
    /// `v = sum coefficients[k] * g_k` with all coefficients >= 0.
    Feasible { coefficients: Vec<Rational> },
    /// A functional `y` with `y . g_k >= 0` for every generator and
    /// `y . v < 0`, proving v lies outside the cone they span.
    Infeasible { separating: Vec<Rational> },
}

impl FeasibilityResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityResult::Feasible { .. })
    }
}

/// Per-generator extreme-ray verdicts for one cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremeRayReport {
    pub kind: ConeKind,
    pub n: usize,
    pub verdicts: Vec<RayVerdict>,
}

/// Whether one generator is an extreme ray, i.e. not a conic combination of
/// the remaining generators, with the feasibility certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayVerdict {
    pub label: String,
    pub extreme: bool,
    pub certificate: FeasibilityResult,
}

impl ExtremeRayReport {
    pub fn all_extreme(&self) -> bool {
        self.verdicts.iter().all(|v| v.extreme)
    }

    pub fn extreme_count(&self) -> usize {
        self.verdicts.iter().filter(|v| v.extreme).count()
    }
}

/// Decides exactly whether `v` is a conic combination of the generators,
/// returning nonnegative coefficients or a separating functional.
///
/// The kernel is a feasibility-phase simplex over exact rationals with
/// Bland's least-index pivot rule, which guarantees termination.
pub fn conic_feasibility(
    v: &ShapeVector,
    gens: &GeneratorSet,
) -> Result<FeasibilityResult, Error> {
    if v.len() != gens.n {
        return Err(Error::DimensionMismatch {
            expected: gens.n,
            actual: v.len(),
        });
    }
    Ok(phase_one(gens, v.entries()))
}

/// Feasibility-phase simplex for `sum mu_k g_k = v`, `mu >= 0`.
///
/// Rows with a negative right-hand side are sign-flipped so the artificial
/// basis starts feasible; the flip signs are undone when the dual functional
/// is extracted.
fn phase_one(gens: &GeneratorSet, v: &[Rational]) -> FeasibilityResult {
    let n = gens.n;
    let m = gens.len();
    let total = m + n;
    let mut flipped = vec![false; n];
    // Tableau rows: m structural columns, n artificial columns, then the
    // right-hand side.
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for r in 0..n {
        let flip = v[r].is_negative();
        flipped[r] = flip;
        let mut row: Vec<Rational> = (0..m)
            .map(|k| {
                let e = gens.rows[k].get(r);
                if flip {
                    -e
                } else {
                    e.clone()
                }
            })
            .collect();
        row.extend((0..n).map(|a| rat((a == r) as i64)));
        row.push(if flip { -&v[r] } else { v[r].clone() });
        rows.push(row);
    }
    let mut basis: Vec<usize> = (m..total).collect();
    // Reduced-cost row for minimizing the sum of artificials: structural
    // columns start at -(column sum), artificial columns at 0, and the last
    // entry holds minus the objective value.
    let mut cost: Vec<Rational> = vec![rat(0); total + 1];
    for row in &rows {
        for (c, e) in cost.iter_mut().zip(row.iter()) {
            *c -= e;
        }
    }
    for c in cost.iter_mut().take(total).skip(m) {
        *c = rat(0);
    }
    // Bland's rule: lowest-index column with a negative reduced cost.
    while let Some(entering) = (0..total).find(|&j| cost[j].is_negative()) {
        let mut leaving: Option<usize> = None;
        for r in 0..n {
            if rows[r][entering].is_positive() {
                leaving = match leaving {
                    None => Some(r),
                    Some(best) => {
                        // Compare rhs[r]/pivot[r] with rhs[best]/pivot[best];
                        // both pivots are positive so cross-multiplication is
                        // order-preserving. Ties go to the lowest basic
                        // variable index (Bland again).
                        let lhs = rows[r].last().unwrap() * &rows[best][entering];
                        let rhs = rows[best].last().unwrap() * &rows[r][entering];
                        if lhs < rhs || (lhs == rhs && basis[r] < basis[best]) {
                            Some(r)
                        } else {
                            Some(best)
                        }
                    }
                };
            }
        }
        let leaving = leaving.expect("phase-one objective is bounded below by zero");
        pivot(&mut rows, &mut cost, leaving, entering);
        basis[leaving] = entering;
    }
    let objective = -cost.last().unwrap().clone();
    debug_assert!(!objective.is_negative());
    if objective.is_zero() {
        let mut coefficients = vec![rat(0); m];
        for (r, &b) in basis.iter().enumerate() {
            if b < m {
                coefficients[b] = rows[r].last().unwrap().clone();
            }
        }
        FeasibilityResult::Feasible { coefficients }
    } else {
        // Dual multipliers from the artificial reduced costs: for artificial
        // column r, cost[m + r] = 1 - y_r at optimality. Undo the row flips
        // and negate so the functional is nonnegative on every generator and
        // negative on v.
        let separating: Vec<Rational> = (0..n)
            .map(|r| {
                let y = rat(1) - &cost[m + r];
                if flipped[r] {
                    y
                } else {
                    -y
                }
            })
            .collect();
        FeasibilityResult::Infeasible { separating }
    }
}

fn pivot(rows: &mut [Vec<Rational>], cost: &mut [Rational], leaving: usize, entering: usize) {
    let divisor = rows[leaving][entering].clone();
    if !divisor.is_one() {
        for e in rows[leaving].iter_mut() {
            if !e.is_zero() {
                *e /= &divisor;
            }
        }
    }
    let pivot_row = rows[leaving].clone();
    for (r, row) in rows.iter_mut().enumerate() {
        if r != leaving && !row[entering].is_zero() {
            let factor = std::mem::replace(&mut row[entering], rat(0));
            for (e, p) in row.iter_mut().zip(pivot_row.iter()) {
                if !p.is_zero() {
                    *e -= &factor * p;
                }
            }
            row[entering] = rat(0);
        }
    }
    if !cost[entering].is_zero() {
        let factor = std::mem::replace(&mut cost[entering], rat(0));
        for (e, p) in cost.iter_mut().zip(pivot_row.iter()) {
            if !p.is_zero() {
                *e -= &factor * p;
            }
        }
        cost[entering] = rat(0);
    }
}

/// Certifies each generator of the cone as an extreme ray (or not) by
/// testing it against the remaining generators. `limit` bounds the
/// dimension; see [`DEFAULT_EXTREME_RAY_LIMIT`].
pub fn verify_extreme_rays(
    kind: ConeKind,
    n: usize,
    limit: usize,
) -> Result<ExtremeRayReport, Error> {
    if n > limit {
        return Err(Error::ScaleLimitExceeded { n, limit });
    }
    let gens = generators(kind, n)?;
    let mut verdicts = Vec::with_capacity(gens.len());
    for k in 0..gens.len() {
        let rest = gens.without(k);
        let certificate = conic_feasibility(&gens.rows[k], &rest)?;
        verdicts.push(RayVerdict {
            label: gens.labels[k].clone(),
            extreme: !certificate.is_feasible(),
            certificate,
        });
    }
    Ok(ExtremeRayReport { kind, n, verdicts })
}

/// Deterministic pseudo-random stream for reproducible sampling.
///
/// The algorithm is SplitMix64, fixed so golden tests are portable across
/// implementations: the state advances by adding `0x9E3779B97F4A7C15`, and
/// each output mixes the state with xor-shifts and the multipliers
/// `0xBF58476D1CE4E5B9` and `0x94D049BB133111EB`. Coefficients are drawn as
/// `k/64` with `k = next() mod 65`, covering 0 through 1 inclusive.
#[derive(Debug, Clone)]
pub struct SeedStream {
    state: u64,
}

impl SeedStream {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw below `bound` (by modulo; `bound > 0`).
    pub fn next_below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    /// A coefficient `k/64` with `k` drawn from 0..=64.
    pub fn next_coefficient(&mut self) -> Rational {
        Rational::new(BigInt::from(self.next_below(65)), BigInt::from(64))
    }
}

/// One coefficient per generator of `(kind, n)`, drawn from the seeded
/// stream in generator order.
pub fn sample_coefficients(kind: ConeKind, n: usize, seed: u64) -> Result<Vec<Rational>, Error> {
    let count = generators(kind, n)?.len();
    let mut stream = SeedStream::new(seed);
    Ok((0..count).map(|_| stream.next_coefficient()).collect())
}

/// A provably in-cone vector: the conic combination of the cone's
/// generators with seeded nonnegative coefficients. Same seed, same vector.
pub fn sample_in_cone(kind: ConeKind, n: usize, seed: u64) -> Result<ShapeVector, Error> {
    let gens = generators(kind, n)?;
    let coefficients = sample_coefficients(kind, n, seed)?;
    gens.combine(&coefficients)
}

/// A vector just outside the cone: an in-cone sample with one defining
/// inequality pushed exactly 1/1000 past tight. The violated inequality is
/// chosen deterministically from the seed among those applicable at this
/// dimension.
pub fn sample_outside_cone(kind: ConeKind, n: usize, seed: u64) -> Result<ShapeVector, Error> {
    let mut entries = sample_in_cone(kind, n, seed)?.into_entries();
    let mut stream = SeedStream::new(seed ^ 0x5DEE_CE66_D151_DAA3);
    let mut applicable: Vec<PredicateKind> = Vec::new();
    for &pred in kind.defining_predicates() {
        let needed = match pred {
            PredicateKind::Positive => 1,
            PredicateKind::Increasing | PredicateKind::Decreasing => 2,
            _ => 3,
        };
        if n >= needed {
            applicable.push(pred);
        }
    }
    let pred = applicable[stream.next_below(applicable.len() as u64) as usize];
    let bump = ratio(1, 1000);
    match pred {
        PredicateKind::Positive => {
            let i = stream.next_below(n as u64) as usize;
            entries[i] = -bump;
        }
        PredicateKind::Increasing => {
            let i = stream.next_below((n - 1) as u64) as usize;
            entries[i + 1] = &entries[i] - &bump;
        }
        PredicateKind::Decreasing => {
            let i = stream.next_below((n - 1) as u64) as usize;
            entries[i + 1] = &entries[i] + &bump;
        }
        PredicateKind::Convex => {
            // Pull the middle entry up so the second difference at 1-based
            // index i+1 becomes exactly -1/1000.
            let i = 1 + stream.next_below((n - 2) as u64) as usize;
            entries[i] = (&entries[i - 1] + &entries[i + 1] + bump) / rat(2);
        }
        PredicateKind::Concave => {
            let i = 1 + stream.next_below((n - 2) as u64) as usize;
            entries[i] = (&entries[i - 1] + &entries[i + 1] - bump) / rat(2);
        }
        PredicateKind::Unimodal | PredicateKind::LogConcave => {
            unreachable!("not a defining predicate of any cone")
        }
    }
    ShapeVector::new(entries)
}

/// Membership by the defining inequalities alone, independent of every
/// decomposition and solver route.
pub fn brute_force_membership(v: &ShapeVector, kind: ConeKind) -> bool {
    let zero = rat(0);
    kind.defining_predicates()
        .iter()
        .all(|&pred| evaluate(v, pred, &zero).holds())
}
