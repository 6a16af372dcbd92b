//! Shape predicates over exact vectors: positive, monotone, convex, concave,
//! unimodal and log-concave, each with a witness index when it fails.

use num_traits::Zero;

use crate::error::Error;
use crate::exactnum::{rat, Rational};

/// Finite sequence of exact rationals, the object every other module
/// classifies or decomposes. Always has at least one entry.
#[allow(clippy::len_without_is_empty)]
#[derive(Clone, PartialEq, Eq)]
pub struct ShapeVector {
    entries: Vec<Rational>,
}

impl std::fmt::Debug for ShapeVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl ShapeVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self, Error> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        Ok(Self { entries })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(entries: &[i64]) -> Result<Self, Error> {
        Self::new(entries.iter().copied().map(rat).collect())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.entries
    }

    /// Entry at a 0-based index.
    pub fn get(&self, index: usize) -> &Rational {
        &self.entries[index]
    }

    pub fn min(&self) -> &Rational {
        self.entries.iter().min().expect("non-empty")
    }

    pub fn max(&self) -> &Rational {
        self.entries.iter().max().expect("non-empty")
    }

    pub fn reversed(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.reverse();
        Self { entries }
    }

    pub fn negated(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// First differences `v[i+1] - v[i]`; empty for a single entry.
    pub fn forward_differences(&self) -> Vec<Rational> {
        self.entries.windows(2).map(|w| &w[1] - &w[0]).collect()
    }

    /// Second differences `v[i+2] - 2 v[i+1] + v[i]`; empty for n <= 2.
    pub fn second_differences(&self) -> Vec<Rational> {
        self.entries
            .windows(3)
            .map(|w| &w[2] - &w[1] - (&w[1] - &w[0]))
            .collect()
    }
}

/// The seven vector shapes this crate decides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PredicateKind {
    Positive,
    Increasing,
    Decreasing,
    Convex,
    Concave,
    Unimodal,
    LogConcave,
}

impl PredicateKind {
    pub const ALL: [PredicateKind; 7] = [
        PredicateKind::Positive,
        PredicateKind::Increasing,
        PredicateKind::Decreasing,
        PredicateKind::Convex,
        PredicateKind::Concave,
        PredicateKind::Unimodal,
        PredicateKind::LogConcave,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PredicateKind::Positive => "positive",
            PredicateKind::Increasing => "increasing",
            PredicateKind::Decreasing => "decreasing",
            PredicateKind::Convex => "convex",
            PredicateKind::Concave => "concave",
            PredicateKind::Unimodal => "unimodal",
            PredicateKind::LogConcave => "log_concave",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == text)
    }
}

impl std::fmt::Display for PredicateKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of one predicate check. Witness indices are 1-based and point at
/// the defining inequality that fails first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PredicateOutcome {
    Holds,
    Fails { witness: usize },
    /// Log-concavity on a vector with a zero or negative entry.
    NotApplicable,
}

impl PredicateOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, PredicateOutcome::Holds)
    }

    pub fn witness(&self) -> Option<usize> {
        match self {
            PredicateOutcome::Fails { witness } => Some(*witness),
            _ => None,
        }
    }
}

/// One outcome per predicate, as the CLI reports them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeReport {
    pub positive: PredicateOutcome,
    pub increasing: PredicateOutcome,
    pub decreasing: PredicateOutcome,
    pub convex: PredicateOutcome,
    pub concave: PredicateOutcome,
    pub unimodal: PredicateOutcome,
    pub log_concave: PredicateOutcome,
}

impl ShapeReport {
    pub fn outcome(&self, kind: PredicateKind) -> PredicateOutcome {
        match kind {
            PredicateKind::Positive => self.positive,
            PredicateKind::Increasing => self.increasing,
            PredicateKind::Decreasing => self.decreasing,
            PredicateKind::Convex => self.convex,
            PredicateKind::Concave => self.concave,
            PredicateKind::Unimodal => self.unimodal,
            PredicateKind::LogConcave => self.log_concave,
        }
    }
}

fn below(value: &Rational, eps: &Rational) -> bool {
    // The defining inequality `value >= 0`, relaxed to `value >= -eps`.
    *value < -eps
}

/// Evaluates one predicate with tolerance `eps >= 0`; every defining
/// inequality `expr >= 0` is relaxed to `expr >= -eps`. With `eps = 0` the
/// check is exact.
pub fn evaluate(v: &ShapeVector, kind: PredicateKind, eps: &Rational) -> PredicateOutcome {
    let entries = v.entries();
    let n = entries.len();
    match kind {
        PredicateKind::Positive => {
            for (i, e) in entries.iter().enumerate() {
                if below(e, eps) {
                    return PredicateOutcome::Fails { witness: i + 1 };
                }
            }
            PredicateOutcome::Holds
        }
        PredicateKind::Increasing => {
            for (i, w) in entries.windows(2).enumerate() {
                if below(&(&w[1] - &w[0]), eps) {
                    return PredicateOutcome::Fails { witness: i + 1 };
                }
            }
            PredicateOutcome::Holds
        }
        PredicateKind::Decreasing => {
            for (i, w) in entries.windows(2).enumerate() {
                if below(&(&w[0] - &w[1]), eps) {
                    return PredicateOutcome::Fails { witness: i + 1 };
                }
            }
            PredicateOutcome::Holds
        }
        PredicateKind::Convex => {
            for (i, w) in entries.windows(3).enumerate() {
                let second = &w[2] - &w[1] - (&w[1] - &w[0]);
                if below(&second, eps) {
                    return PredicateOutcome::Fails { witness: i + 2 };
                }
            }
            PredicateOutcome::Holds
        }
        PredicateKind::Concave => {
            for (i, w) in entries.windows(3).enumerate() {
                let neg_second = &w[1] - &w[0] - (&w[2] - &w[1]);
                if below(&neg_second, eps) {
                    return PredicateOutcome::Fails { witness: i + 2 };
                }
            }
            PredicateOutcome::Holds
        }
        PredicateKind::Unimodal => {
            // Longest increasing prefix, then the rest must be decreasing.
            let mut peak = 0;
            while peak + 1 < n && !below(&(&entries[peak + 1] - &entries[peak]), eps) {
                peak += 1;
            }
            for i in peak..n.saturating_sub(1) {
                if below(&(&entries[i] - &entries[i + 1]), eps) {
                    return PredicateOutcome::Fails { witness: i + 1 };
                }
            }
            PredicateOutcome::Holds
        }
        PredicateKind::LogConcave => {
            if entries.iter().any(|e| *e <= rat(0)) {
                return PredicateOutcome::NotApplicable;
            }
            // Decided multiplicatively: a_i^2 >= a_{i-1} a_{i+1}.
            for (i, w) in entries.windows(3).enumerate() {
                if below(&(&w[1] * &w[1] - &w[0] * &w[2]), eps) {
                    return PredicateOutcome::Fails { witness: i + 2 };
                }
            }
            PredicateOutcome::Holds
        }
    }
}

/// Exact predicate check. Requesting log-concavity of a vector with a zero
/// or negative entry is an error; see [`classify`] for the tolerant variant.
pub fn predicate(v: &ShapeVector, kind: PredicateKind) -> Result<bool, Error> {
    predicate_with_eps(v, kind, &rat(0))
}

/// Predicate check with tolerance; see [`evaluate`].
pub fn predicate_with_eps(v: &ShapeVector, kind: PredicateKind, eps: &Rational) -> Result<bool, Error> {
    match evaluate(v, kind, eps) {
        PredicateOutcome::Holds => Ok(true),
        PredicateOutcome::Fails { .. } => Ok(false),
        PredicateOutcome::NotApplicable => {
            let index = v
                .entries()
                .iter()
                .position(|e| *e <= rat(0))
                .expect("not-applicable implies a non-positive entry");
            Err(Error::NonPositiveEntry { index: index + 1 })
        }
    }
}

/// Evaluates every predicate exactly.
pub fn classify(v: &ShapeVector) -> ShapeReport {
    classify_with_eps(v, &rat(0))
}

/// Evaluates every predicate with tolerance.
pub fn classify_with_eps(v: &ShapeVector, eps: &Rational) -> ShapeReport {
    ShapeReport {
        positive: evaluate(v, PredicateKind::Positive, eps),
        increasing: evaluate(v, PredicateKind::Increasing, eps),
        decreasing: evaluate(v, PredicateKind::Decreasing, eps),
        convex: evaluate(v, PredicateKind::Convex, eps),
        concave: evaluate(v, PredicateKind::Concave, eps),
        unimodal: evaluate(v, PredicateKind::Unimodal, eps),
        log_concave: evaluate(v, PredicateKind::LogConcave, eps),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;
    use proptest::prelude::*;

    fn sv(entries: &[i64]) -> ShapeVector {
        ShapeVector::from_i64(entries).unwrap()
    }

    fn holds(v: &ShapeVector, kind: PredicateKind) -> bool {
        predicate(v, kind).unwrap()
    }

    #[test]
    fn forward_differences_examples() {
        assert_eq!(sv(&[1, 2, 4]).forward_differences(), vec![rat(1), rat(2)]);
        assert_eq!(sv(&[5, 5, 5]).forward_differences(), vec![rat(0), rat(0)]);
        assert_eq!(sv(&[7]).forward_differences(), Vec::<Rational>::new());
        // Quarter-step ramp.
        let ramp = ShapeVector::new(vec![rat(0), ratio(1, 4), ratio(1, 2), ratio(3, 4), rat(1)]).unwrap();
        assert_eq!(ramp.forward_differences(), vec![ratio(1, 4); 4]);
    }

    #[test]
    fn second_differences_examples() {
        assert_eq!(sv(&[0, 1, 0]).second_differences(), vec![rat(-2)]);
        assert_eq!(sv(&[1, 2, 3, 4]).second_differences(), vec![rat(0), rat(0)]);
        assert_eq!(sv(&[1, 2, 2, 1]).second_differences(), vec![rat(-1), rat(-1)]);
        assert_eq!(sv(&[3, 9]).second_differences(), Vec::<Rational>::new());
    }

    #[test]
    fn unimodal_examples() {
        assert!(holds(&sv(&[1, 3, 2]), PredicateKind::Unimodal));
        assert!(!holds(&sv(&[2, 1, 2]), PredicateKind::Unimodal));
        assert_eq!(
            evaluate(&sv(&[2, 1, 2]), PredicateKind::Unimodal, &rat(0)),
            PredicateOutcome::Fails { witness: 2 }
        );
        // Plateaus are allowed on both sides.
        assert!(holds(&sv(&[1, 2, 2, 1, 1]), PredicateKind::Unimodal));
    }

    #[test]
    fn log_concave_examples() {
        assert!(holds(&sv(&[1, 2, 2, 1]), PredicateKind::LogConcave));
        assert!(!holds(&sv(&[1, 1, 3]), PredicateKind::LogConcave));
        assert_eq!(
            predicate(&sv(&[1, 0, 1]), PredicateKind::LogConcave),
            Err(Error::NonPositiveEntry { index: 2 })
        );
    }

    #[test]
    fn concave_tent_generator_row() {
        let v = ShapeVector::new(vec![rat(0), ratio(1, 2), rat(1), ratio(1, 2), rat(0)]).unwrap();
        assert!(holds(&v, PredicateKind::Concave));
        assert!(holds(&v, PredicateKind::Positive));
        assert!(holds(&v, PredicateKind::Unimodal));
    }

    #[test]
    fn classify_null_vector() {
        let report = classify(&sv(&[0, 0, 0]));
        for kind in [
            PredicateKind::Positive,
            PredicateKind::Increasing,
            PredicateKind::Decreasing,
            PredicateKind::Convex,
            PredicateKind::Concave,
            PredicateKind::Unimodal,
        ] {
            assert!(report.outcome(kind).holds(), "{kind}");
        }
        assert_eq!(report.log_concave, PredicateOutcome::NotApplicable);
    }

    #[test]
    fn classify_vee_vector() {
        let report = classify(&sv(&[1, 0, 1]));
        assert!(report.positive.holds());
        assert!(report.convex.holds());
        assert_eq!(report.concave, PredicateOutcome::Fails { witness: 2 });
    }

    #[test]
    fn classify_arch_vector() {
        let report = classify(&sv(&[1, 2, 2, 1]));
        assert!(report.positive.holds());
        assert!(report.concave.holds());
        assert!(report.unimodal.holds());
        assert!(report.log_concave.holds());
        assert_eq!(report.increasing, PredicateOutcome::Fails { witness: 3 });
    }

    #[test]
    fn short_vectors_are_convex_concave_unimodal() {
        for v in [sv(&[4]), sv(&[9, -3])] {
            assert!(holds(&v, PredicateKind::Convex));
            assert!(holds(&v, PredicateKind::Concave));
            assert!(holds(&v, PredicateKind::Unimodal));
        }
        assert!(holds(&sv(&[2]), PredicateKind::Increasing));
        assert!(holds(&sv(&[2]), PredicateKind::Decreasing));
    }

    #[test]
    fn tolerance_relaxes_inequalities() {
        let v = ShapeVector::new(vec![rat(0), ratio(-1, 100), rat(0)]).unwrap();
        assert!(!predicate(&v, PredicateKind::Positive).unwrap());
        assert!(predicate_with_eps(&v, PredicateKind::Positive, &ratio(1, 100)).unwrap());
        assert!(!predicate_with_eps(&v, PredicateKind::Positive, &ratio(1, 200)).unwrap());
    }

    fn arb_vector(max_len: usize) -> impl Strategy<Value = ShapeVector> {
        proptest::collection::vec((-12i64..=12, 1i64..=4), 1..=max_len)
            .prop_map(|pairs| {
                ShapeVector::new(pairs.into_iter().map(|(p, q)| ratio(p, q)).collect()).unwrap()
            })
    }

    proptest! {
        #[test]
        fn concave_iff_negation_convex(v in arb_vector(10)) {
            prop_assert_eq!(
                holds(&v, PredicateKind::Concave),
                holds(&v.negated(), PredicateKind::Convex)
            );
        }

        #[test]
        fn convexity_matches_second_differences(v in arb_vector(10)) {
            let diffs = v.second_differences();
            prop_assert_eq!(holds(&v, PredicateKind::Convex), diffs.iter().all(|d| *d >= rat(0)));
            prop_assert_eq!(holds(&v, PredicateKind::Concave), diffs.iter().all(|d| *d <= rat(0)));
        }

        #[test]
        fn monotone_or_positive_concave_implies_unimodal(v in arb_vector(10)) {
            let increasing = holds(&v, PredicateKind::Increasing);
            let decreasing = holds(&v, PredicateKind::Decreasing);
            let concave = holds(&v, PredicateKind::Concave);
            if increasing || decreasing || concave {
                prop_assert!(holds(&v, PredicateKind::Unimodal));
            }
        }

        #[test]
        fn predicates_invariant_under_positive_scaling(v in arb_vector(8), num in 1i64..=9, den in 1i64..=9) {
            let scale = ratio(num, den);
            let scaled = ShapeVector::new(v.entries().iter().map(|e| e * &scale).collect()).unwrap();
            for kind in PredicateKind::ALL {
                prop_assert_eq!(
                    evaluate(&v, kind, &rat(0)),
                    evaluate(&scaled, kind, &rat(0)),
                    "{}", kind
                );
            }
        }
    }
}
