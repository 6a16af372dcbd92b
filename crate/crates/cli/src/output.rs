//! Deterministic renderings: JSON and CSV with exact `p/q` entries, plus the
//! common-denominator display that factors a matrix as `(1/d) * [integers]`.

use num_bigint::BigInt;
use serde_json::json;

use shapecones::decompose::{
    CertificateWitness, ConvexCanonicalForm, Decomposition, MembershipCertificate,
};
use shapecones::exactnum::{RMatrix, Rational};
use shapecones::matrices::{common_denominator, format_rational};
use shapecones::shapes::{PredicateKind, PredicateOutcome, ShapeReport};
use shapecones::GeneratorSet;

fn scaled_entry(value: &Rational, denominator: &BigInt) -> String {
    let scaled = value * Rational::from_integer(denominator.clone());
    debug_assert!(scaled.is_integer());
    scaled.numer().to_string()
}

fn row_strings(row: &[Rational], denominator: Option<&BigInt>) -> Vec<String> {
    match denominator {
        None => row.iter().map(format_rational).collect(),
        Some(d) => row.iter().map(|e| scaled_entry(e, d)).collect(),
    }
}

pub fn matrix_json(a: &RMatrix, with_denominator: bool) -> String {
    if !with_denominator {
        return shapecones::matrices::matrix_to_json(a);
    }
    let d = common_denominator(a);
    let rows: Vec<Vec<String>> = a.rows().map(|row| row_strings(row, Some(&d))).collect();
    json!({ "denominator": d.to_string(), "n": a.n_cols(), "rows": rows }).to_string()
}

pub fn matrix_csv(a: &RMatrix, with_denominator: bool) -> String {
    if !with_denominator {
        return shapecones::matrices::matrix_to_csv(a);
    }
    let d = common_denominator(a);
    let mut out = format!("denominator,{d}\n");
    for row in a.rows() {
        out.push_str(&row_strings(row, Some(&d)).join(","));
        out.push('\n');
    }
    out
}

pub fn generator_set_json(gens: &GeneratorSet, with_denominator: bool) -> String {
    let denominator = with_denominator.then(|| common_denominator(&gens.matrix()));
    let rows: Vec<Vec<String>> = gens
        .rows
        .iter()
        .map(|row| row_strings(row.entries(), denominator.as_ref()))
        .collect();
    match denominator {
        None => json!({ "n": gens.n, "labels": gens.labels, "rows": rows }).to_string(),
        Some(d) => json!({
            "denominator": d.to_string(),
            "n": gens.n,
            "labels": gens.labels,
            "rows": rows,
        })
        .to_string(),
    }
}

pub fn generator_set_csv(gens: &GeneratorSet, with_denominator: bool) -> String {
    let denominator = with_denominator.then(|| common_denominator(&gens.matrix()));
    let mut out = String::new();
    if let Some(d) = &denominator {
        out.push_str(&format!("denominator,{d}\n"));
    }
    for (label, row) in gens.labels.iter().zip(&gens.rows) {
        out.push_str(label);
        out.push(',');
        out.push_str(&row_strings(row.entries(), denominator.as_ref()).join(","));
        out.push('\n');
    }
    out
}

fn rational_strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

fn canonical_witness_json(form: &ConvexCanonicalForm) -> serde_json::Value {
    json!({
        "type": "canonical",
        "baseline": format_rational(&form.baseline),
        "lambda": rational_strings(&form.lambda),
        "theta": rational_strings(&form.theta),
    })
}

fn decomposition_witness_json(d: &Decomposition) -> serde_json::Value {
    json!({
        "type": "decomposition",
        "labels": d.generator_set().labels,
        "coefficients": rational_strings(&d.coefficients),
    })
}

pub fn certificate_json(certificate: &MembershipCertificate) -> String {
    let value = match certificate {
        MembershipCertificate::InCone { kind, witness } => {
            let witness = match witness {
                CertificateWitness::Decomposition(d) => decomposition_witness_json(d),
                CertificateWitness::Canonical(form) => canonical_witness_json(form),
            };
            json!({ "verdict": "in_cone", "cone": kind.name(), "witness": witness })
        }
        MembershipCertificate::OutOfCone {
            kind,
            predicate,
            witness,
        } => json!({
            "verdict": "out_of_cone",
            "cone": kind.name(),
            "witness": { "predicate": predicate.name(), "index": witness },
        }),
    };
    value.to_string()
}

fn outcome_json(outcome: PredicateOutcome) -> serde_json::Value {
    match outcome {
        PredicateOutcome::Holds => json!({ "verdict": "holds" }),
        PredicateOutcome::Fails { witness } => {
            json!({ "verdict": "fails", "witness": witness })
        }
        PredicateOutcome::NotApplicable => json!({ "verdict": "not_applicable" }),
    }
}

pub fn report_json(n: usize, report: &ShapeReport) -> String {
    let mut map = serde_json::Map::new();
    map.insert("n".to_string(), json!(n));
    for kind in PredicateKind::ALL {
        map.insert(kind.name().to_string(), outcome_json(report.outcome(kind)));
    }
    serde_json::Value::Object(map).to_string()
}

/// One `label = value` line per coefficient.
pub fn labelled_coefficients(labels: &[String], coefficients: &[Rational]) -> String {
    let mut out = String::new();
    for (label, coefficient) in labels.iter().zip(coefficients) {
        out.push_str(&format!("{label} = {}\n", format_rational(coefficient)));
    }
    out
}

/// The canonical convex form as labelled lines: the baseline on the all-ones
/// vector, then the a and b families.
pub fn canonical_text(form: &ConvexCanonicalForm) -> String {
    let mut out = format!("1 = {}\n", format_rational(&form.baseline));
    for (i, coefficient) in form.lambda.iter().enumerate() {
        out.push_str(&format!("a({}) = {}\n", i + 1, format_rational(coefficient)));
    }
    for (i, coefficient) in form.theta.iter().enumerate() {
        out.push_str(&format!("b({}) = {}\n", i + 1, format_rational(coefficient)));
    }
    out
}
