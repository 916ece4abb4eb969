//! JSON certificates for the non-root decomposition check and their
//! independent verification.
//!
//! A `fails_at` certificate lists every decomposition `w = v w_beta` of the
//! failing element together with roots `alpha` in `Phi_v` such that
//! `alpha - beta` is a root. A `holds_up_to` certificate lists one
//! violation-free decomposition for every element of length `1..=L`.
//! Verification re-derives all of this from lattice and Weyl primitives only.
//!
//! Words and simple-root indices are 1-based in JSON. Root coordinates are
//! JSON integers, or decimal strings when they do not fit in 64 bits.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cartan::CartanMatrix;
use crate::lattice::{is_root, RootVector};
use crate::property::{PropertyReport, PropertyStatus};
use crate::weyl::{enumerate, inversion_roots, word_from_one_based, WeylElement};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateStatus {
    HoldsUpTo,
    FailsAt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Decomposition {
    pub v: Vec<usize>,
    pub beta: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertifiedViolation {
    pub decomposition: Decomposition,
    pub alpha: Vec<Value>,
    pub alpha_minus_beta: Vec<Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Witness {
    pub word: Vec<usize>,
    pub beta: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub matrix: Vec<Vec<i64>>,
    pub status: CertificateStatus,
    /// `L` for `holds_up_to`, the length of the failing element otherwise.
    pub length: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<usize>>,
    #[serde(default)]
    pub violations: Vec<CertifiedViolation>,
    #[serde(default)]
    pub witnesses: Vec<Witness>,
}

fn root_to_json(v: &RootVector) -> Vec<Value> {
    v.coords()
        .iter()
        .map(|c| match i64::try_from(c) {
            Ok(n) => Value::from(n),
            Err(_) => Value::from(c.to_string()),
        })
        .collect()
}

fn root_from_json(values: &[Value]) -> Result<RootVector> {
    values
        .iter()
        .map(|v| match v {
            Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| Error::Config(format!("root coordinate {n} is not an integer"))),
            Value::String(s) => s.parse().map_err(|_| Error::Config(format!("root coordinate {s:?} is not an integer"))),
            other => Err(Error::Config(format!("root coordinate {other} is not an integer"))),
        })
        .collect::<Result<_>>()
        .map(RootVector)
}

fn one_based(word: &[usize]) -> Vec<usize> {
    word.iter().map(|s| s + 1).collect()
}

impl Certificate {
    pub fn from_report(cm: &CartanMatrix, report: &PropertyReport) -> Self {
        let witnesses = report
            .witnesses
            .iter()
            .map(|(w, beta)| Witness { word: w.word_one_based(), beta: beta + 1 })
            .collect();
        let matrix = cm.entries().to_vec();
        match &report.status {
            PropertyStatus::HoldsUpTo(l) => Certificate {
                matrix,
                status: CertificateStatus::HoldsUpTo,
                length: *l,
                word: None,
                violations: Vec::new(),
                witnesses,
            },
            PropertyStatus::FailsAt { element, decompositions } => Certificate {
                matrix,
                status: CertificateStatus::FailsAt,
                length: element.length(),
                word: Some(element.word_one_based()),
                violations: decompositions
                    .iter()
                    .flat_map(|d| {
                        d.violations.iter().map(|v| CertifiedViolation {
                            decomposition: Decomposition { v: one_based(d.v.word()), beta: d.beta + 1 },
                            alpha: root_to_json(&v.alpha),
                            alpha_minus_beta: root_to_json(&v.alpha_minus_beta),
                        })
                    })
                    .collect(),
                witnesses,
            },
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("certificate serializes")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| Error::Config(format!("{}: {}", e.path(), e.inner())))
    }
}

/// Outcome of [`verify_certificate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub valid: bool,
    pub status: CertificateStatus,
    pub length: usize,
    pub elements_checked: usize,
    pub problems: Vec<String>,
}

fn element(cm: &CartanMatrix, word: &[usize]) -> Result<WeylElement> {
    WeylElement::from_word(cm, &word_from_one_based(word)?)
}

fn simple_index(cm: &CartanMatrix, beta: usize) -> Result<usize> {
    if beta == 0 || beta > cm.rank() {
        return Err(Error::DimensionMismatch(format!("simple root index {beta} out of range 1..={}", cm.rank())));
    }
    Ok(beta - 1)
}

/// Re-checks a certificate from scratch.
pub fn verify_certificate(cert: &Certificate) -> Result<Verification> {
    let cm = CartanMatrix::new(cert.matrix.clone())?;
    let mut problems = Vec::new();
    let mut checked = 0;
    let mut witness_keys = HashSet::new();
    for w in &cert.witnesses {
        checked += 1;
        let elem = element(&cm, &w.word)?;
        let beta = simple_index(&cm, w.beta)?;
        if !elem.is_right_descent(beta) {
            problems.push(format!("witness {:?}: {} is not a right descent", w.word, w.beta));
            continue;
        }
        let v = elem.times_generator(&cm, beta);
        let simple = RootVector::simple(cm.rank(), beta);
        if let Some(alpha) = inversion_roots(&cm, v.word()).into_iter().find(|a| is_root(&cm, &a.sub(&simple))) {
            problems.push(format!("witness {:?}: alpha = {alpha} gives a root alpha - beta", w.word));
        }
        witness_keys.insert(elem.key().clone());
    }
    match cert.status {
        CertificateStatus::HoldsUpTo => {
            let total: usize = enumerate(&cm, cert.length).skip(1).map(|s| s.elements.len()).sum();
            let in_range = cert.witnesses.iter().all(|w| w.word.len() <= cert.length);
            if witness_keys.len() != total || !in_range {
                problems.push(format!(
                    "witnesses cover {} distinct elements, expected all {total} elements of length 1..={}",
                    witness_keys.len(),
                    cert.length
                ));
            }
        }
        CertificateStatus::FailsAt => {
            let Some(word) = &cert.word else {
                return Err(Error::Config("fails_at certificate without a word".into()));
            };
            let w = element(&cm, word)?;
            checked += 1;
            if w.length() != cert.length {
                problems.push(format!("word length {} differs from stated length {}", w.length(), cert.length));
            }
            let mut covered = BTreeSet::new();
            for viol in &cert.violations {
                let beta = simple_index(&cm, viol.decomposition.beta)?;
                let v = element(&cm, &viol.decomposition.v)?;
                if !w.is_right_descent(beta) || v != w.times_generator(&cm, beta) {
                    problems.push(format!("{:?} w_{} is not a decomposition of w", viol.decomposition.v, viol.decomposition.beta));
                    continue;
                }
                let alpha = root_from_json(&viol.alpha)?;
                let diff = root_from_json(&viol.alpha_minus_beta)?;
                if alpha.rank() != cm.rank() || diff.rank() != cm.rank() {
                    return Err(Error::DimensionMismatch("root vector length differs from the rank".into()));
                }
                if !inversion_roots(&cm, v.word()).contains(&alpha) {
                    problems.push(format!("{alpha} is not in Phi_v for v = {:?}", viol.decomposition.v));
                    continue;
                }
                if diff != alpha.sub(&RootVector::simple(cm.rank(), beta)) || !is_root(&cm, &diff) {
                    problems.push(format!("{diff} is not the root alpha - beta for alpha = {alpha}"));
                    continue;
                }
                covered.insert(beta);
            }
            let descents: BTreeSet<usize> = w.right_descents().into_iter().collect();
            if covered != descents {
                problems.push(format!(
                    "violations cover decompositions {:?} but w has right descents {:?}",
                    covered.iter().map(|b| b + 1).collect::<Vec<_>>(),
                    descents.iter().map(|b| b + 1).collect::<Vec<_>>()
                ));
            }
        }
    }
    Ok(Verification { valid: problems.is_empty(), status: cert.status, length: cert.length, elements_checked: checked, problems })
}
