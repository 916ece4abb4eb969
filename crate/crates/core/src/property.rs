//! The combinatorial non-root condition on Weyl group decompositions and the
//! admissible words built from it.
//!
//! A nontrivial `w` satisfies the condition when it can be written as
//! `w = v w_beta` with `beta` simple, `l(v) < l(w)` and `alpha - beta` not a
//! root for every `alpha` in `Phi_v`. The test uses general root membership
//! (real or imaginary); restricting to real roots gives the same answer,
//! because every `alpha` in `Phi_v` is real and `alpha - beta` could only be
//! a positive root.
//!
//! Checks are bounded by a maximum length: a passing run means "holds up to
//! L", never "holds".

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rayon::prelude::*;

use crate::cartan::CartanMatrix;
use crate::lattice::{is_root, RootVector, WeightVector};
use crate::weyl::{enumerate, format_word, inversion_roots, is_reduced, IntMatrix, WeylElement};
use crate::{Error, Result};

/// Maximum `|Phi_{v_i}|` for the exhaustive subset check (4096 subsets).
pub const SUBSET_CAP: usize = 12;

/// A root `alpha` in `Phi_v` with `alpha - beta` a root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub alpha: RootVector,
    pub alpha_minus_beta: RootVector,
}

/// All violations for one decomposition `w = v w_beta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionViolations {
    pub v: WeylElement,
    pub beta: usize,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementCheck {
    /// The first decomposition (ascending `beta`) with no violation.
    AdmissibleVia { v: WeylElement, beta: usize },
    /// Every decomposition fails; all of them are listed.
    Violations(Vec<DecompositionViolations>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropertyStatus {
    HoldsUpTo(usize),
    FailsAt { element: WeylElement, decompositions: Vec<DecompositionViolations> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub max_length: usize,
    pub status: PropertyStatus,
    /// `(w, beta)` with a violation-free decomposition `w = (w w_beta) w_beta`
    /// for every element checked before the first failure, in shortlex order.
    pub witnesses: Vec<(WeylElement, usize)>,
}

impl PropertyReport {
    pub fn holds(&self) -> bool {
        matches!(self.status, PropertyStatus::HoldsUpTo(_))
    }
}

/// All `(v, beta)` with `beta` a right descent of `w` and `v = w w_beta`,
/// in ascending `beta`.
pub fn decompositions(cm: &CartanMatrix, w: &WeylElement) -> Vec<(WeylElement, usize)> {
    w.right_descents().into_iter().map(|beta| (w.times_generator(cm, beta), beta)).collect()
}

/// Violations of the non-root condition for the pair `(v, beta)`.
pub fn violations_for(cm: &CartanMatrix, v: &WeylElement, beta: usize) -> Vec<Violation> {
    let simple = RootVector::simple(cm.rank(), beta);
    inversion_roots(cm, v.word())
        .into_iter()
        .filter_map(|alpha| {
            let diff = alpha.sub(&simple);
            is_root(cm, &diff).then_some(Violation { alpha, alpha_minus_beta: diff })
        })
        .collect()
}

pub fn check_element(cm: &CartanMatrix, w: &WeylElement) -> Result<ElementCheck> {
    if w.is_identity() {
        return Err(Error::DomainError("the identity has no decomposition".into()));
    }
    let mut failures = Vec::new();
    for (v, beta) in decompositions(cm, w) {
        let violations = violations_for(cm, &v, beta);
        if violations.is_empty() {
            return Ok(ElementCheck::AdmissibleVia { v, beta });
        }
        failures.push(DecompositionViolations { v, beta, violations });
    }
    Ok(ElementCheck::Violations(failures))
}

/// Checks every element of length `1..=max_length`, shell by shell, and
/// stops at the shortlex-first failing element.
pub fn check_property(cm: &CartanMatrix, max_length: usize) -> PropertyReport {
    let mut witnesses = Vec::new();
    for shell in enumerate(cm, max_length).skip(1) {
        let results: Vec<ElementCheck> = shell
            .elements
            .par_iter()
            .map(|w| check_element(cm, w).expect("nontrivial element"))
            .collect();
        for (w, r) in shell.elements.iter().zip(results) {
            match r {
                ElementCheck::AdmissibleVia { beta, .. } => witnesses.push((w.clone(), beta)),
                ElementCheck::Violations(decompositions) => {
                    let status = PropertyStatus::FailsAt { element: w.clone(), decompositions };
                    return PropertyReport { max_length, status, witnesses };
                }
            }
        }
    }
    PropertyReport { max_length, status: PropertyStatus::HoldsUpTo(max_length), witnesses }
}

/// A reduced word `beta_1 ... beta_l` such that `alpha - beta_{i+1}` is never
/// a root for `alpha` in `Phi_{v_i}`, `v_i = w_{beta_1} ... w_{beta_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleWord {
    word: Vec<usize>,
}

impl AdmissibleWord {
    /// Validates the chain condition on an explicit word.
    pub fn new(cm: &CartanMatrix, word: Vec<usize>) -> Result<Self> {
        if !is_reduced(cm, &word) {
            return Err(Error::NotReduced(format_word(&word)));
        }
        if !chain_condition_holds(cm, &word) {
            return Err(Error::NoAdmissibleWord(format!("{} violates the chain condition", format_word(&word))));
        }
        Ok(AdmissibleWord { word })
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

/// Chain condition of an admissible word; assumes `word` is reduced.
pub fn chain_condition_holds(cm: &CartanMatrix, word: &[usize]) -> bool {
    (1..word.len()).all(|i| {
        let beta = RootVector::simple(cm.rank(), word[i]);
        inversion_roots(cm, &word[..i]).iter().all(|alpha| !is_root(cm, &alpha.sub(&beta)))
    })
}

/// Depth-first search over descent choices, building the word from the
/// right with ascending `beta`.
pub fn admissible_word(cm: &CartanMatrix, w: &WeylElement) -> Result<AdmissibleWord> {
    if w.is_identity() {
        return Err(Error::DomainError("the identity has no admissible word".into()));
    }
    let mut failed = HashSet::new();
    match search(cm, w, &mut failed) {
        Some(word) => AdmissibleWord::new(cm, word),
        None => Err(Error::NoAdmissibleWord(format_word(w.word()))),
    }
}

fn search(cm: &CartanMatrix, w: &WeylElement, failed: &mut HashSet<IntMatrix>) -> Option<Vec<usize>> {
    if w.is_identity() {
        return Some(Vec::new());
    }
    if failed.contains(w.key()) {
        return None;
    }
    for (v, beta) in decompositions(cm, w) {
        if !violations_for(cm, &v, beta).is_empty() {
            continue;
        }
        if let Some(mut word) = search(cm, &v, failed) {
            word.push(beta);
            return Some(word);
        }
    }
    failed.insert(w.key().clone());
    None
}

/// True iff `nu_i + nu_j` is not a root for all `i < j`, where
/// `nu_i = w_{beta_l} ... w_{beta_{i+1}} beta_i`.
pub fn verify_commutation_condition(cm: &CartanMatrix, word: &[usize]) -> bool {
    let nus = inversion_roots(cm, word);
    nus.iter()
        .enumerate()
        .all(|(i, a)| nus[i + 1..].iter().all(|b| !is_root(cm, &a.add(b))))
}

/// One failed claim found by [`verify_reduced_word_claims`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClaimCounterexample {
    /// The last parametrized root of `word` does not have its largest
    /// coefficient at the last letter.
    Dominance { word: Vec<usize>, root: RootVector },
    /// Some `alpha` in `Phi_v` has `<alpha, alpha_{i_l}^vee> >= 0`.
    NegativePairing { word: Vec<usize>, alpha: RootVector, pairing: BigInt },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedWordClaimReport {
    pub max_length: usize,
    pub words_checked: usize,
    pub dominance_checks: usize,
    pub pairing_checks: usize,
    pub counterexamples: Vec<ClaimCounterexample>,
}

/// For symmetric matrices with all off-diagonal `|a_ij| >= 2`, checks on every
/// reduced word up to `max_length`:
///
/// 1. the root `w_{i_k} ... w_{i_2} alpha_{i_1}` has `m_{i_k} > m_j` for
///    `j != i_k` (words of length `>= 2`);
/// 2. `<alpha, alpha_{i_l}^vee> < 0` for every `alpha` in `Phi_v`,
///    `v = w_{i_1} ... w_{i_{l-1}}`.
pub fn verify_reduced_word_claims(cm: &CartanMatrix, max_length: usize) -> Result<ReducedWordClaimReport> {
    if !cm.is_symmetric() {
        return Err(Error::HypothesisViolated("the Cartan matrix is not symmetric".into()));
    }
    let r = cm.rank();
    for i in 0..r {
        for j in 0..r {
            if i != j && cm.a(i, j) > -2 {
                return Err(Error::HypothesisViolated(format!("|a_{}{}| = {} < 2", i + 1, j + 1, -cm.a(i, j))));
            }
        }
    }
    let mut report = ReducedWordClaimReport {
        max_length,
        words_checked: 0,
        dominance_checks: 0,
        pairing_checks: 0,
        counterexamples: Vec::new(),
    };
    let mut stack: Vec<(WeylElement, Vec<RootVector>)> = vec![(WeylElement::identity(r), Vec::new())];
    while let Some((w, roots)) = stack.pop() {
        if w.length() == max_length {
            continue;
        }
        // Reverse order so words are visited lexicographically.
        for s in (0..r).rev() {
            if !w.apply_root(&RootVector::simple(r, s)).is_positive() {
                continue;
            }
            let mut child = w.clone();
            child.push_generator(cm, s);
            let word = child.word().to_vec();
            report.words_checked += 1;
            for alpha in &roots {
                report.pairing_checks += 1;
                let pairing = alpha.pair_simple_coroot(cm, s);
                if !pairing.is_negative() {
                    report.counterexamples.push(ClaimCounterexample::NegativePairing {
                        word: word.clone(),
                        alpha: alpha.clone(),
                        pairing,
                    });
                }
            }
            let mut child_roots = Vec::with_capacity(roots.len() + 1);
            child_roots.push(RootVector::simple(r, s));
            child_roots.extend(roots.iter().map(|a| a.reflect(cm, s)));
            if word.len() >= 2 {
                report.dominance_checks += 1;
                let root = child_roots.last().expect("nonempty");
                let top = &root.0[s];
                if root.0.iter().enumerate().any(|(j, m)| j != s && m >= top) {
                    report.counterexamples.push(ClaimCounterexample::Dominance { word, root: root.clone() });
                }
            }
            stack.push((child, child_roots));
        }
    }
    Ok(report)
}

/// Result of the exhaustive subset inequality check on one admissible word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetInequalityReport {
    pub checks: usize,
    /// Smallest value of the pairing over all prefixes and subsets.
    pub minimum: Option<BigRational>,
    pub failures: usize,
}

/// For `lambda` strictly dominant, checks
/// `<v_i^{-1}(lambda + rho) + sum_{alpha in S} alpha, beta_{i+1}^vee> > 1`
/// for every prefix `v_i` (`1 <= i < l`) and every subset `S` of `Phi_{v_i}`.
pub fn verify_subset_inequality(
    cm: &CartanMatrix,
    word: &AdmissibleWord,
    lambda: &WeightVector,
) -> Result<SubsetInequalityReport> {
    if !lambda.is_strictly_dominant() {
        return Err(Error::NotDominant("lambda must have all coroot pairings positive".into()));
    }
    let shifted = lambda.add(&WeightVector::rho(cm.rank()));
    let letters = word.word();
    let mut report = SubsetInequalityReport { checks: 0, minimum: None, failures: 0 };
    let one = BigRational::one();
    for i in 1..letters.len() {
        let next = letters[i];
        // v_i^{-1} = w_{beta_i} ... w_{beta_1}: apply beta_1 first.
        let moved = letters[..i].iter().fold(shifted.clone(), |acc, &s| acc.reflect(cm, s));
        let base = moved.0[next].clone();
        let pairings: Vec<BigInt> =
            inversion_roots(cm, &letters[..i]).iter().map(|a| a.pair_simple_coroot(cm, next)).collect();
        if pairings.len() > SUBSET_CAP {
            return Err(Error::CapExceeded {
                cap: SUBSET_CAP,
                what: format!("|Phi_v| = {} for the subset inequality", pairings.len()),
            });
        }
        for mask in 0u32..(1u32 << pairings.len()) {
            let extra: BigInt = pairings
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, p)| p.clone())
                .sum();
            let value = &base + BigRational::from_integer(extra);
            report.checks += 1;
            if value <= one {
                report.failures += 1;
            }
            if report.minimum.as_ref().map_or(true, |m| value < *m) {
                report.minimum = Some(value);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cm(rows: &[&[i64]]) -> CartanMatrix {
        CartanMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn rv(c: &[i64]) -> RootVector {
        RootVector::from_i64s(c)
    }

    #[test]
    fn decomposition_counts() {
        let a2 = cm(&[&[2, -1], &[-1, 2]]);
        let w1 = WeylElement::from_word(&a2, &[0]).unwrap();
        let d = decompositions(&a2, &w1);
        assert_eq!(d.len(), 1);
        assert!(d[0].0.is_identity());
        assert_eq!(d[0].1, 0);
        let w0 = WeylElement::from_word(&a2, &[0, 1, 0]).unwrap();
        assert_eq!(decompositions(&a2, &w0).len(), 2);
        let h = cm(&[&[2, -3], &[-3, 2]]);
        for w in enumerate(&h, 7).skip(1).flat_map(|s| s.elements) {
            assert_eq!(decompositions(&h, &w).len(), 1);
        }
    }

    #[test]
    fn asymmetric_counterexample() {
        let m = cm(&[&[2, -1], &[-5, 2]]);
        let w = WeylElement::from_word(&m, &[1, 0, 1]).unwrap();
        let ElementCheck::Violations(d) = check_element(&m, &w).unwrap() else {
            panic!("expected a violation");
        };
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].beta, 1);
        assert_eq!(d[0].v.word(), &[1, 0]);
        assert_eq!(d[0].violations, vec![Violation { alpha: rv(&[1, 1]), alpha_minus_beta: rv(&[1, 0]) }]);
    }

    #[test]
    fn a2_longest_element_fails_both_ways() {
        let a2 = cm(&[&[2, -1], &[-1, 2]]);
        let w0 = WeylElement::from_word(&a2, &[0, 1, 0]).unwrap();
        let ElementCheck::Violations(d) = check_element(&a2, &w0).unwrap() else {
            panic!("expected violations");
        };
        assert_eq!(d.len(), 2);
        assert!(d.iter().all(|x| !x.violations.is_empty()));
        assert!(matches!(admissible_word(&a2, &w0), Err(Error::NoAdmissibleWord(_))));
    }

    #[test]
    fn symmetric_hyperbolic_element_is_admissible() {
        let h = cm(&[&[2, -3], &[-3, 2]]);
        let w = WeylElement::from_word(&h, &[0, 1, 0]).unwrap();
        assert!(matches!(check_element(&h, &w).unwrap(), ElementCheck::AdmissibleVia { beta: 0, .. }));
        assert!(matches!(check_element(&h, &WeylElement::identity(2)), Err(Error::DomainError(_))));
    }

    #[test]
    fn property_reports() {
        let m = cm(&[&[2, -1], &[-5, 2]]);
        let report = check_property(&m, 4);
        match report.status {
            PropertyStatus::FailsAt { element, .. } => assert_eq!(element.word(), &[1, 0, 1]),
            other => panic!("unexpected {other:?}"),
        }
        assert!(check_property(&cm(&[&[2, -3], &[-3, 2]]), 12).holds());
        assert!(check_property(&cm(&[&[2, -2], &[-3, 2]]), 12).holds());
    }

    #[test]
    fn admissible_word_examples() {
        let m = cm(&[&[2, -2], &[-3, 2]]);
        let w1 = WeylElement::from_word(&m, &[1]).unwrap();
        assert_eq!(admissible_word(&m, &w1).unwrap().word(), &[1]);
        let w = WeylElement::from_word(&m, &[0, 1, 0, 1]).unwrap();
        assert_eq!(admissible_word(&m, &w).unwrap().word(), &[0, 1, 0, 1]);
        assert!(AdmissibleWord::new(&m, vec![0, 0]).is_err());
    }

    #[test]
    fn commutation_condition() {
        let m = cm(&[&[2, -2], &[-3, 2]]);
        let w = WeylElement::from_word(&m, &[0, 1, 0]).unwrap();
        let adm = admissible_word(&m, &w).unwrap();
        assert!(verify_commutation_condition(&m, adm.word()));
        assert!(verify_commutation_condition(&m, &[0]));
        // A2 negative controls, decided by root membership.
        let a2 = cm(&[&[2, -1], &[-1, 2]]);
        // nu_1 + nu_2 = (alpha1 + alpha2) + alpha2 is not a root.
        assert!(verify_commutation_condition(&a2, &[0, 1]));
        // nu_1 + nu_3 = alpha2 + alpha1 is a root.
        assert!(!verify_commutation_condition(&a2, &[0, 1, 0]));
    }

    #[test]
    fn reduced_word_claims() {
        let h = cm(&[&[2, -3], &[-3, 2]]);
        let report = verify_reduced_word_claims(&h, 10).unwrap();
        assert!(report.counterexamples.is_empty());
        assert_eq!(report.words_checked, 20);
        let t = cm(&[&[2, -2, -2], &[-2, 2, -2], &[-2, -2, 2]]);
        let report = verify_reduced_word_claims(&t, 7).unwrap();
        assert!(report.counterexamples.is_empty());
        assert_eq!(report.words_checked, 3 + 6 + 12 + 24 + 48 + 96 + 192);
        let a2 = cm(&[&[2, -1], &[-1, 2]]);
        assert!(matches!(verify_reduced_word_claims(&a2, 3), Err(Error::HypothesisViolated(_))));
        let asym = cm(&[&[2, -2], &[-3, 2]]);
        assert!(matches!(verify_reduced_word_claims(&asym, 3), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn subset_inequality_on_rank2() {
        let m = cm(&[&[2, -2], &[-3, 2]]);
        let w = WeylElement::from_word(&m, &[0, 1, 0, 1]).unwrap();
        let adm = admissible_word(&m, &w).unwrap();
        let report = verify_subset_inequality(&m, &adm, &WeightVector::rho(2)).unwrap();
        assert_eq!(report.failures, 0);
        assert_eq!(report.checks, 2 + 4 + 8);
        assert!(verify_subset_inequality(&m, &adm, &WeightVector::from_i64s(&[0, 1])).is_err());
    }
}
