//! Closed-form maximality test for `Q_{a,b}` by square/nonsquare conditions.
//!
//! For `(a, b) ∈ Σ` the quasigroup `Q_{a,b}` is maximally nonassociative
//! exactly when nine conditions hold for `(a, b)` and again for `(b, a)`.
//! Each condition is a disjunction of quadratic-character tests on
//! polynomials in `a` and `b`, so the check costs a handful of field
//! operations.
//!
//! ```
//! use quasimax::charn::theorem_check;
//! use quasimax::field::FiniteField;
//!
//! let f = FiniteField::prime(79).unwrap();
//! let report = theorem_check(&f, f.element(10), f.element(26)).unwrap();
//! assert!(report.overall);
//! ```

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::field::{FieldElement, FieldError, FiniteField};
use crate::ortho::in_sigma_idx;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharnError {
    #[error("({a}, {b}) is not in Sigma")]
    NotInSigma { a: String, b: String },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// How "square" is read inside the conditions.
///
/// Both readings give the same verdict on Σ; the default counts zero as a
/// square.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum SquareReading {
    #[default]
    IncludeZero,
    NonzeroOnly,
}

/// `μ = b²−2b+a`, `ν = a²−2a+b`, `σ = a²b−a²−ab+b`, `τ = a²b−ab−a+b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DerivedQuantities {
    pub mu: FieldElement,
    pub nu: FieldElement,
    pub sigma: FieldElement,
    pub tau: FieldElement,
}

pub fn derived_quantities(f: &FiniteField, a: FieldElement, b: FieldElement) -> Result<DerivedQuantities, FieldError> {
    f.chi(a)?;
    f.chi(b)?;
    let [mu, nu, sigma, tau] = derived_idx(f, a.index(), b.index());
    let e = |i| f.from_index(i).expect("index in range");
    Ok(DerivedQuantities {
        mu: e(mu),
        nu: e(nu),
        sigma: e(sigma),
        tau: e(tau),
    })
}

fn derived_idx(f: &FiniteField, a: u32, b: u32) -> [u32; 4] {
    let (add, sub, mul) = (|x, y| f.add_idx(x, y), |x, y| f.sub_idx(x, y), |x, y| f.mul_idx(x, y));
    let two = f.int_idx(2);
    let a2 = mul(a, a);
    let b2 = mul(b, b);
    let ab = mul(a, b);
    let a2b = mul(a2, b);
    let mu = add(sub(b2, mul(two, b)), a);
    let nu = add(sub(a2, mul(two, a)), b);
    let sigma = add(sub(sub(a2b, a2), ab), b);
    let tau = add(sub(sub(a2b, ab), a), b);
    [mu, nu, sigma, tau]
}

/// Per-pair verdict: conditions (1)–(9), then condition (10) as the
/// conjunction of `swapped`, which holds (1)–(9) for `(b, a)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub conditions: [bool; 10],
    pub swapped: [bool; 9],
    pub overall: bool,
}

impl ConditionReport {
    /// One-based numbers of the failed conditions, with swapped failures
    /// written as `10.k`.
    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = (0..9)
            .filter(|&i| !self.conditions[i])
            .map(|i| (i + 1).to_string())
            .collect();
        out.extend((0..9).filter(|&i| !self.swapped[i]).map(|i| format!("10.{}", i + 1)));
        out
    }
}

/// Evaluates conditions (1)–(9) for `(a, b)` on canonical indices.
pub fn nine_conditions(f: &FiniteField, a: u32, b: u32, reading: SquareReading) -> [bool; 9] {
    let (add, sub, mul) = (|x, y| f.add_idx(x, y), |x, y| f.sub_idx(x, y), |x, y| f.mul_idx(x, y));
    let sq = |x: u32| match reading {
        SquareReading::IncludeZero => f.chi_idx(x) >= 0,
        SquareReading::NonzeroOnly => f.chi_idx(x) == 1,
    };
    // "Nonsquare" is always the negation of the chosen "square".
    let ns = |x: u32| !sq(x);
    let [mu, nu, sigma, tau] = derived_idx(f, a, b);
    let one = 1;
    let two = f.int_idx(2);
    let m1 = f.neg_idx(one);
    let a1 = sub(a, one);
    let b1 = sub(b, one);
    let a2 = mul(a, a);
    let ab = mul(a, b);
    let ab_a_b = add(sub(ab, a), b); // ab − a + b
    let ab_2a_1 = add(sub(ab, mul(two, a)), one); // ab − 2a + 1
    [
        a2 != b || a != sub(mul(two, b), mul(b, b)),
        ns(m1) || ns(a1) || ns(a),
        sq(b) || sq(mul(sub(one, a), sub(a2, b))) || sq(mul(sigma, a1)),
        sq(mul(a, nu)) || sq(sub(one, b)) || sq(mul(a, tau)),
        ns(m1) || sq(mul(mul(sigma, a), b1)) || sq(mul(mul(tau, a), b1)),
        sq(m1) || ns(b1) || ns(mul(ab_a_b, b)),
        sq(mul(sub(b, a2), mu)) || ns(mul(mul(b, mu), ab_2a_1)) || sq(mul(mul(a1, ab_a_b), mu)),
        sq(m1) || sq(a1) || ns(b),
        sq(m1) || sq(a) || sq(mul(ab_2a_1, b1)),
    ]
}

/// Full report on canonical indices; `None` when `(a, b) ∉ Σ`.
pub fn theorem_check_idx(f: &FiniteField, a: u32, b: u32, reading: SquareReading) -> Option<ConditionReport> {
    if !in_sigma_idx(f, a, b) {
        return None;
    }
    let direct = nine_conditions(f, a, b, reading);
    let swapped = nine_conditions(f, b, a, reading);
    let mut conditions = [false; 10];
    conditions[..9].copy_from_slice(&direct);
    conditions[9] = swapped.iter().all(|&c| c);
    Some(ConditionReport {
        overall: conditions.iter().all(|&c| c),
        conditions,
        swapped,
    })
}

/// Whether `Q_{a,b}` is maximally nonassociative, decided by the
/// conditions alone.
pub fn theorem_check(f: &FiniteField, a: FieldElement, b: FieldElement) -> Result<ConditionReport, CharnError> {
    theorem_check_with(f, a, b, SquareReading::default())
}

pub fn theorem_check_with(
    f: &FiniteField,
    a: FieldElement,
    b: FieldElement,
    reading: SquareReading,
) -> Result<ConditionReport, CharnError> {
    f.chi(a)?;
    f.chi(b)?;
    theorem_check_idx(f, a.index(), b.index(), reading).ok_or_else(|| CharnError::NotInSigma {
        a: f.label_idx(a.index()),
        b: f.label_idx(b.index()),
    })
}

/// All of Σ as index pairs, ordered by `a` then `b`.
pub fn enumerate_sigma_idx(f: &FiniteField) -> Vec<(u32, u32)> {
    let q = f.order();
    (0..q)
        .into_par_iter()
        .flat_map_iter(|a| (0..q).filter(move |&b| in_sigma_idx(f, a, b)).map(move |b| (a, b)))
        .collect()
}

pub fn enumerate_sigma(f: &FiniteField) -> Vec<(FieldElement, FieldElement)> {
    let e = |i| f.from_index(i).expect("index in range");
    enumerate_sigma_idx(f).into_iter().map(|(a, b)| (e(a), e(b))).collect()
}

/// JSON-facing report for one pair, including pairs outside Σ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub field: String,
    pub a: String,
    pub b: String,
    pub in_sigma: bool,
    pub conditions: Vec<bool>,
    pub swapped_conditions: Vec<bool>,
    pub overall: bool,
}

pub fn pair_report(f: &FiniteField, a: FieldElement, b: FieldElement) -> Result<PairReport, FieldError> {
    f.chi(a)?;
    f.chi(b)?;
    let report = theorem_check_idx(f, a.index(), b.index(), SquareReading::default());
    Ok(PairReport {
        field: f.spec_string(),
        a: f.label_idx(a.index()),
        b: f.label_idx(b.index()),
        in_sigma: report.is_some(),
        conditions: report.as_ref().map(|r| r.conditions.to_vec()).unwrap_or_default(),
        swapped_conditions: report.as_ref().map(|r| r.swapped.to_vec()).unwrap_or_default(),
        overall: report.map(|r| r.overall).unwrap_or(false),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_values() {
        let f = FiniteField::prime(17).unwrap();
        let d = derived_quantities(&f, f.element(4), f.element(8)).unwrap();
        assert_eq!(d.mu, f.element(1));
        let g = FiniteField::prime(19).unwrap();
        let d = derived_quantities(&g, g.element(5), g.element(6)).unwrap();
        assert_eq!(d.nu, g.element(2));
        for q in [7u64, 13, 23] {
            let f = FiniteField::prime(q).unwrap();
            for a in f.elements() {
                let d = derived_quantities(&f, a, a).unwrap();
                assert_eq!(d.mu, d.nu);
            }
            let one = f.one();
            let d = derived_quantities(&f, one, one).unwrap();
            assert_eq!(d.mu, f.zero());
        }
    }

    #[test]
    fn known_maximal_pairs() {
        let f = FiniteField::prime(17).unwrap();
        assert!(theorem_check(&f, f.element(4), f.element(8)).unwrap().overall);
        let f = FiniteField::prime(79).unwrap();
        assert!(theorem_check(&f, f.element(10), f.element(26)).unwrap().overall);
        let f = FiniteField::prime(19).unwrap();
        assert!(theorem_check(&f, f.element(5), f.element(6)).unwrap().overall);
        let f = FiniteField::prime(37).unwrap();
        assert!(theorem_check(&f, f.element(18), f.element(20)).unwrap().overall);
    }

    #[test]
    fn not_in_sigma() {
        let f = FiniteField::prime(13).unwrap();
        assert!(matches!(
            theorem_check(&f, f.element(4), f.element(4)),
            Err(CharnError::NotInSigma { .. })
        ));
        let r = pair_report(&f, f.element(4), f.element(4)).unwrap();
        assert!(!r.in_sigma && !r.overall && r.conditions.is_empty());
    }

    #[test]
    fn sigma_is_symmetric_and_off_diagonal() {
        for q in [7u64, 11, 13, 17] {
            let f = FiniteField::prime(q).unwrap();
            let sigma = enumerate_sigma_idx(&f);
            for &(a, b) in &sigma {
                assert_ne!(a, b);
                assert!(sigma.binary_search(&(b, a)).is_ok());
            }
        }
    }

    #[test]
    fn failures_listing() {
        let f = FiniteField::prime(13).unwrap();
        for (a, b) in enumerate_sigma(&f) {
            let r = theorem_check(&f, a, b).unwrap();
            assert_eq!(r.failures().is_empty(), r.overall);
        }
    }
}
