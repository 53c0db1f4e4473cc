//! Building maximally nonassociative quasigroups of composite order.
//!
//! If `Q` of order `n` is maximally nonassociative and `U` of order
//! `m ≤ n` is idempotent, then for any injection `j: U → Q` and any
//! abelian group `+` on `Q`,
//!
//! ```text
//! (x, u)(y, v) = (xy, u)            if u = v
//!                (x + y + j(u), uv)  if u ≠ v
//! ```
//!
//! is maximally nonassociative of order `nm`. [`build_order`] iterates
//! this from a base quasigroup along a factorisation produced by
//! [`plan_order`].
//!
//! ```
//! use quasimax::construct::build_order;
//!
//! let q = build_order(27).unwrap();
//! assert_eq!(q.count_associative_triples().count, 27);
//! ```

use serde::Serialize;
use thiserror::Error;

use crate::arith::{factorize, is_prime};
use crate::catalog;
use crate::field::FiniteField;
use crate::ortho::{quadratic_map, Orthomorphism};
use crate::quasigroup::{assoc_equation_check, Quasigroup};
use crate::search::{find_a_1mod4, find_a_3mod4, first_general};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("no idempotent quasigroup of order {0} exists")]
    OrderTooSmall(u32),
    #[error("injection sends {first} and {second} to {image}")]
    InjectionNotInjective { first: u32, second: u32, image: u32 },
    #[error("injection has {found} entries, expected {expected}")]
    InjectionLength { expected: usize, found: usize },
    #[error("injection value {value} is outside 0..{order}")]
    InjectionOutOfRange { value: u32, order: u32 },
    #[error("U has order {m}, larger than Q's order {n}")]
    OrderMismatch { n: u32, m: u32 },
    #[error("U is not idempotent")]
    NotIdempotent,
    #[error("order {n} is unsupported: {reason}")]
    UnsupportedOrder { n: u64, reason: UnsupportedReason },
    #[error("{0} is not a supported base order")]
    UnsupportedBase(u64),
    #[error("no verified quasigroup of order {0} was found")]
    BaseNotFound(u64),
}

/// An idempotent quasigroup of order `m = 1` or `m ≥ 3` (none exists for
/// `m = 2`).
///
/// Odd `m`: `x * y = λ(x + y) mod m` with `λ = (m + 1)/2`. Even `m`: the
/// odd square of order `m − 1` prolonged along the transversal
/// `{(i, i + 1)}`.
pub fn idempotent_quasigroup(m: u32) -> Result<Quasigroup, ConstructError> {
    if m == 0 || m == 2 {
        return Err(ConstructError::OrderTooSmall(m));
    }
    let odd = |k: u32| move |x: u32, y: u32| ((x + y) as u64 * (k as u64).div_ceil(2) % k as u64) as u32;
    let q = if m % 2 == 1 {
        Quasigroup::from_fn(m, odd(m))
    } else {
        let k = m - 1;
        let base = odd(k);
        let mut table = vec![0u32; (m * m) as usize];
        let at = |x: u32, y: u32| (x * m + y) as usize;
        for x in 0..k {
            for y in 0..k {
                table[at(x, y)] = base(x, y);
            }
        }
        for i in 0..k {
            let j = (i + 1) % k;
            let s = table[at(i, j)];
            table[at(i, j)] = k;
            table[at(i, k)] = s;
            table[at(k, j)] = s;
        }
        table[at(k, k)] = k;
        Quasigroup::from_table(m, table)
    };
    let q = q.expect("idempotent construction is Latin");
    debug_assert!(q.is_idempotent());
    Ok(q)
}

/// Inputs to the product: `Q`, an idempotent `U` with `|U| ≤ |Q|`, and
/// an injection of `U`'s indices into `Q`'s. The group on `Q`'s index set
/// is `Z_n`.
#[derive(Debug, Clone)]
pub struct ProductSpec<'a> {
    pub q: &'a Quasigroup,
    pub u: &'a Quasigroup,
    pub injection: Vec<u32>,
}

impl<'a> ProductSpec<'a> {
    /// Uses the injection `u ↦ u`.
    pub fn new(q: &'a Quasigroup, u: &'a Quasigroup) -> Self {
        ProductSpec {
            q,
            u,
            injection: (0..u.order()).collect(),
        }
    }

    pub fn with_injection(q: &'a Quasigroup, u: &'a Quasigroup, injection: Vec<u32>) -> Self {
        ProductSpec { q, u, injection }
    }
}

/// The product quasigroup on `Q × U`, with `(x, u)` stored at index
/// `x·m + u`. Maximality of `Q` is the caller's responsibility.
pub fn product_construct(spec: &ProductSpec<'_>) -> Result<Quasigroup, ConstructError> {
    let (q, u, j) = (spec.q, spec.u, &spec.injection);
    let (n, m) = (q.order(), u.order());
    if m > n {
        return Err(ConstructError::OrderMismatch { n, m });
    }
    if !u.is_idempotent() {
        return Err(ConstructError::NotIdempotent);
    }
    if j.len() != m as usize {
        return Err(ConstructError::InjectionLength {
            expected: m as usize,
            found: j.len(),
        });
    }
    let mut preimage = vec![u32::MAX; n as usize];
    for (i, &v) in j.iter().enumerate() {
        if v >= n {
            return Err(ConstructError::InjectionOutOfRange { value: v, order: n });
        }
        if preimage[v as usize] != u32::MAX {
            return Err(ConstructError::InjectionNotInjective {
                first: preimage[v as usize],
                second: i as u32,
                image: v,
            });
        }
        preimage[v as usize] = i as u32;
    }
    let size = n * m;
    let mut table = Vec::with_capacity(size as usize * size as usize);
    for a in 0..size {
        let (x, uu) = (a / m, a % m);
        for b in 0..size {
            let (y, v) = (b / m, b % m);
            let cell = if uu == v {
                q.op(x, y) * m + uu
            } else {
                ((x + y + j[uu as usize]) % n) * m + u.op(uu, v)
            };
            table.push(cell);
        }
    }
    Ok(Quasigroup::from_table(size, table).expect("product of quasigroups is Latin"))
}

/// Orders for which a base quasigroup is built directly.
pub const MERGE_TARGETS: [u64; 13] = [9, 16, 20, 21, 24, 25, 28, 32, 33, 35, 49, 55, 121];

/// Orders with a table among the explicit orthomorphisms.
pub const CATALOG_ORDERS: [u64; 9] = [16, 20, 21, 24, 28, 32, 33, 35, 55];

/// Orders left open by the factorisation argument.
pub const OPEN_EXCEPTIONS: [u64; 12] = [11, 12, 15, 40, 42, 44, 56, 66, 77, 88, 90, 110];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UnsupportedReason {
    TooSmall,
    Step2Failure,
    OpenException,
    TwoPForm,
    F1CreatedBySort,
}

impl std::fmt::Display for UnsupportedReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            UnsupportedReason::TooSmall => "too_small",
            UnsupportedReason::Step2Failure => "step2_failure",
            UnsupportedReason::OpenException => "open_exception",
            UnsupportedReason::TwoPForm => "two_p_form",
            UnsupportedReason::F1CreatedBySort => "f1_created_by_sort",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseSource {
    Catalog,
    PrimeField,
    ExtensionField,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "snake_case")]
pub enum PlanStatus {
    Supported,
    Unsupported(UnsupportedReason),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorPlan {
    pub n: u64,
    /// Weakly decreasing factors after the four steps (empty when the plan
    /// stops early).
    pub factors: Vec<u64>,
    pub base_source: Option<BaseSource>,
    #[serde(flatten)]
    pub status: PlanStatus,
}

impl FactorPlan {
    pub fn is_supported(&self) -> bool {
        self.status == PlanStatus::Supported
    }

    fn unsupported(n: u64, factors: Vec<u64>, reason: UnsupportedReason) -> Self {
        FactorPlan {
            n,
            factors,
            base_source: None,
            status: PlanStatus::Unsupported(reason),
        }
    }
}

/// Where a base of order `f` comes from, if it is a supported base.
pub fn base_source(f: u64) -> Option<BaseSource> {
    if CATALOG_ORDERS.contains(&f) {
        Some(BaseSource::Catalog)
    } else if [9, 25, 49, 121].contains(&f) {
        Some(BaseSource::ExtensionField)
    } else if f > 11 && is_prime(f) {
        Some(BaseSource::PrimeField)
    } else {
        None
    }
}

/// Factorises `n` following the existence argument:
///
/// 1. pair up factors 2 into factors 4;
/// 2. if the largest factor is at most 11, merge two or three factors into
///    the largest available product from [`MERGE_TARGETS`];
/// 3. merge a remaining 2 into the next smallest factor;
/// 4. sort decreasingly.
///
/// The plan is unsupported when step 2 has no option or the largest factor
/// is the one produced in step 3.
///
/// ```
/// use quasimax::construct::{plan_order, PlanStatus, UnsupportedReason};
///
/// assert_eq!(plan_order(54).factors, vec![9, 6]);
/// assert_eq!(plan_order(26).status, PlanStatus::Unsupported(UnsupportedReason::TwoPForm));
/// ```
pub fn plan_order(n: u64) -> FactorPlan {
    if n < 9 {
        return FactorPlan::unsupported(n, Vec::new(), UnsupportedReason::TooSmall);
    }
    let primes = factorize(n);
    let twos = primes.iter().filter(|&&p| p == 2).count();
    let mut factors: Vec<u64> = primes.into_iter().filter(|&p| p != 2).collect();
    factors.extend(std::iter::repeat_n(4, twos / 2));
    if twos % 2 == 1 {
        factors.push(2);
    }
    factors.sort_unstable();

    if factors.last().is_some_and(|&f| f <= 11) {
        let Some(chosen) = best_merge(&factors) else {
            return FactorPlan::unsupported(n, Vec::new(), UnsupportedReason::Step2Failure);
        };
        let product: u64 = chosen.iter().map(|&i| factors[i]).product();
        for &i in chosen.iter().rev() {
            factors.remove(i);
        }
        factors.push(product);
        factors.sort_unstable();
    }

    let mut merged = None;
    if factors.len() > 1 && factors[0] == 2 {
        let combined = 2 * factors[1];
        factors.drain(..2);
        factors.push(combined);
        merged = Some(combined);
    }
    factors.sort_unstable_by(|a, b| b.cmp(a));

    let f1 = factors[0];
    if merged == Some(f1) && factors.iter().filter(|&&f| f == f1).count() == 1 {
        let reason = if OPEN_EXCEPTIONS.contains(&n) {
            UnsupportedReason::OpenException
        } else if is_two_p_form(n) {
            UnsupportedReason::TwoPForm
        } else {
            UnsupportedReason::F1CreatedBySort
        };
        return FactorPlan::unsupported(n, factors, reason);
    }
    match base_source(f1) {
        Some(source) => FactorPlan {
            n,
            factors,
            base_source: Some(source),
            status: PlanStatus::Supported,
        },
        // Not reached for n >= 9: f1 is a prime above 11 or a merge target.
        None => FactorPlan::unsupported(n, factors, UnsupportedReason::F1CreatedBySort),
    }
}

/// `n = 2p` or `n = 2p₁p₂` for odd primes `p₁ ≤ p₂ < 2p₁`.
pub fn is_two_p_form(n: u64) -> bool {
    let f = factorize(n);
    match f.as_slice() {
        [2, p] => *p > 2,
        [2, p1, p2] => *p1 > 2 && p2 < &(2 * p1),
        _ => false,
    }
}

/// Index sets (into the ascending `factors`) of size 2 or 3 whose product
/// lies in [`MERGE_TARGETS`]: the largest product wins, ties go to the
/// lexicographically largest sorted multiset.
fn best_merge(factors: &[u64]) -> Option<Vec<usize>> {
    let k = factors.len();
    let mut best: Option<(u64, Vec<u64>, Vec<usize>)> = None;
    let mut consider = |idx: Vec<usize>| {
        let mut values: Vec<u64> = idx.iter().map(|&i| factors[i]).collect();
        let product: u64 = values.iter().product();
        if !MERGE_TARGETS.contains(&product) {
            return;
        }
        values.sort_unstable_by(|a, b| b.cmp(a));
        let better = match &best {
            None => true,
            Some((p, v, _)) => (product, &values) > (*p, v),
        };
        if better {
            best = Some((product, values, idx));
        }
    };
    for a in 0..k {
        for b in a + 1..k {
            consider(vec![a, b]);
            for c in b + 1..k {
                consider(vec![a, b, c]);
            }
        }
    }
    best.map(|(_, _, idx)| idx)
}

/// A verified base quasigroup and how it was obtained.
#[derive(Debug, Clone)]
pub struct Base {
    pub quasigroup: Quasigroup,
    pub source: BaseSource,
    /// For example `Q_{5,6} over 19` or `catalog Z_21`.
    pub detail: String,
}

/// A verified maximally nonassociative quasigroup of a supported base
/// order: a prime above 11, one of 9, 25, 49, 121, or a catalog order.
pub fn base_quasigroup(f: u64) -> Result<Quasigroup, ConstructError> {
    base_quasigroup_detailed(f).map(|b| b.quasigroup)
}

pub fn base_quasigroup_detailed(f: u64) -> Result<Base, ConstructError> {
    let source = base_source(f).ok_or(ConstructError::UnsupportedBase(f))?;
    if source == BaseSource::Catalog {
        let entry = catalog::entry(f as u32).ok_or(ConstructError::BaseNotFound(f))?;
        let psi = entry.orthomorphism().map_err(|_| ConstructError::BaseNotFound(f))?;
        if !assoc_equation_check(psi).is_ok_and(|v| v.maximal) {
            return Err(ConstructError::BaseNotFound(f));
        }
        return Ok(Base {
            quasigroup: Quasigroup::from_orthomorphism(psi),
            source,
            detail: format!("catalog Z_{}", entry.group().spec_string().replace(',', " x Z_")),
        });
    }
    let field = FiniteField::of_order(f).map_err(|_| ConstructError::UnsupportedBase(f))?;
    let family = if f % 4 == 1 {
        find_a_1mod4(&field)
    } else {
        find_a_3mod4(&field)
    }
    .expect("residue class matches");
    let (a, b) = match family {
        Some(hit) => (hit.a.index(), hit.b.index()),
        None => first_general(&field).ok_or(ConstructError::BaseNotFound(f))?,
    };
    let psi =
        Orthomorphism::new(field.clone(), quadratic_map(&field, a, b)).map_err(|_| ConstructError::BaseNotFound(f))?;
    if !assoc_equation_check(&psi).is_ok_and(|v| v.maximal) {
        return Err(ConstructError::BaseNotFound(f));
    }
    Ok(Base {
        quasigroup: Quasigroup::from_orthomorphism(&psi),
        source,
        detail: format!(
            "Q_{{{},{}}} over {}",
            field.label_idx(a),
            field.label_idx(b),
            field.spec_string()
        ),
    })
}

/// A maximally nonassociative quasigroup of order `n`: the base of order
/// `f₁` multiplied in turn by idempotent quasigroups of orders `f₂, …`.
pub fn build_order(n: u64) -> Result<Quasigroup, ConstructError> {
    build_order_with(n, None)
}

/// As [`build_order`], with an explicit injection for the first product
/// step (later steps use `u ↦ u`).
pub fn build_order_with(n: u64, first_injection: Option<&[u32]>) -> Result<Quasigroup, ConstructError> {
    let plan = plan_order(n);
    if let PlanStatus::Unsupported(reason) = plan.status {
        return Err(ConstructError::UnsupportedOrder { n, reason });
    }
    let mut q = base_quasigroup(plan.factors[0])?;
    for (step, &m) in plan.factors[1..].iter().enumerate() {
        let u = idempotent_quasigroup(m as u32)?;
        let spec = match (step, first_injection) {
            (0, Some(j)) => ProductSpec::with_injection(&q, &u, j.to_vec()),
            _ => ProductSpec::new(&q, &u),
        };
        q = product_construct(&spec)?;
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idempotent_small_orders() {
        assert_eq!(idempotent_quasigroup(2).unwrap_err(), ConstructError::OrderTooSmall(2));
        let q3 = idempotent_quasigroup(3).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(q3.op(x, y), (2 * x + 2 * y) % 3);
            }
        }
        let q5 = idempotent_quasigroup(5).unwrap();
        assert_eq!(q5.op(1, 2), 4);
        let q4 = idempotent_quasigroup(4).unwrap();
        assert!(q4.is_idempotent());
        assert_eq!(q4.to_latin_text(), "0 3 1 2\n2 1 3 0\n3 0 2 1\n1 2 0 3\n");
    }

    #[test]
    fn plan_examples() {
        let p = plan_order(27);
        assert_eq!(p.factors, vec![9, 3]);
        assert_eq!(p.base_source, Some(BaseSource::ExtensionField));
        assert_eq!(plan_order(48).factors, vec![16, 3]);
        assert_eq!(plan_order(78).factors, vec![13, 6]);
        assert_eq!(plan_order(9).factors, vec![9]);
        assert_eq!(plan_order(120).factors, vec![24, 5]);
        assert_eq!(
            plan_order(40).status,
            PlanStatus::Unsupported(UnsupportedReason::OpenException)
        );
        assert_eq!(
            plan_order(26).status,
            PlanStatus::Unsupported(UnsupportedReason::TwoPForm)
        );
        assert_eq!(
            plan_order(8).status,
            PlanStatus::Unsupported(UnsupportedReason::TooSmall)
        );
        assert_eq!(
            plan_order(154).status,
            PlanStatus::Unsupported(UnsupportedReason::Step2Failure)
        );
    }

    #[test]
    fn plan_json() {
        let v = serde_json::to_value(plan_order(40)).unwrap();
        assert_eq!(v["status"], "unsupported");
        assert_eq!(v["reason"], "open_exception");
        let v = serde_json::to_value(plan_order(27)).unwrap();
        assert_eq!(v["status"], "supported");
        assert_eq!(v["factors"], serde_json::json!([9, 3]));
    }

    #[test]
    fn product_errors() {
        let q = idempotent_quasigroup(3).unwrap();
        let u = idempotent_quasigroup(5).unwrap();
        assert_eq!(
            product_construct(&ProductSpec::new(&q, &u)).unwrap_err(),
            ConstructError::OrderMismatch { n: 3, m: 5 }
        );
        let z3 = Quasigroup::from_fn(3, |x, y| (x + y) % 3).unwrap();
        assert_eq!(
            product_construct(&ProductSpec::new(&u, &z3)).unwrap_err(),
            ConstructError::NotIdempotent
        );
        assert_eq!(
            product_construct(&ProductSpec::with_injection(&u, &q, vec![0, 1, 1])).unwrap_err(),
            ConstructError::InjectionNotInjective {
                first: 1,
                second: 2,
                image: 1
            }
        );
        assert!(matches!(
            product_construct(&ProductSpec::with_injection(&u, &q, vec![0, 1])),
            Err(ConstructError::InjectionLength { .. })
        ));
        assert!(matches!(
            product_construct(&ProductSpec::with_injection(&u, &q, vec![0, 1, 9])),
            Err(ConstructError::InjectionOutOfRange { value: 9, order: 5 })
        ));
    }

    #[test]
    fn unsupported_base() {
        assert_eq!(base_quasigroup(11).unwrap_err(), ConstructError::UnsupportedBase(11));
        assert_eq!(base_quasigroup(27).unwrap_err(), ConstructError::UnsupportedBase(27));
        assert!(matches!(
            build_order(40),
            Err(ConstructError::UnsupportedOrder { n: 40, .. })
        ));
    }
}
