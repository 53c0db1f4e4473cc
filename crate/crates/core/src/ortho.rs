//! Orthomorphisms: permutations `ψ` with `x ↦ ψ(x) − x` also a permutation.
//!
//! Orthomorphisms are stored as explicit tables over canonical indices of
//! their [`Carrier`], whether they come from a formula or from cycle
//! notation.

use thiserror::Error;

use crate::carrier::Carrier;
use crate::field::{FieldElement, FieldError, FiniteField};
use crate::groups::GroupError;

/// Which admissibility clause a quadratic parameter pair violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdmissibilityClause {
    AIsZero,
    BIsZero,
    AIsOne,
    BIsOne,
    /// `ab` is not a nonzero square.
    ProductNotSquare,
    /// `(a−1)(b−1)` is not a nonzero square.
    ShiftedProductNotSquare,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrthoError {
    #[error("map has {found} entries, carrier has {expected} elements")]
    WrongLength { expected: usize, found: usize },
    #[error("map sends {index} to {value}, which is outside the carrier")]
    OutOfRange { index: u32, value: u32 },
    #[error("not a permutation: {first} and {second} both map to {image}")]
    NotPermutation { first: u32, second: u32, image: u32 },
    #[error("x -> psi(x) - x is not a permutation: {first} and {second} both give {difference}")]
    DifferenceNotPermutation { first: u32, second: u32, difference: u32 },
    #[error("inadmissible quadratic parameters: {0:?}")]
    InadmissiblePair(AdmissibilityClause),
    #[error("element {0} appears more than once in the cycle notation")]
    DuplicateElement(String),
    #[error("cycle notation: {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl From<GroupError> for OrthoError {
    fn from(e: GroupError) -> Self {
        OrthoError::Parse(e.to_string())
    }
}

/// A validated orthomorphism of a finite abelian group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orthomorphism {
    carrier: Carrier,
    map: Vec<u32>,
}

impl Orthomorphism {
    /// Validates `map` (indexed by canonical element index) as an
    /// orthomorphism of `carrier`, reporting a colliding pair on failure.
    pub fn new(carrier: impl Into<Carrier>, map: Vec<u32>) -> Result<Self, OrthoError> {
        let carrier = carrier.into();
        let n = carrier.order();
        if map.len() != n as usize {
            return Err(OrthoError::WrongLength {
                expected: n as usize,
                found: map.len(),
            });
        }
        if let Some((i, &v)) = map.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(OrthoError::OutOfRange {
                index: i as u32,
                value: v,
            });
        }
        if let Some((first, second, image)) = first_collision(n, |x| map[x as usize]) {
            return Err(OrthoError::NotPermutation { first, second, image });
        }
        if let Some((first, second, difference)) = first_collision(n, |x| carrier.sub(map[x as usize], x)) {
            return Err(OrthoError::DifferenceNotPermutation {
                first,
                second,
                difference,
            });
        }
        Ok(Orthomorphism { carrier, map })
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn order(&self) -> u32 {
        self.carrier.order()
    }

    pub fn map(&self) -> &[u32] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.map[x as usize]
    }

    /// `ψ(0) = 0`.
    pub fn is_canonical(&self) -> bool {
        self.map[0] == 0
    }

    pub fn fixed_points(&self) -> Vec<u32> {
        (0..self.order()).filter(|&x| self.apply(x) == x).collect()
    }

    pub fn is_involution(&self) -> bool {
        (0..self.order()).all(|x| self.apply(self.apply(x)) == x)
    }

    /// Disjoint-cycle notation with carrier labels, omitting fixed points.
    pub fn to_cycle_notation(&self) -> String {
        let n = self.order() as usize;
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.map[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(self.carrier.label(x as u32));
                x = self.map[x] as usize;
            }
            out.push('(');
            out.push_str(&cycle.join(", "));
            out.push(')');
        }
        out
    }
}

fn first_collision(n: u32, f: impl Fn(u32) -> u32) -> Option<(u32, u32, u32)> {
    let mut preimage = vec![u32::MAX; n as usize];
    for x in 0..n {
        let y = f(x);
        let slot = &mut preimage[y as usize];
        if *slot != u32::MAX {
            return Some((*slot, x, y));
        }
        *slot = x;
    }
    None
}

/// Parameters `(a, b)` of a quadratic orthomorphism that passed the
/// admissibility test: `0 ∉ {a, b, a−1, b−1}` and both `ab` and
/// `(a−1)(b−1)` are nonzero squares. `a = b` is allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticParams {
    field: FiniteField,
    a: FieldElement,
    b: FieldElement,
}

impl QuadraticParams {
    pub fn new(field: &FiniteField, a: FieldElement, b: FieldElement) -> Result<Self, OrthoError> {
        // Mismatched elements are reported before any clause.
        field.chi(a)?;
        field.chi(b)?;
        if let Some(clause) = admissibility_violation(field, a.index(), b.index()) {
            return Err(OrthoError::InadmissiblePair(clause));
        }
        Ok(QuadraticParams {
            field: field.clone(),
            a,
            b,
        })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn a(&self) -> FieldElement {
        self.a
    }

    pub fn b(&self) -> FieldElement {
        self.b
    }

    /// Whether `(a, b)` also satisfies `a ≠ b`, i.e. lies in Σ.
    pub fn in_sigma(&self) -> bool {
        self.a != self.b
    }
}

/// The first violated admissibility clause, if any.
pub fn admissibility_violation(f: &FiniteField, a: u32, b: u32) -> Option<AdmissibilityClause> {
    use AdmissibilityClause::*;
    if a == 0 {
        return Some(AIsZero);
    }
    if b == 0 {
        return Some(BIsZero);
    }
    if a == 1 {
        return Some(AIsOne);
    }
    if b == 1 {
        return Some(BIsOne);
    }
    if f.chi_idx(f.mul_idx(a, b)) != 1 {
        return Some(ProductNotSquare);
    }
    let shifted = f.mul_idx(f.sub_idx(a, 1), f.sub_idx(b, 1));
    if f.chi_idx(shifted) != 1 {
        return Some(ShiftedProductNotSquare);
    }
    None
}

/// `(a, b) ∈ Σ` on canonical indices.
pub fn in_sigma_idx(f: &FiniteField, a: u32, b: u32) -> bool {
    a != b && admissibility_violation(f, a, b).is_none()
}

/// Whether `(a, b)` lies in Σ: `0 ∉ {a, b, a−1, b−1}`, `a ≠ b`, and both
/// `ab` and `(a−1)(b−1)` are squares.
pub fn sigma_membership(f: &FiniteField, a: FieldElement, b: FieldElement) -> Result<bool, FieldError> {
    f.chi(a)?;
    f.chi(b)?;
    Ok(in_sigma_idx(f, a.index(), b.index()))
}

/// The table of `x ↦ ax` on squares (including 0) and `x ↦ bx` on
/// nonsquares, without any admissibility check.
pub fn quadratic_map(f: &FiniteField, a: u32, b: u32) -> Vec<u32> {
    (0..f.order())
        .map(|x| {
            if f.chi_idx(x) >= 0 {
                f.mul_idx(a, x)
            } else {
                f.mul_idx(b, x)
            }
        })
        .collect()
}

pub fn quadratic_orthomorphism(params: &QuadraticParams) -> Orthomorphism {
    let f = &params.field;
    Orthomorphism {
        carrier: Carrier::Field(f.clone()),
        map: quadratic_map(f, params.a.index(), params.b.index()),
    }
}

/// Parses disjoint cycles such as `(1, 2)(3, 5)` or, for groups of rank
/// at least two, the separator-free shorthand `(0_11_04_1)`. Elements not
/// mentioned are fixed. Whitespace and commas separate elements; plain
/// integers denote canonical indices.
pub fn parse_cycles(text: &str, carrier: impl Into<Carrier>) -> Result<Orthomorphism, OrthoError> {
    let carrier = carrier.into();
    let n = carrier.order();
    let chars: Vec<char> = text.chars().collect();
    let is_sep = |c: char| c.is_whitespace() || c == ',';
    let mut map: Vec<u32> = (0..n).collect();
    let mut used = vec![false; n as usize];
    let mut pos = 0usize;
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    loop {
        skip_ws(&mut pos);
        if pos >= chars.len() {
            break;
        }
        if chars[pos] != '(' {
            return Err(OrthoError::Parse(format!(
                "expected '(' at position {pos}, found {:?}",
                chars[pos]
            )));
        }
        pos += 1;
        let mut cycle: Vec<u32> = Vec::new();
        loop {
            while pos < chars.len() && is_sep(chars[pos]) {
                pos += 1;
            }
            match chars.get(pos) {
                None => return Err(OrthoError::Parse("unterminated cycle".into())),
                Some(')') => {
                    pos += 1;
                    break;
                }
                Some(_) => {}
            }
            let (index, next) = read_carrier_element(&carrier, &chars, pos)?;
            pos = next;
            if used[index as usize] {
                return Err(OrthoError::DuplicateElement(carrier.label(index)));
            }
            used[index as usize] = true;
            cycle.push(index);
        }
        for (i, &x) in cycle.iter().enumerate() {
            map[x as usize] = cycle[(i + 1) % cycle.len()];
        }
    }
    Orthomorphism::new(carrier, map)
}

fn read_carrier_element(carrier: &Carrier, chars: &[char], pos: usize) -> Result<(u32, usize), OrthoError> {
    match carrier {
        Carrier::Group(g) if g.rank() > 1 => {
            // Shorthand tokens may be split by layout whitespace.
            let (coords, next) = g.read_element(chars, pos)?;
            let e = g.element(&coords)?;
            Ok((g.index_of(&e)?, next))
        }
        _ => {
            let mut end = pos;
            while end < chars.len() && chars[end].is_ascii_digit() {
                end += 1;
            }
            if end == pos {
                return Err(OrthoError::Parse(format!(
                    "expected an element at position {pos}, found {:?}",
                    chars[pos]
                )));
            }
            let s: String = chars[pos..end].iter().collect();
            let v: u64 = s
                .parse()
                .map_err(|_| OrthoError::Parse(format!("element {s} is too large")))?;
            if v >= carrier.order() as u64 {
                return Err(OrthoError::Parse(format!(
                    "element {v} is outside a carrier of order {}",
                    carrier.order()
                )));
            }
            Ok((v as u32, end))
        }
    }
}
