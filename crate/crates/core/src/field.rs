//! Arithmetic in finite fields `F_q` of odd order `q = p^k`.
//!
//! Elements are identified with their *canonical index*: the coefficient
//! vector `(c_0, …, c_{k-1})` of the residue polynomial (constant term
//! first) is encoded as `c_0 + c_1 p + … + c_{k-1} p^{k-1}`. Enumerating
//! indices `0..q` therefore lists the prime subfield first as `0, 1, …, p-1`,
//! and every "first element such that …" scan in this crate follows this
//! order.
//!
//! Two layers are exposed:
//!
//! * a checked layer on [`FieldElement`] values, which carry the identity of
//!   their field and report [`FieldError::FieldMismatch`] when mixed;
//! * an index layer (`*_idx` methods) on raw `u32` indices, used by the
//!   verification loops.
//!
//! ```
//! use quasimax::field::FiniteField;
//!
//! let f = FiniteField::prime(17).unwrap();
//! let four = f.element(4);
//! assert_eq!(f.inv(four).unwrap(), f.element(13));
//! assert_eq!(f.chi(f.element(3)).unwrap(), -1);
//! ```

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::arith;

/// Prime fields above this order classify squares with Euler's criterion
/// instead of a precomputed table.
pub const SQUARE_TABLE_LIMIT: u32 = 1 << 16;

/// Largest supported order for extension fields (log/exp tables are built).
pub const EXTENSION_ORDER_LIMIT: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("modulus is reducible over Z_{p}")]
    ReducibleModulus { p: u32 },
    #[error("modulus has degree {found}, expected {expected}")]
    WrongDegree { expected: u32, found: u32 },
    #[error("modulus must be monic")]
    NotMonic,
    #[error("extension degree must be at least 2, got {0}")]
    DegreeTooSmall(u32),
    #[error("field order {0} is too large")]
    TooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("coefficient {value} is out of range for Z_{p}")]
    CoefficientOutOfRange { value: u64, p: u32 },
    #[error("index {index} is out of range for a field of order {q}")]
    IndexOutOfRange { index: u64, q: u32 },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Identity of a field: derived from `(p, k, modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldId(u64);

/// An element of a specific finite field, stored as its canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    field: FieldId,
    index: u32,
}

impl FieldElement {
    /// The canonical index of this element.
    pub fn index(self) -> u32 {
        self.index
    }

    pub fn field_id(self) -> FieldId {
        self.field
    }
}

struct LogTables {
    log: Vec<u32>,
    exp: Vec<u32>,
}

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, constant term first, length `k + 1`. `[0, 1]` for prime fields.
    modulus: Vec<u32>,
    id: FieldId,
    squares: Option<Vec<bool>>,
    logs: Option<LogTables>,
    least_nonsquare: u32,
}

/// An immutable, cheaply clonable finite field context.
#[derive(Clone)]
pub struct FiniteField(Arc<Inner>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteField({})", self.spec_string())
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "F_{}", self.0.q)
        } else {
            write!(
                f,
                "F_{} = Z_{}[t]/({})",
                self.0.q,
                self.0.p,
                format_poly(&self.0.modulus)
            )
        }
    }
}

impl FiniteField {
    /// The prime field `F_p` for an odd prime `p`.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p == 2 {
            return Err(FieldError::EvenCharacteristic);
        }
        if !arith::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p > u32::MAX as u64 / 2 {
            return Err(FieldError::TooLarge(p));
        }
        Ok(Self::build(p as u32, 1, vec![0, 1]))
    }

    /// The extension field `F_{p^k}`, `k >= 2`.
    ///
    /// `modulus` lists the coefficients of a monic polynomial of degree `k`,
    /// constant term first. When absent, the smallest monic irreducible is
    /// chosen, comparing coefficient vectors lexicographically with the
    /// constant term most significant.
    pub fn extension(p: u64, k: u32, modulus: Option<&[u32]>) -> Result<Self, FieldError> {
        if p == 2 {
            return Err(FieldError::EvenCharacteristic);
        }
        if !arith::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k < 2 {
            return Err(FieldError::DegreeTooSmall(k));
        }
        let q = (p as u128).pow(k);
        if q > EXTENSION_ORDER_LIMIT as u128 {
            return Err(FieldError::TooLarge(q.min(u64::MAX as u128) as u64));
        }
        let p = p as u32;
        let modulus = match modulus {
            Some(m) => {
                let m = trim(m.to_vec());
                if m.is_empty() || m.len() as u32 - 1 != k {
                    return Err(FieldError::WrongDegree {
                        expected: k,
                        found: m.len().saturating_sub(1) as u32,
                    });
                }
                if let Some(&c) = m.iter().find(|&&c| c >= p) {
                    return Err(FieldError::CoefficientOutOfRange { value: c as u64, p });
                }
                if *m.last().unwrap() != 1 {
                    return Err(FieldError::NotMonic);
                }
                if !is_irreducible(&m, p) {
                    return Err(FieldError::ReducibleModulus { p });
                }
                m
            }
            None => default_modulus(p, k),
        };
        Ok(Self::build(p, k, modulus))
    }

    /// The field of order `q` with the default modulus when `q` is not prime.
    pub fn of_order(q: u64) -> Result<Self, FieldError> {
        match arith::prime_power(q) {
            Some((p, 1)) => Self::prime(p),
            Some((p, k)) => Self::extension(p, k, None),
            None if q.is_multiple_of(2) && q > 0 => Err(FieldError::EvenCharacteristic),
            None => Err(FieldError::NotPrime(q)),
        }
    }

    /// Parses a field specification: `"q"` for a prime `q`, `"p^k"` for an
    /// extension with the default modulus, or `"p^k/c0,c1,…,1"` to pin the
    /// modulus (constant term first).
    pub fn parse(spec: &str) -> Result<Self, FieldError> {
        let spec = spec.trim();
        let bad = || FieldError::Parse(format!("malformed field specification {spec:?}"));
        let (base, modulus) = match spec.split_once('/') {
            Some((b, m)) => (b, Some(m)),
            None => (spec, None),
        };
        let parse_num = |s: &str| -> Result<u64, FieldError> {
            if s.is_empty() || !s.bytes().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            s.parse::<u64>().map_err(|_| bad())
        };
        match base.split_once('^') {
            None => {
                if modulus.is_some() {
                    return Err(bad());
                }
                let q = parse_num(base)?;
                if q != 2 && !arith::is_prime(q) && arith::prime_power(q).is_some() {
                    return Err(FieldError::Parse(format!("{q} is a prime power; write it as p^k")));
                }
                Self::prime(q)
            }
            Some((p, k)) => {
                let p = parse_num(p)?;
                let k = parse_num(k)?;
                let k = u32::try_from(k).map_err(|_| bad())?;
                let coeffs = match modulus {
                    Some(m) => Some(
                        m.split(',')
                            .map(|c| parse_num(c.trim()).and_then(|v| u32::try_from(v).map_err(|_| bad())))
                            .collect::<Result<Vec<u32>, _>>()?,
                    ),
                    None => None,
                };
                if k == 1 && coeffs.is_none() {
                    return Self::prime(p);
                }
                Self::extension(p, k, coeffs.as_deref())
            }
        }
    }

    fn build(p: u32, k: u32, modulus: Vec<u32>) -> Self {
        let q = p.pow(k);
        let id = FieldId(fnv(p, k, &modulus));
        let logs = (k > 1).then(|| build_logs(p, k, q, &modulus));
        let mut inner = Inner {
            p,
            k,
            q,
            modulus,
            id,
            squares: None,
            logs,
            least_nonsquare: 0,
        };
        if k > 1 || q <= SQUARE_TABLE_LIMIT {
            let mut sq = vec![false; q as usize];
            for y in 1..q {
                let y2 = raw_mul(&inner, y, y);
                sq[y2 as usize] = true;
            }
            inner.squares = Some(sq);
        }
        inner.least_nonsquare = (1..q)
            .find(|&x| raw_chi(&inner, x) == -1)
            .expect("every odd-order field has nonsquares");
        FiniteField(Arc::new(inner))
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    /// Monic modulus, constant term first (`[0, 1]` for a prime field).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn id(&self) -> FieldId {
        self.0.id
    }

    /// Canonical specification string accepted by [`FiniteField::parse`].
    pub fn spec_string(&self) -> String {
        if self.0.k == 1 {
            self.0.q.to_string()
        } else {
            let m: Vec<String> = self.0.modulus.iter().map(|c| c.to_string()).collect();
            format!("{}^{}/{}", self.0.p, self.0.k, m.join(","))
        }
    }

    // ---- checked element layer ----

    fn wrap(&self, index: u32) -> FieldElement {
        FieldElement {
            field: self.0.id,
            index,
        }
    }

    fn check(&self, x: FieldElement) -> Result<u32, FieldError> {
        if x.field == self.0.id {
            Ok(x.index)
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// The image of an integer under `Z -> F`.
    pub fn element(&self, n: i64) -> FieldElement {
        self.wrap(n.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn from_index(&self, index: u32) -> Result<FieldElement, FieldError> {
        if index < self.0.q {
            Ok(self.wrap(index))
        } else {
            Err(FieldError::IndexOutOfRange {
                index: index as u64,
                q: self.0.q,
            })
        }
    }

    /// Element from coefficients, constant term first. Missing high
    /// coefficients are zero.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement, FieldError> {
        let (p, k) = (self.0.p, self.0.k as usize);
        let significant = trim(coeffs.to_vec());
        if significant.len() > k {
            return Err(FieldError::WrongDegree {
                expected: self.0.k,
                found: significant.len() as u32,
            });
        }
        let mut index = 0u32;
        for &c in significant.iter().rev() {
            if c >= p {
                return Err(FieldError::CoefficientOutOfRange { value: c as u64, p });
            }
            index = index * p + c;
        }
        Ok(self.wrap(index))
    }

    /// Coefficient vector of length `k`, constant term first.
    pub fn coeffs(&self, x: FieldElement) -> Result<Vec<u32>, FieldError> {
        Ok(self.coeffs_idx(self.check(x)?))
    }

    pub fn coeffs_idx(&self, mut x: u32) -> Vec<u32> {
        let p = self.0.p;
        (0..self.0.k)
            .map(|_| {
                let c = x % p;
                x /= p;
                c
            })
            .collect()
    }

    /// All elements in canonical enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.q).map(move |i| self.wrap(i))
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.wrap(self.add_idx(self.check(x)?, self.check(y)?)))
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.wrap(self.sub_idx(self.check(x)?, self.check(y)?)))
    }

    pub fn neg(&self, x: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.wrap(self.neg_idx(self.check(x)?)))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.wrap(self.mul_idx(self.check(x)?, self.check(y)?)))
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement, FieldError> {
        self.inv_idx(self.check(x)?)
            .map(|i| self.wrap(i))
            .ok_or(FieldError::DivisionByZero)
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement, FieldError> {
        let x = self.check(x)?;
        let yi = self.inv_idx(self.check(y)?).ok_or(FieldError::DivisionByZero)?;
        Ok(self.wrap(self.mul_idx(x, yi)))
    }

    pub fn pow(&self, x: FieldElement, e: u64) -> Result<FieldElement, FieldError> {
        Ok(self.wrap(self.pow_idx(self.check(x)?, e)))
    }

    /// Quadratic character: `0` at zero, `1` on nonzero squares, `-1` on nonsquares.
    pub fn chi(&self, x: FieldElement) -> Result<i8, FieldError> {
        Ok(self.chi_idx(self.check(x)?))
    }

    /// Square indicator on nonzero elements: `0` for squares, `1` for nonsquares.
    pub fn eta(&self, x: FieldElement) -> Result<u8, FieldError> {
        match self.chi_idx(self.check(x)?) {
            0 => Err(FieldError::ZeroArgument),
            1 => Ok(0),
            _ => Ok(1),
        }
    }

    /// First nonsquare in canonical enumeration order.
    pub fn least_nonsquare(&self) -> FieldElement {
        self.wrap(self.0.least_nonsquare)
    }

    pub fn least_nonsquare_idx(&self) -> u32 {
        self.0.least_nonsquare
    }

    /// Whether `-1` is a square, i.e. `q ≡ 1 (mod 4)`.
    pub fn minus_one_is_square(&self) -> bool {
        self.0.q % 4 == 1
    }

    // ---- index layer ----

    #[inline]
    pub fn add_idx(&self, x: u32, y: u32) -> u32 {
        let Inner { p, k, .. } = *self.0;
        if k == 1 {
            let s = x + y;
            if s >= p {
                s - p
            } else {
                s
            }
        } else {
            let (mut x, mut y, mut place, mut out) = (x, y, 1u32, 0u32);
            for _ in 0..k {
                let d = (x % p + y % p) % p;
                out += d * place;
                x /= p;
                y /= p;
                place *= p;
            }
            out
        }
    }

    #[inline]
    pub fn neg_idx(&self, x: u32) -> u32 {
        let Inner { p, k, .. } = *self.0;
        if k == 1 {
            if x == 0 {
                0
            } else {
                p - x
            }
        } else {
            let (mut x, mut place, mut out) = (x, 1u32, 0u32);
            for _ in 0..k {
                let d = (p - x % p) % p;
                out += d * place;
                x /= p;
                place *= p;
            }
            out
        }
    }

    #[inline]
    pub fn sub_idx(&self, x: u32, y: u32) -> u32 {
        if self.0.k == 1 {
            if x >= y {
                x - y
            } else {
                x + self.0.p - y
            }
        } else {
            self.add_idx(x, self.neg_idx(y))
        }
    }

    #[inline]
    pub fn mul_idx(&self, x: u32, y: u32) -> u32 {
        raw_mul(&self.0, x, y)
    }

    pub fn inv_idx(&self, x: u32) -> Option<u32> {
        if x == 0 {
            return None;
        }
        let inner = &*self.0;
        Some(match &inner.logs {
            Some(t) => {
                let n = inner.q - 1;
                t.exp[((n - t.log[x as usize]) % n) as usize]
            }
            None => arith::pow_mod(x as u64, inner.p as u64 - 2, inner.p as u64) as u32,
        })
    }

    pub fn pow_idx(&self, x: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (x, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_idx(acc, base);
            }
            base = self.mul_idx(base, base);
            e >>= 1;
        }
        acc
    }

    #[inline]
    pub fn chi_idx(&self, x: u32) -> i8 {
        raw_chi(&self.0, x)
    }

    /// Element index for the integer `n` under `Z -> F`.
    pub fn int_idx(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    // ---- text ----

    /// Human-readable label: the integer for prime fields, a polynomial in
    /// `t` (highest degree first) for extensions.
    pub fn label_idx(&self, x: u32) -> String {
        if self.0.k == 1 {
            x.to_string()
        } else {
            format_poly(&self.coeffs_idx(x))
        }
    }

    pub fn label(&self, x: FieldElement) -> Result<String, FieldError> {
        Ok(self.label_idx(self.check(x)?))
    }

    /// Parses an element: a (possibly negative) integer denotes its image
    /// under `Z -> F`; a polynomial in `t` such as `1-3t` or `t^3` is
    /// evaluated in the field; `#n` selects the element with canonical
    /// index `n`.
    pub fn parse_element(&self, text: &str) -> Result<FieldElement, FieldError> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || FieldError::Parse(format!("malformed field element {text:?}"));
        if s.is_empty() {
            return Err(bad());
        }
        if let Some(ix) = s.strip_prefix('#') {
            if ix.is_empty() || !ix.bytes().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let ix: u64 = ix.parse().map_err(|_| bad())?;
            let q = self.0.q;
            return u32::try_from(ix)
                .ok()
                .filter(|&i| i < q)
                .map(|i| self.wrap(i))
                .ok_or(FieldError::IndexOutOfRange { index: ix, q });
        }
        let bytes = s.as_bytes();
        let mut pos = 0;
        let mut acc = 0u32;
        let p = self.0.p as u64;
        let read_int = |pos: &mut usize| -> Option<u64> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            if start == *pos {
                None
            } else {
                // Reduce digit by digit so long literals still parse.
                Some(
                    bytes[start..*pos]
                        .iter()
                        .fold(0u64, |v, d| (v * 10 + (d - b'0') as u64) % p),
                )
            }
        };
        let mut first = true;
        while pos < bytes.len() {
            let negative = match bytes[pos] {
                b'+' => {
                    pos += 1;
                    false
                }
                b'-' => {
                    pos += 1;
                    true
                }
                _ if first => false,
                _ => return Err(bad()),
            };
            first = false;
            let coeff = read_int(&mut pos);
            if pos < bytes.len() && bytes[pos] == b'*' {
                if coeff.is_none() {
                    return Err(bad());
                }
                pos += 1;
                if pos >= bytes.len() || bytes[pos] != b't' {
                    return Err(bad());
                }
            }
            let term = if pos < bytes.len() && bytes[pos] == b't' {
                if self.0.k == 1 {
                    return Err(FieldError::Parse(format!(
                        "{text:?}: the indeterminate t is only available in extension fields"
                    )));
                }
                pos += 1;
                let exp = if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    s[start..pos].parse::<u64>().map_err(|_| bad())?
                } else {
                    1
                };
                let t = self.0.p; // index of the residue class of t
                let c = coeff.unwrap_or(1) as u32;
                self.mul_idx(self.int_idx(c as i64), self.pow_idx(t, exp))
            } else {
                match coeff {
                    Some(c) => c as u32,
                    None => return Err(bad()),
                }
            };
            acc = if negative {
                self.sub_idx(acc, term)
            } else {
                self.add_idx(acc, term)
            };
        }
        Ok(self.wrap(acc))
    }
}

#[inline]
fn raw_mul(inner: &Inner, x: u32, y: u32) -> u32 {
    match &inner.logs {
        None => ((x as u64 * y as u64) % inner.p as u64) as u32,
        Some(t) => {
            if x == 0 || y == 0 {
                0
            } else {
                let n = inner.q - 1;
                let s = t.log[x as usize] + t.log[y as usize];
                t.exp[(if s >= n { s - n } else { s }) as usize]
            }
        }
    }
}

#[inline]
fn raw_chi(inner: &Inner, x: u32) -> i8 {
    if x == 0 {
        return 0;
    }
    match &inner.squares {
        Some(sq) => {
            if sq[x as usize] {
                1
            } else {
                -1
            }
        }
        None => {
            let p = inner.p as u64;
            if arith::pow_mod(x as u64, (p - 1) / 2, p) == 1 {
                1
            } else {
                -1
            }
        }
    }
}

fn fnv(p: u32, k: u32, modulus: &[u32]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for w in [p, k].iter().chain(modulus) {
        for b in w.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}

// ---- polynomials over Z_p (coefficient vectors, constant term first) ----

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let p64 = p as u64;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap() % p64;
        if lead != 0 {
            let shift = r.len() - dm;
            for (i, &mc) in m[..dm].iter().enumerate() {
                let sub = lead * mc as u64 % p64;
                r[shift + i] = (r[shift + i] + p64 - sub) % p64;
            }
        }
    }
    trim(r.into_iter().map(|c| (c % p64) as u32).collect())
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p64;
        }
    }
    poly_rem(&prod.into_iter().map(|c| c as u32).collect::<Vec<_>>(), m, p)
}

/// Irreducibility by exhaustive search for a monic divisor of degree `<= k/2`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let k = m.len() - 1;
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push((c % p as u64) as u32);
                c /= p as u64;
            }
            g.push(1);
            if poly_rem(m, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible of degree `k`, comparing `(c_0, …, c_{k-1})`
/// lexicographically with `c_0` most significant.
fn default_modulus(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    for code in 0..count {
        // Most significant digit of `code` is c_0.
        let mut m = vec![0u32; k as usize + 1];
        let mut c = code;
        for i in (0..k as usize).rev() {
            m[i] = (c % p as u64) as u32;
            c /= p as u64;
        }
        m[k as usize] = 1;
        if is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn build_logs(p: u32, k: u32, q: u32, modulus: &[u32]) -> LogTables {
    let to_poly = |mut x: u32| -> Vec<u32> {
        let mut v = Vec::with_capacity(k as usize);
        for _ in 0..k {
            v.push(x % p);
            x /= p;
        }
        trim(v)
    };
    let to_index = |v: &[u32]| v.iter().rev().fold(0u32, |acc, &c| acc * p + c);
    let n = q - 1;
    let primes = arith::distinct_prime_factors(n as u64);
    let pow_poly = |g: &[u32], mut e: u64| -> Vec<u32> {
        let mut acc = vec![1u32];
        let mut base = g.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod(&acc, &base, modulus, p);
            }
            base = poly_mulmod(&base, &base, modulus, p);
            e >>= 1;
        }
        acc
    };
    let generator = (2..q)
        .map(to_poly)
        .find(|g| primes.iter().all(|&r| pow_poly(g, n as u64 / r) != vec![1u32]))
        .expect("the multiplicative group of a finite field is cyclic");
    let mut exp = Vec::with_capacity(n as usize);
    let mut log = vec![0u32; q as usize];
    let mut cur = vec![1u32];
    for e in 0..n {
        let ix = to_index(&cur);
        exp.push(ix);
        log[ix as usize] = e;
        cur = poly_mulmod(&cur, &generator, modulus, p);
    }
    LogTables { log, exp }
}

fn format_poly(coeffs: &[u32]) -> String {
    let mut terms = Vec::new();
    for (deg, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let t = match (deg, c) {
            (0, c) => c.to_string(),
            (1, 1) => "t".to_string(),
            (1, c) => format!("{c}t"),
            (d, 1) => format!("t^{d}"),
            (d, c) => format!("{c}t^{d}"),
        };
        terms.push(t);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}
