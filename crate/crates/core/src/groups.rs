//! Finite abelian groups given as direct products `Z_{n_1} × … × Z_{n_r}`.
//!
//! Elements are coordinate vectors, indexed in lexicographic order with the
//! first coordinate most significant, so index `0` is the identity.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("cyclic factor {0} is invalid (each factor must be at least 2)")]
    InvalidFactor(u64),
    #[error("a group needs at least one cyclic factor")]
    NoFactors,
    #[error("group order is too large")]
    TooLarge,
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("coordinate {value} is out of range for Z_{modulus}")]
    OutOfRange { value: u64, modulus: u32 },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<u32>,
    order: u32,
}

/// An element of a specific abelian group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<u32>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianGroup({self})")
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z_{n}")).collect();
        f.write_str(&parts.join("×"))
    }
}

impl AbelianGroup {
    pub fn new(factors: &[u64]) -> Result<Self, GroupError> {
        if factors.is_empty() {
            return Err(GroupError::NoFactors);
        }
        let mut order: u64 = 1;
        let mut out = Vec::with_capacity(factors.len());
        for &n in factors {
            if n < 2 {
                return Err(GroupError::InvalidFactor(n));
            }
            order = order.checked_mul(n).ok_or(GroupError::TooLarge)?;
            if order > u32::MAX as u64 / 2 {
                return Err(GroupError::TooLarge);
            }
            out.push(n as u32);
        }
        Ok(AbelianGroup {
            factors: out,
            order: order as u32,
        })
    }

    pub fn cyclic(n: u64) -> Result<Self, GroupError> {
        Self::new(&[n])
    }

    /// Parses a comma-separated list of cyclic orders, e.g. `"10,2"`.
    pub fn parse(spec: &str) -> Result<Self, GroupError> {
        let factors = spec
            .split(',')
            .map(|s| {
                let s = s.trim();
                if s.is_empty() || !s.bytes().all(|c| c.is_ascii_digit()) {
                    return Err(GroupError::Parse(format!("malformed group specification {spec:?}")));
                }
                s.parse::<u64>()
                    .map_err(|_| GroupError::Parse(format!("malformed group specification {spec:?}")))
            })
            .collect::<Result<Vec<u64>, _>>()?;
        Self::new(&factors)
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// The comma-separated specification accepted by [`AbelianGroup::parse`].
    pub fn spec_string(&self) -> String {
        let parts: Vec<String> = self.factors.iter().map(|n| n.to_string()).collect();
        parts.join(",")
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.factors.len()],
        }
    }

    pub fn element(&self, coords: &[u64]) -> Result<GroupElement, GroupError> {
        if coords.len() != self.factors.len() {
            return Err(GroupError::GroupMismatch);
        }
        let coords = coords
            .iter()
            .zip(&self.factors)
            .map(|(&c, &n)| {
                if c < n as u64 {
                    Ok(c as u32)
                } else {
                    Err(GroupError::OutOfRange { value: c, modulus: n })
                }
            })
            .collect::<Result<_, _>>()?;
        Ok(GroupElement { coords })
    }

    fn check(&self, x: &GroupElement) -> Result<(), GroupError> {
        if x.coords.len() == self.factors.len() && x.coords.iter().zip(&self.factors).all(|(&c, &n)| c < n) {
            Ok(())
        } else {
            Err(GroupError::GroupMismatch)
        }
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(x)?;
        self.check(y)?;
        let coords = x
            .coords
            .iter()
            .zip(&y.coords)
            .zip(&self.factors)
            .map(|((&a, &b), &n)| (a + b) % n)
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn neg(&self, x: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(x)?;
        let coords = x.coords.iter().zip(&self.factors).map(|(&a, &n)| (n - a) % n).collect();
        Ok(GroupElement { coords })
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement, GroupError> {
        self.add(x, &self.neg(y)?)
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |i| self.element_at(i))
    }

    pub fn index_of(&self, x: &GroupElement) -> Result<u32, GroupError> {
        self.check(x)?;
        Ok(x.coords
            .iter()
            .zip(&self.factors)
            .fold(0u32, |acc, (&c, &n)| acc * n + c))
    }

    pub fn element_at(&self, mut index: u32) -> GroupElement {
        let mut coords = vec![0u32; self.factors.len()];
        for (slot, &n) in coords.iter_mut().zip(&self.factors).rev() {
            *slot = index % n;
            index /= n;
        }
        GroupElement { coords }
    }

    // ---- index layer ----

    #[inline]
    pub fn add_idx(&self, x: u32, y: u32) -> u32 {
        if let [n] = self.factors[..] {
            let s = x + y;
            return if s >= n { s - n } else { s };
        }
        let (mut x, mut y, mut place, mut out) = (x, y, 1u32, 0u32);
        for &n in self.factors.iter().rev() {
            out += ((x % n + y % n) % n) * place;
            x /= n;
            y /= n;
            place *= n;
        }
        out
    }

    #[inline]
    pub fn neg_idx(&self, x: u32) -> u32 {
        let (mut x, mut place, mut out) = (x, 1u32, 0u32);
        for &n in self.factors.iter().rev() {
            out += ((n - x % n) % n) * place;
            x /= n;
            place *= n;
        }
        out
    }

    #[inline]
    pub fn sub_idx(&self, x: u32, y: u32) -> u32 {
        self.add_idx(x, self.neg_idx(y))
    }

    /// Label in the shorthand used for printed orthomorphisms: the plain
    /// integer for cyclic groups, `a_b` for rank 2, `a_{bcd}` for higher rank.
    pub fn label_idx(&self, x: u32) -> String {
        let e = self.element_at(x);
        let c = &e.coords;
        match c.len() {
            1 => c[0].to_string(),
            2 if self.factors[1] <= 10 => format!("{}_{}", c[0], c[1]),
            _ if self.factors[1..].iter().all(|&n| n <= 10) => {
                let tail: String = c[1..].iter().map(|d| d.to_string()).collect();
                format!("{}_{{{}}}", c[0], tail)
            }
            _ => {
                let parts: Vec<String> = c.iter().map(|d| d.to_string()).collect();
                format!("({})", parts.join(","))
            }
        }
    }

    /// Parses one element: a plain integer for cyclic groups, or the
    /// subscript shorthand `a_b` / `a_{bcd}` where the subscript holds one
    /// digit per remaining coordinate.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement, GroupError> {
        let s: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let (coords, end) = self.read_element(&s, 0)?;
        if end != s.len() {
            return Err(GroupError::Parse(format!("trailing input in element {text:?}")));
        }
        self.element(&coords)
    }

    /// Reads one element starting at `pos`, returning its raw coordinates and
    /// the position after it. Used by the cycle-notation parser, where
    /// shorthand elements follow each other without separators.
    pub(crate) fn read_element(&self, s: &[char], mut pos: usize) -> Result<(Vec<u64>, usize), GroupError> {
        let bad = |msg: &str| GroupError::Parse(msg.to_string());
        let start = pos;
        while pos < s.len() && s[pos].is_ascii_digit() {
            pos += 1;
        }
        if start == pos {
            return Err(bad("expected an element"));
        }
        let head: String = s[start..pos].iter().collect();
        let head: u64 = head.parse().map_err(|_| bad("number too large"))?;
        let rank = self.factors.len();
        if rank == 1 {
            return Ok((vec![head], pos));
        }
        if pos >= s.len() || s[pos] != '_' {
            return Err(bad("expected subscript shorthand such as 3_1 or 3_{110}"));
        }
        pos += 1;
        let mut coords = vec![head];
        let braced = pos < s.len() && s[pos] == '{';
        if braced {
            pos += 1;
        }
        for _ in 1..rank {
            match s.get(pos).and_then(|c| c.to_digit(10)) {
                Some(d) => coords.push(d as u64),
                None => return Err(bad("subscript needs one digit per coordinate")),
            }
            pos += 1;
        }
        if braced {
            if s.get(pos) != Some(&'}') {
                return Err(bad("unterminated subscript"));
            }
            pos += 1;
        }
        Ok((coords, pos))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        assert_eq!(AbelianGroup::new(&[21]).unwrap().order(), 21);
        assert_eq!(AbelianGroup::new(&[10, 2]).unwrap().order(), 20);
        assert_eq!(AbelianGroup::new(&[4, 2, 2, 2]).unwrap().order(), 32);
        assert_eq!(AbelianGroup::new(&[4, 1]).unwrap_err(), GroupError::InvalidFactor(1));
        assert_eq!(AbelianGroup::new(&[]).unwrap_err(), GroupError::NoFactors);
        assert_eq!(AbelianGroup::parse("10,2").unwrap().factors(), &[10, 2]);
        assert!(AbelianGroup::parse("10,,2").is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let z21 = AbelianGroup::cyclic(21).unwrap();
        let a = z21.element(&[13]).unwrap();
        let b = z21.element(&[19]).unwrap();
        assert_eq!(z21.add(&a, &b).unwrap(), z21.element(&[11]).unwrap());
        let g = AbelianGroup::new(&[10, 2]).unwrap();
        let x = g.element(&[7, 1]).unwrap();
        let y = g.element(&[4, 1]).unwrap();
        assert_eq!(g.add(&x, &y).unwrap(), g.element(&[1, 0]).unwrap());
        assert_eq!(g.neg(&g.zero()).unwrap(), g.zero());
        assert_eq!(
            g.add(&x, &z21.element(&[1]).unwrap()).unwrap_err(),
            GroupError::GroupMismatch
        );
    }

    #[test]
    fn shorthand_parsing() {
        let g = AbelianGroup::new(&[10, 2]).unwrap();
        assert_eq!(g.parse_element("0_1").unwrap().coords(), &[0, 1]);
        let h = AbelianGroup::new(&[4, 2, 2, 2]).unwrap();
        assert_eq!(h.parse_element("3_{110}").unwrap().coords(), &[3, 1, 1, 0]);
        let z21 = AbelianGroup::cyclic(21).unwrap();
        assert_eq!(z21.parse_element("13").unwrap().coords(), &[13]);
        assert!(matches!(
            z21.parse_element("21"),
            Err(GroupError::OutOfRange { value: 21, .. })
        ));
        assert!(matches!(g.parse_element("3_2"), Err(GroupError::OutOfRange { .. })));
        assert!(matches!(g.parse_element("3"), Err(GroupError::Parse(_))));
        assert!(matches!(h.parse_element("3_{11}"), Err(GroupError::Parse(_))));
        assert!(matches!(g.parse_element("3_1x"), Err(GroupError::Parse(_))));
    }

    #[test]
    fn labels_round_trip() {
        for factors in [&[21u64][..], &[10, 2], &[8, 2], &[4, 2, 2, 2]] {
            let g = AbelianGroup::new(factors).unwrap();
            for i in 0..g.order() {
                let e = g.parse_element(&g.label_idx(i)).unwrap();
                assert_eq!(g.index_of(&e).unwrap(), i);
            }
        }
    }

    #[test]
    fn group_axioms_exhaustive() {
        for factors in [
            &[5u64][..],
            &[4, 2],
            &[3, 3],
            &[2, 2, 2],
            &[4, 2, 2, 2],
            &[8, 2],
            &[7, 3, 3],
        ] {
            let g = AbelianGroup::new(factors).unwrap();
            let n = g.order();
            assert!(n <= 64);
            let elems: Vec<GroupElement> = g.elements().collect();
            let mut seen = elems.clone();
            seen.sort();
            seen.dedup();
            assert_eq!(seen.len(), n as usize);
            for x in 0..n {
                assert_eq!(g.add_idx(x, 0), x);
                assert_eq!(g.add_idx(x, g.neg_idx(x)), 0);
                for y in 0..n {
                    assert_eq!(g.add_idx(x, y), g.add_idx(y, x));
                    // Index layer agrees with the coordinate layer.
                    let xy = g.add(&elems[x as usize], &elems[y as usize]).unwrap();
                    assert_eq!(g.index_of(&xy).unwrap(), g.add_idx(x, y));
                    for z in 0..n {
                        assert_eq!(g.add_idx(g.add_idx(x, y), z), g.add_idx(x, g.add_idx(y, z)));
                    }
                }
            }
        }
    }
}
