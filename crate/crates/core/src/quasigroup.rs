//! Quasigroups as Latin squares, with associative-triple counting and the
//! faster maximality tests for orthomorphism quasigroups.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::carrier::Carrier;
use crate::ortho::{Orthomorphism, QuadraticParams};

/// Witness lists are cut off after this many off-diagonal triples.
pub const DEFAULT_WITNESS_CAP: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuasigroupError {
    #[error("table has {found} entries, expected {expected}")]
    WrongSize { expected: usize, found: usize },
    #[error("entry {value} at ({row}, {col}) is outside 0..{order}")]
    OutOfRange { row: u32, col: u32, value: u32, order: u32 },
    #[error("row {row} repeats {value}")]
    RowRepeat { row: u32, value: u32 },
    #[error("column {col} repeats {value}")]
    ColumnRepeat { col: u32, value: u32 },
    #[error("empty table")]
    Empty,
    #[error("orthomorphism is not canonical (psi(0) != 0)")]
    NotCanonical,
    #[error("parameters are not in Sigma (a = b)")]
    NotInSigma,
    #[error("Latin square text: {0}")]
    Parse(String),
}

/// A finite quasigroup on `0..n`, stored as its full operation table.
///
/// Equality compares tables only; display labels are ignored.
#[derive(Clone)]
pub struct Quasigroup {
    order: u32,
    table: Vec<u32>,
    labels: Option<Carrier>,
}

impl PartialEq for Quasigroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for Quasigroup {}

impl fmt::Debug for Quasigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Quasigroup")
            .field("order", &self.order)
            .field("labels", &self.labels)
            .finish_non_exhaustive()
    }
}

/// Result of the brute-force triple count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleReport {
    pub order: u32,
    pub count: u64,
    pub is_maximal: bool,
    /// Off-diagonal associative triples in lexicographic order.
    pub witnesses: Vec<[u32; 3]>,
    pub truncated: bool,
}

/// Outcome of [`assoc_equation_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EquationVerdict {
    pub maximal: bool,
    /// The first nonzero `(x, y)` solving the associativity equation.
    pub witness: Option<(u32, u32)>,
}

/// Outcome of [`quadratic_fast_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FastVerdict {
    pub maximal: bool,
    /// An associative triple `(y, 0, x)` with `y ≠ 0`.
    pub witness: Option<[u32; 3]>,
}

impl Quasigroup {
    /// Builds a quasigroup from a row-major table, checking the Latin property.
    pub fn from_table(order: u32, table: Vec<u32>) -> Result<Self, QuasigroupError> {
        let n = order as usize;
        if n == 0 {
            return Err(QuasigroupError::Empty);
        }
        if table.len() != n * n {
            return Err(QuasigroupError::WrongSize {
                expected: n * n,
                found: table.len(),
            });
        }
        for (i, &v) in table.iter().enumerate() {
            if v >= order {
                return Err(QuasigroupError::OutOfRange {
                    row: (i / n) as u32,
                    col: (i % n) as u32,
                    value: v,
                    order,
                });
            }
        }
        let mut seen = vec![u32::MAX; n];
        for row in 0..n {
            for col in 0..n {
                let v = table[row * n + col] as usize;
                if seen[v] == row as u32 {
                    return Err(QuasigroupError::RowRepeat {
                        row: row as u32,
                        value: v as u32,
                    });
                }
                seen[v] = row as u32;
            }
        }
        seen.fill(u32::MAX);
        for col in 0..n {
            for row in 0..n {
                let v = table[row * n + col] as usize;
                if seen[v] == col as u32 {
                    return Err(QuasigroupError::ColumnRepeat {
                        col: col as u32,
                        value: v as u32,
                    });
                }
                seen[v] = col as u32;
            }
        }
        Ok(Quasigroup {
            order,
            table,
            labels: None,
        })
    }

    /// Builds `x * y = op(x, y)` on `0..order` and checks the Latin property.
    pub fn from_fn(order: u32, op: impl Fn(u32, u32) -> u32) -> Result<Self, QuasigroupError> {
        let table = (0..order)
            .flat_map(|x| (0..order).map(move |y| (x, y)))
            .map(|(x, y)| op(x, y))
            .collect();
        Self::from_table(order, table)
    }

    /// `x * y = x + ψ(y − x)`.
    pub fn from_orthomorphism(psi: &Orthomorphism) -> Self {
        let c = psi.carrier();
        let n = c.order();
        let mut table = Vec::with_capacity(n as usize * n as usize);
        for x in 0..n {
            for y in 0..n {
                table.push(c.add(x, psi.apply(c.sub(y, x))));
            }
        }
        Quasigroup {
            order: n,
            table,
            labels: Some(c.clone()),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Row-major operation table.
    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn carrier(&self) -> Option<&Carrier> {
        self.labels.as_ref()
    }

    #[inline]
    pub fn op(&self, x: u32, y: u32) -> u32 {
        self.table[x as usize * self.order as usize + y as usize]
    }

    pub fn label(&self, x: u32) -> String {
        match &self.labels {
            Some(c) => c.label(x),
            None => x.to_string(),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        (0..self.order).all(|x| self.op(x, x) == x)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.order).all(|x| (x + 1..self.order).all(|y| self.op(x, y) == self.op(y, x)))
    }

    /// The transposed table.
    pub fn opposite(&self) -> Self {
        let n = self.order as usize;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                table[y * n + x] = self.table[x * n + y];
            }
        }
        Quasigroup {
            order: self.order,
            table,
            labels: self.labels.clone(),
        }
    }

    pub fn count_associative_triples(&self) -> TripleReport {
        self.count_associative_triples_capped(DEFAULT_WITNESS_CAP)
    }

    /// Counts all `(x, y, z)` with `x(yz) = (xy)z` by direct table lookups.
    pub fn count_associative_triples_capped(&self, cap: usize) -> TripleReport {
        let n = self.order;
        let per_x: Vec<(u64, u64, Vec<[u32; 3]>)> = (0..n)
            .into_par_iter()
            .map(|x| {
                let mut count = 0u64;
                let mut off = 0u64;
                let mut wit = Vec::new();
                for y in 0..n {
                    let xy = self.op(x, y);
                    for z in 0..n {
                        if self.op(xy, z) == self.op(x, self.op(y, z)) {
                            count += 1;
                            if !(x == y && y == z) {
                                off += 1;
                                if wit.len() < cap {
                                    wit.push([x, y, z]);
                                }
                            }
                        }
                    }
                }
                (count, off, wit)
            })
            .collect();
        let mut count = 0;
        let mut off = 0;
        let mut witnesses = Vec::new();
        for (c, o, w) in per_x {
            count += c;
            off += o;
            let room = cap - witnesses.len();
            witnesses.extend(w.into_iter().take(room));
        }
        TripleReport {
            order: n,
            count,
            is_maximal: count == n as u64,
            truncated: off > witnesses.len() as u64,
            witnesses,
        }
    }

    /// `n` lines of `n` space-separated entries.
    pub fn to_latin_text(&self) -> String {
        let n = self.order as usize;
        let mut out = String::new();
        for row in self.table.chunks(n) {
            let line: Vec<String> = row.iter().map(u32::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_latin_text(text: &str) -> Result<Self, QuasigroupError> {
        let rows: Vec<Vec<u32>> = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split_whitespace()
                    .map(|t| {
                        t.parse::<u32>()
                            .map_err(|_| QuasigroupError::Parse(format!("bad entry {t:?}")))
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        let n = rows.len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(QuasigroupError::Parse(format!(
                "row {i} has {} entries, expected {n}",
                r.len()
            )));
        }
        Self::from_table(n as u32, rows.concat())
    }
}

/// Decides maximal nonassociativity of the quasigroup of a canonical
/// orthomorphism in `O(n²)` by searching for nonzero `x, y` with
/// `ψ(ψ(x) + y) − ψ(y) = ψ(x + y − ψ(y))`.
pub fn assoc_equation_check(psi: &Orthomorphism) -> Result<EquationVerdict, QuasigroupError> {
    if !psi.is_canonical() {
        return Err(QuasigroupError::NotCanonical);
    }
    let c = psi.carrier();
    let n = c.order();
    let witness = (1..n).into_par_iter().find_map_first(|x| {
        let px = psi.apply(x);
        (1..n)
            .find(|&y| {
                let py = psi.apply(y);
                let lhs = c.sub(psi.apply(c.add(px, y)), py);
                let rhs = psi.apply(c.sub(c.add(x, y), py));
                lhs == rhs
            })
            .map(|y| (x, y))
    });
    Ok(EquationVerdict {
        maximal: witness.is_none(),
        witness,
    })
}

/// The `O(q)` test for `Q_{a,b}` with `a ≠ b`: no nonzero `y` makes
/// `(y, 0, x)` associative for `x = 1` and `x = ζ`, the least nonsquare.
pub fn quadratic_fast_check(params: &QuadraticParams) -> Result<FastVerdict, QuasigroupError> {
    if !params.in_sigma() {
        return Err(QuasigroupError::NotInSigma);
    }
    let f = params.field();
    let (a, b) = (params.a().index(), params.b().index());
    let psi = |t: u32| {
        if f.chi_idx(t) >= 0 {
            f.mul_idx(a, t)
        } else {
            f.mul_idx(b, t)
        }
    };
    let op = |x: u32, y: u32| f.add_idx(x, psi(f.sub_idx(y, x)));
    let zeta = f.least_nonsquare_idx();
    let witness = [1, zeta].into_iter().find_map(|x| {
        let zero_x = op(0, x);
        (1..f.order())
            .into_par_iter()
            .find_first(|&y| op(y, zero_x) == op(op(y, 0), x))
            .map(|y| [y, 0, x])
    });
    Ok(FastVerdict {
        maximal: witness.is_none(),
        witness,
    })
}
