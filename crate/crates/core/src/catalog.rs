//! Nine explicit orthomorphisms of small abelian groups giving maximally
//! nonassociative quasigroups of orders 16, 20, 21, 24, 28, 32, 33, 35
//! and 55.
//!
//! The cycle data is compiled in as text and parsed on first use, so a
//! transcription error shows up as a failed validation rather than a
//! silently different table.
//!
//! ```
//! use quasimax::catalog::{entry, CatalogMethod};
//!
//! let e = entry(21).unwrap();
//! assert!(!e.orthomorphism().unwrap().is_involution());
//! assert!(e.verify(CatalogMethod::Equation).maximal);
//! ```

use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::groups::AbelianGroup;
use crate::ortho::{parse_cycles, OrthoError, Orthomorphism};
use crate::quasigroup::{assoc_equation_check, Quasigroup};

const CATALOG_TEXT: &str = include_str!("catalog.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("line {line}: {message}")]
    Header { line: usize, message: String },
    #[error("line {line}: cycle text before any header")]
    Orphan { line: usize },
    #[error("order {order} does not match group {group}")]
    OrderMismatch { order: u32, group: String },
}

#[derive(Debug)]
pub struct CatalogEntry {
    order: u32,
    group: AbelianGroup,
    cycles: String,
    parsed: OnceLock<Result<Orthomorphism, OrthoError>>,
}

impl Clone for CatalogEntry {
    fn clone(&self) -> Self {
        CatalogEntry {
            order: self.order,
            group: self.group.clone(),
            cycles: self.cycles.clone(),
            parsed: OnceLock::new(),
        }
    }
}

impl CatalogEntry {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// The cycle text exactly as stored.
    pub fn cycles(&self) -> &str {
        &self.cycles
    }

    pub fn orthomorphism(&self) -> Result<&Orthomorphism, &OrthoError> {
        self.parsed
            .get_or_init(|| parse_cycles(&self.cycles, self.group.clone()))
            .as_ref()
    }

    pub fn quasigroup(&self) -> Result<Quasigroup, OrthoError> {
        self.orthomorphism()
            .map(Quasigroup::from_orthomorphism)
            .map_err(Clone::clone)
    }

    /// Validates the entry; failures are reported in the result.
    pub fn verify(&self, method: CatalogMethod) -> EntryReport {
        let mut report = EntryReport {
            order: self.order,
            group: self.group.spec_string(),
            method,
            valid: false,
            error: None,
            canonical: false,
            involution: false,
            maximal: false,
            count: None,
            witness: None,
        };
        let psi = match self.orthomorphism() {
            Ok(psi) => psi,
            Err(e) => {
                report.error = Some(e.to_string());
                return report;
            }
        };
        report.valid = true;
        report.canonical = psi.is_canonical();
        report.involution = psi.is_involution();
        match method {
            CatalogMethod::Equation => match assoc_equation_check(psi) {
                Ok(v) => {
                    report.maximal = v.maximal;
                    report.witness = v.witness.map(|(x, y)| vec![x, y]);
                }
                Err(e) => report.error = Some(e.to_string()),
            },
            CatalogMethod::Brute => {
                let r = Quasigroup::from_orthomorphism(psi).count_associative_triples();
                report.maximal = r.is_maximal;
                report.count = Some(r.count);
                report.witness = r.witnesses.first().map(|w| w.to_vec());
            }
        }
        report
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalogMethod {
    /// The associativity equation, `O(n²)`.
    Equation,
    /// The full triple count, `O(n³)`.
    Brute,
}

impl CatalogMethod {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "equation" | "assoc" | "fast" => Some(CatalogMethod::Equation),
            "brute" => Some(CatalogMethod::Brute),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryReport {
    pub order: u32,
    pub group: String,
    pub method: CatalogMethod,
    pub valid: bool,
    pub error: Option<String>,
    pub canonical: bool,
    pub involution: bool,
    pub maximal: bool,
    /// Total associative triples, for the brute-force method.
    pub count: Option<u64>,
    /// `(x, y)` solving the equation, or the first off-diagonal triple.
    pub witness: Option<Vec<u32>>,
}

/// Parses catalog text: `order=<n> group=<factors>` header lines, each
/// followed by cycle lines. `#` starts a comment line.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
    let mut entries: Vec<CatalogEntry> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if trimmed.starts_with("order=") {
            let header = |message: String| CatalogError::Header { line: line_no, message };
            let mut order = None;
            let mut group = None;
            for field in trimmed.split_whitespace() {
                match field.split_once('=') {
                    Some(("order", v)) => {
                        order = Some(v.parse::<u32>().map_err(|_| header(format!("bad order {v:?}")))?)
                    }
                    Some(("group", v)) => group = Some(AbelianGroup::parse(v).map_err(|e| header(e.to_string()))?),
                    _ => return Err(header(format!("unexpected field {field:?}"))),
                }
            }
            let order = order.ok_or_else(|| header("missing order".into()))?;
            let group = group.ok_or_else(|| header("missing group".into()))?;
            if group.order() != order {
                return Err(CatalogError::OrderMismatch {
                    order,
                    group: group.spec_string(),
                });
            }
            entries.push(CatalogEntry {
                order,
                group,
                cycles: String::new(),
                parsed: OnceLock::new(),
            });
        } else {
            let entry = entries.last_mut().ok_or(CatalogError::Orphan { line: line_no })?;
            if !entry.cycles.is_empty() {
                entry.cycles.push('\n');
            }
            entry.cycles.push_str(line);
        }
    }
    Ok(entries)
}

/// The built-in catalog, in increasing order.
pub fn load_catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| parse_catalog(CATALOG_TEXT).expect("built-in catalog parses"))
}

pub fn entry(order: u32) -> Option<&'static CatalogEntry> {
    load_catalog().iter().find(|e| e.order == order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_entries() {
        let orders: Vec<u32> = load_catalog().iter().map(|e| e.order()).collect();
        assert_eq!(orders, vec![16, 20, 21, 24, 28, 32, 33, 35, 55]);
        assert_eq!(entry(32).unwrap().group().factors(), &[4, 2, 2, 2]);
        assert_eq!(entry(21).unwrap().group().factors(), &[21]);
        assert!(entry(17).is_none());
    }

    #[test]
    fn all_entries_parse() {
        for e in load_catalog() {
            let psi = e
                .orthomorphism()
                .unwrap_or_else(|err| panic!("order {}: {err}", e.order()));
            assert!(psi.is_canonical());
        }
    }

    #[test]
    fn involutions() {
        for n in [33, 35, 55] {
            assert!(entry(n).unwrap().orthomorphism().unwrap().is_involution());
        }
        assert!(!entry(21).unwrap().orthomorphism().unwrap().is_involution());
    }

    #[test]
    fn header_errors() {
        assert!(matches!(parse_catalog("(1, 2)"), Err(CatalogError::Orphan { line: 1 })));
        assert!(matches!(
            parse_catalog("order=12 group=5"),
            Err(CatalogError::OrderMismatch { order: 12, .. })
        ));
        assert!(matches!(
            parse_catalog("order=x group=5"),
            Err(CatalogError::Header { line: 1, .. })
        ));
    }
}
