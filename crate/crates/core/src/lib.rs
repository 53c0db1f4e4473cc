//! Construction and verification of maximally nonassociative quasigroups.
//!
//! A quasigroup is *maximally nonassociative* when `x·(y·z) = (x·y)·z`
//! holds only for `x = y = z`. This crate builds such quasigroups from
//! quadratic orthomorphisms of finite fields, from explicit orthomorphisms of
//! small abelian groups, and from a product construction, and checks them by
//! several independent methods:
//!
//! | method | cost | module |
//! |---|---|---|
//! | brute-force triple count | `O(n³)` | [`quasigroup`] |
//! | associativity equation on an orthomorphism | `O(n²)` | [`quasigroup`] |
//! | reduced test for quadratic orthomorphisms | `O(q)` | [`quasigroup`] |
//! | closed-form square/nonsquare conditions | `O(1)` | [`charn`] |
//!
//! ```
//! use quasimax::field::FiniteField;
//! use quasimax::ortho::{quadratic_orthomorphism, QuadraticParams};
//! use quasimax::quasigroup::Quasigroup;
//!
//! let f = FiniteField::prime(17).unwrap();
//! let params = QuadraticParams::new(&f, f.element(4), f.element(8)).unwrap();
//! let q = Quasigroup::from_orthomorphism(&quadratic_orthomorphism(&params));
//! assert_eq!(q.count_associative_triples().count, 17);
//! ```

pub mod arith;
pub mod carrier;
pub mod catalog;
pub mod charn;
pub mod construct;
pub mod field;
pub mod groups;
pub mod ortho;
pub mod quasigroup;
pub mod search;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/orthomorphisms.md")]
    mod orthomorphisms {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/conditions.md")]
    mod conditions {}
    #[doc = include_str!("../../../book/src/weil.md")]
    mod weil {}
    #[doc = include_str!("../../../book/src/products.md")]
    mod products {}
    #[doc = include_str!("../../../book/src/catalog.md")]
    mod catalog {}
}
