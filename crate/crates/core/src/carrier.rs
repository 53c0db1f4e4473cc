//! The additive group an orthomorphism acts on: a field or an abelian group.

use std::fmt;

use crate::field::FiniteField;
use crate::groups::AbelianGroup;

#[derive(Clone, PartialEq, Eq)]
pub enum Carrier {
    Field(FiniteField),
    Group(AbelianGroup),
}

impl fmt::Debug for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Carrier::Field(x) => write!(f, "{x:?}"),
            Carrier::Group(g) => write!(f, "{g:?}"),
        }
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Carrier::Field(x) => write!(f, "{x}"),
            Carrier::Group(g) => write!(f, "{g}"),
        }
    }
}

impl From<FiniteField> for Carrier {
    fn from(f: FiniteField) -> Self {
        Carrier::Field(f)
    }
}

impl From<AbelianGroup> for Carrier {
    fn from(g: AbelianGroup) -> Self {
        Carrier::Group(g)
    }
}

impl Carrier {
    pub fn order(&self) -> u32 {
        match self {
            Carrier::Field(f) => f.order(),
            Carrier::Group(g) => g.order(),
        }
    }

    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        match self {
            Carrier::Field(f) => f.add_idx(x, y),
            Carrier::Group(g) => g.add_idx(x, y),
        }
    }

    #[inline]
    pub fn sub(&self, x: u32, y: u32) -> u32 {
        match self {
            Carrier::Field(f) => f.sub_idx(x, y),
            Carrier::Group(g) => g.sub_idx(x, y),
        }
    }

    #[inline]
    pub fn neg(&self, x: u32) -> u32 {
        match self {
            Carrier::Field(f) => f.neg_idx(x),
            Carrier::Group(g) => g.neg_idx(x),
        }
    }

    pub fn label(&self, x: u32) -> String {
        match self {
            Carrier::Field(f) => f.label_idx(x),
            Carrier::Group(g) => g.label_idx(x),
        }
    }
}
