//! Ordinals below `ω + 1` and `ω² + 1`, and elements of `K × {0, 1}`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which countable lattice `K × {0, 1}` is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `K = ω + 1`: the naturals with a top `ω`.
    Omega,
    /// `K = ω² + 1`: `ℕ ⋉ ℕ` with a top `ω²`.
    OmegaSq,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Omega => "omega",
            Family::OmegaSq => "omega_sq",
        }
    }

    pub fn top_symbol(self) -> &'static str {
        match self {
            Family::Omega => "ω",
            Family::OmegaSq => "ω²",
        }
    }

    /// Number of rows `q` in `q·ω + r` below the top, if finite.
    pub fn rows(self) -> Option<u64> {
        match self {
            Family::Omega => Some(1),
            Family::OmegaSq => None,
        }
    }

    /// Supremum of row `q`: `(q+1)⋉0`, or the top for the last row.
    pub fn row_limit(self, q: u64) -> OrdK {
        match self {
            Family::Omega => OrdK::Top,
            Family::OmegaSq => OrdK::Pair(q + 1, 0),
        }
    }

    pub fn check(self, k: OrdK) -> Result<OrdK> {
        match (self, k) {
            (Family::Omega, OrdK::Pair(q, _)) if q != 0 => Err(Error::FamilyMismatch(format!(
                "{} has no row {q}",
                self.name()
            ))),
            _ => Ok(k),
        }
    }

    /// Limit ordinals of `K`: the top, and `n⋉0` for `n ≥ 1` in `ω² + 1`.
    pub fn is_limit(self, k: OrdK) -> bool {
        match k {
            OrdK::Top => true,
            OrdK::Pair(q, r) => self == Family::OmegaSq && q >= 1 && r == 0,
        }
    }

    pub fn bottom(self) -> SymElem {
        SymElem::new(OrdK::ZERO, 0)
    }

    pub fn top(self) -> SymElem {
        SymElem::new(OrdK::Top, 1)
    }

    /// Renders `k` in the family's notation.
    pub fn show(self, k: OrdK) -> String {
        match (self, k) {
            (_, OrdK::Top) => self.top_symbol().to_string(),
            (Family::Omega, OrdK::Pair(_, r)) => r.to_string(),
            (Family::OmegaSq, OrdK::Pair(q, r)) => format!("{q}⋉{r}"),
        }
    }

    pub fn show_elem(self, e: SymElem) -> String {
        format!("({},{})", self.show(e.ord), e.bit)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `Pair(q, r)` is `q·ω + r`; `Top` is the family's top ordinal. The derived
/// order is the lexicographic order with `Top` above every pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrdK {
    Pair(u64, u64),
    Top,
}

impl OrdK {
    pub const ZERO: OrdK = OrdK::Pair(0, 0);

    pub fn pair(self) -> Option<(u64, u64)> {
        match self {
            OrdK::Pair(q, r) => Some((q, r)),
            OrdK::Top => None,
        }
    }

    pub fn is_top(self) -> bool {
        self == OrdK::Top
    }

    /// Immediate successor within the same row (`Top` has none).
    pub fn succ(self) -> Option<OrdK> {
        self.pair().map(|(q, r)| OrdK::Pair(q, r + 1))
    }

    /// Immediate predecessor, when one exists (limits and `0` have none).
    pub fn pred(self) -> Option<OrdK> {
        match self {
            OrdK::Pair(q, r) if r > 0 => Some(OrdK::Pair(q, r - 1)),
            _ => None,
        }
    }
}

/// An element `(k, bit)` of `K × {0, 1}`, ordered componentwise.
///
/// The derived `Ord` is a total order used for sorting only; use
/// [`SymElem::leq`] for the lattice order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymElem {
    pub ord: OrdK,
    pub bit: u8,
}

impl SymElem {
    pub fn new(ord: OrdK, bit: u8) -> Self {
        debug_assert!(bit <= 1);
        Self { ord, bit }
    }

    pub fn pair(q: u64, r: u64, bit: u8) -> Self {
        Self::new(OrdK::Pair(q, r), bit)
    }

    pub fn top(bit: u8) -> Self {
        Self::new(OrdK::Top, bit)
    }

    pub fn leq(self, other: Self) -> bool {
        self.ord <= other.ord && self.bit <= other.bit
    }

    pub fn meet(self, other: Self) -> Self {
        Self::new(self.ord.min(other.ord), self.bit.min(other.bit))
    }

    pub fn join(self, other: Self) -> Self {
        Self::new(self.ord.max(other.ord), self.bit.max(other.bit))
    }

    pub fn partial_cmp_lattice(self, other: Self) -> Option<Ordering> {
        match (self.leq(other), other.leq(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}

/// The lattice `K × {0, 1}` of a given family, with family-checked operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymLattice {
    pub family: Family,
}

impl SymLattice {
    pub fn new(family: Family) -> Self {
        Self { family }
    }

    pub fn check(&self, e: SymElem) -> Result<SymElem> {
        if e.bit > 1 {
            return Err(Error::FamilyMismatch(format!("bit {} is not 0 or 1", e.bit)));
        }
        self.family.check(e.ord)?;
        Ok(e)
    }

    pub fn meet(&self, x: SymElem, y: SymElem) -> Result<SymElem> {
        Ok(self.check(x)?.meet(self.check(y)?))
    }

    pub fn join(&self, x: SymElem, y: SymElem) -> Result<SymElem> {
        Ok(self.check(x)?.join(self.check(y)?))
    }
}

/// Meet of two elements of `family`; fails on elements outside the family.
pub fn sym_meet(family: Family, x: SymElem, y: SymElem) -> Result<SymElem> {
    SymLattice::new(family).meet(x, y)
}

/// Join of two elements of `family`; fails on elements outside the family.
pub fn sym_join(family: Family, x: SymElem, y: SymElem) -> Result<SymElem> {
    SymLattice::new(family).join(x, y)
}
