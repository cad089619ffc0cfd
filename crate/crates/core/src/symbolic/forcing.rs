//! Closedness of co-finite sets `L ∖ F` by forcing analysis.
//!
//! An excluded element is forced when some operation on non-excluded elements
//! produces it. Because `F` is finite, every candidate pattern has a concrete
//! representative:
//!
//! * `(k, 0)` with `k < top` is the meet `(k, 1) ∧ (j, 0)` for any `j > k`;
//! * `(k, 1)` is the join `(k, 0) ∨ (j, 1)` for any `j < k`;
//! * a limit `(λ, b)` is the join of a tail of its slice below `λ`;
//! * the extremes are forced by the empty-meet and empty-join conventions.
//!
//! No other operation can produce an element outside the set.

use std::collections::BTreeSet;

use serde::Serialize;

use super::desc::{Block, CoFinite, Positive, SetDesc};
use super::ordinal::{Family, OrdK, SymElem};
use crate::error::{Error, Result};
use crate::generators::config::ClosureConfig;

/// Why an element belongs to every substructure containing a set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Forcing {
    Meet { left: String, right: String },
    Join { left: String, right: String },
    /// The element is the join of this infinite block.
    Limit { block: String },
    /// The element is the meet (top) or join (bottom) of the empty family.
    Convention { empty: &'static str },
    /// The closure of a positive description contains this block.
    Generated { block: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForcedElement {
    pub element: String,
    pub by: Forcing,
    #[serde(skip)]
    pub elem: Option<SymElem>,
}

/// Outcome of a closedness check, with evidence when the set is not closed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SublatticeCheck {
    pub closed: bool,
    pub evidence: Option<ForcedElement>,
}

fn first_free_above(excluded: &BTreeSet<SymElem>, k: OrdK, bit: u8) -> Option<OrdK> {
    let mut j = k.succ()?;
    while excluded.contains(&SymElem::new(j, bit)) {
        j = j.succ().expect("pairs have successors");
    }
    Some(j)
}

fn first_free_below(excluded: &BTreeSet<SymElem>, k: OrdK, bit: u8) -> Option<OrdK> {
    // Row 0 lies below every k > 0⋉0 and has only finitely many holes.
    let mut j = OrdK::ZERO;
    while j < k {
        if !excluded.contains(&SymElem::new(j, bit)) {
            return Some(j);
        }
        j = j.succ().expect("pairs have successors");
    }
    None
}

/// A cofinal tail of slice `bit` below the limit `k` avoiding `excluded`.
fn cofinal_tail(family: Family, excluded: &BTreeSet<SymElem>, k: OrdK, bit: u8) -> Option<Block> {
    let holes = excluded.iter().filter(|e| e.bit == bit).map(|e| e.ord);
    match (family, k) {
        (Family::OmegaSq, OrdK::Pair(q, 0)) if q >= 1 => {
            let m0 = holes
                .filter_map(|h| h.pair().filter(|&(n, _)| n == q - 1).map(|(_, r)| r + 1))
                .max()
                .unwrap_or(0);
            Some(Block::RowTail { n: q - 1, m0, bit })
        }
        (Family::OmegaSq, OrdK::Top) => {
            let n0 = holes.filter_map(|h| h.pair().map(|(n, _)| n + 1)).max().unwrap_or(0);
            Some(Block::ZeroColTail { n0, bit })
        }
        (Family::Omega, OrdK::Top) => {
            let m0 = holes.filter_map(|h| h.pair().map(|(_, r)| r + 1)).max().unwrap_or(0);
            Some(Block::RowTail { n: 0, m0, bit })
        }
        _ => None,
    }
}

/// Why `e ∈ F` is produced from `L ∖ F`, if it is.
pub fn forcing_of(c: &CoFinite, e: SymElem, cfg: &ClosureConfig) -> Option<Forcing> {
    let family = c.family();
    let ex = c.excluded();
    let show = |x: SymElem| family.show_elem(x);
    if cfg.include_empty_meet && e == family.top() {
        return Some(Forcing::Convention { empty: "meet" });
    }
    if cfg.respect_joins && cfg.include_empty_join && e == family.bottom() {
        return Some(Forcing::Convention { empty: "join" });
    }
    let k = e.ord;
    if e.bit == 0 {
        let partner = SymElem::new(k, 1);
        if !ex.contains(&partner) {
            if let Some(j) = first_free_above(ex, k, 0) {
                return Some(Forcing::Meet {
                    left: show(partner),
                    right: show(SymElem::new(j, 0)),
                });
            }
        }
    } else if cfg.respect_joins {
        let partner = SymElem::new(k, 0);
        if !ex.contains(&partner) {
            if let Some(j) = first_free_below(ex, k, 1) {
                return Some(Forcing::Join {
                    left: show(partner),
                    right: show(SymElem::new(j, 1)),
                });
            }
        }
    }
    if cfg.respect_joins && cfg.completeness.infinitary_joins() {
        if let Some(b) = cofinal_tail(family, ex, k, e.bit) {
            return Some(Forcing::Limit {
                block: b.show(family),
            });
        }
    }
    None
}

/// Every excluded element that is forced, in increasing order.
pub fn forced_elements(c: &CoFinite, cfg: &ClosureConfig) -> Vec<ForcedElement> {
    c.excluded()
        .iter()
        .filter_map(|&e| {
            forcing_of(c, e, cfg).map(|by| ForcedElement {
                element: c.family().show_elem(e),
                by,
                elem: Some(e),
            })
        })
        .collect()
}

/// Closure of `L ∖ F`: repeatedly readmit forced elements.
pub fn close_cofinite(c: &CoFinite, cfg: &ClosureConfig) -> CoFinite {
    let mut cur = c.clone();
    loop {
        let forced: Vec<SymElem> = forced_elements(&cur, cfg).into_iter().filter_map(|f| f.elem).collect();
        if forced.is_empty() {
            return cur;
        }
        let rest: Vec<SymElem> = cur.excluded().iter().copied().filter(|e| !forced.contains(e)).collect();
        cur = CoFinite::new(cur.family(), rest).expect("subset of a valid exclusion list");
    }
}

/// Whether `d` is closed, with the forcing evidence when it is not.
pub fn is_complete_sublattice(d: &SetDesc, cfg: &ClosureConfig, max_rounds: usize) -> Result<SublatticeCheck> {
    match d {
        SetDesc::CoFinite(c) => {
            let evidence = forced_elements(c, cfg).into_iter().next();
            Ok(SublatticeCheck {
                closed: evidence.is_none(),
                evidence,
            })
        }
        SetDesc::Positive(p) => {
            let closed = super::closure::close_positive(p, cfg, max_rounds)?;
            let extra = closed
                .blocks()
                .iter()
                .find(|b| {
                    Positive::new(p.family(), [**b])
                        .and_then(|single| single.is_subset(p))
                        .map(|inside| !inside)
                        .unwrap_or(true)
                })
                .copied();
            Ok(SublatticeCheck {
                closed: extra.is_none(),
                evidence: extra.map(|b| ForcedElement {
                    element: b.show(p.family()),
                    by: Forcing::Generated {
                        block: b.show(p.family()),
                    },
                    elem: match b {
                        Block::Point(e) => Some(e),
                        _ => None,
                    },
                }),
            })
        }
    }
}

/// Whether the proper closed set `L ∖ F` is maximal among proper closed sets.
///
/// Any closed set strictly above `L ∖ F` is `L ∖ F'` for some `F' ⊊ F`, so
/// it suffices to check that no nonempty proper subset of `F` leaves a
/// closed complement.
pub fn is_maximal_complete_sublattice(c: &CoFinite, cfg: &ClosureConfig) -> Result<bool> {
    if c.is_whole() {
        return Err(Error::NotProper);
    }
    if !forced_elements(c, cfg).is_empty() {
        return Err(Error::NotASublattice);
    }
    let f: Vec<SymElem> = c.excluded().iter().copied().collect();
    if f.len() > 20 {
        return Err(Error::BoundExceeded {
            what: "exclusion list",
            size: f.len(),
            bound: 20,
        });
    }
    let full = (1u32 << f.len()) - 1;
    for sub in 1..full {
        let kept = f
            .iter()
            .enumerate()
            .filter(|(i, _)| sub >> i & 1 == 1)
            .map(|(_, &e)| e);
        let larger = CoFinite::new(c.family(), kept)?;
        if forced_elements(&larger, cfg).is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}
