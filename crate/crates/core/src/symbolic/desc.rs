//! Finite descriptions of subsets of `K × {0, 1}`.
//!
//! A positive description is a finite union of blocks; a co-finite one lists
//! the finitely many excluded elements. Positive descriptions are kept in a
//! canonical normal form computed from the denotation, so two descriptions
//! denote the same set iff they are syntactically equal.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::ordinal::{Family, OrdK, SymElem};
use crate::error::{Error, Result};

/// One block of a positive description.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    /// A single element.
    Point(SymElem),
    /// `{(n⋉m, bit) : m ≥ m0}`.
    RowTail { n: u64, m0: u64, bit: u8 },
    /// `{(n⋉0, bit) : n ≥ n0}`.
    ZeroColTail { n0: u64, bit: u8 },
    /// `{(k, bit) : k0 ≤ k ≤ top}`.
    FullTail { k0: OrdK, bit: u8 },
}

/// The ordinal projection of a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum KSet {
    Point(OrdK),
    Row { n: u64, m0: u64 },
    ZeroCol { n0: u64 },
    Full(OrdK),
}

impl KSet {
    pub(crate) fn contains(self, k: OrdK) -> bool {
        match (self, k) {
            (KSet::Point(p), _) => p == k,
            (KSet::Row { n, m0 }, OrdK::Pair(q, r)) => q == n && r >= m0,
            (KSet::ZeroCol { n0 }, OrdK::Pair(q, r)) => r == 0 && q >= n0,
            (KSet::Full(k0), _) => k >= k0,
            (_, OrdK::Top) => false,
        }
    }

    pub(crate) fn min(self) -> OrdK {
        match self {
            KSet::Point(k) | KSet::Full(k) => k,
            KSet::Row { n, m0 } => OrdK::Pair(n, m0),
            KSet::ZeroCol { n0 } => OrdK::Pair(n0, 0),
        }
    }

    /// The set of ordinals below some member.
    pub(crate) fn down_bound(self, family: Family) -> Upper {
        match self {
            KSet::Point(k) => Upper::Le(k),
            KSet::Row { n, .. } => Upper::Lt(family.row_limit(n)),
            KSet::ZeroCol { .. } => Upper::Lt(OrdK::Top),
            KSet::Full(_) => Upper::Le(OrdK::Top),
        }
    }

    /// Supremum of an infinite block that the block itself does not contain.
    pub(crate) fn limit(self, family: Family) -> Option<OrdK> {
        match self {
            KSet::Row { n, .. } => Some(family.row_limit(n)),
            KSet::ZeroCol { .. } => Some(OrdK::Top),
            KSet::Point(_) | KSet::Full(_) => None,
        }
    }

    fn with_bit(self, bit: u8) -> Block {
        match self {
            KSet::Point(k) => Block::Point(SymElem::new(k, bit)),
            KSet::Row { n, m0 } => Block::RowTail { n, m0, bit },
            KSet::ZeroCol { n0 } => Block::ZeroColTail { n0, bit },
            KSet::Full(k0) => Block::FullTail { k0, bit },
        }
    }
}

/// Upper end of an interval of ordinals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Upper {
    Le(OrdK),
    Lt(OrdK),
}

impl Upper {
    fn admits(self, k: OrdK) -> bool {
        match self {
            Upper::Le(h) => k <= h,
            Upper::Lt(h) => k < h,
        }
    }
}

/// How much of one row an upper bound admits.
enum RowCap {
    All,
    UpTo(u64),
    Nothing,
}

fn row_cap(hi: Upper, n: u64) -> RowCap {
    match hi {
        Upper::Le(OrdK::Top) | Upper::Lt(OrdK::Top) => RowCap::All,
        Upper::Le(OrdK::Pair(q, r)) => match q.cmp(&n) {
            std::cmp::Ordering::Greater => RowCap::All,
            std::cmp::Ordering::Equal => RowCap::UpTo(r),
            std::cmp::Ordering::Less => RowCap::Nothing,
        },
        Upper::Lt(OrdK::Pair(q, r)) => match q.cmp(&n) {
            std::cmp::Ordering::Greater => RowCap::All,
            std::cmp::Ordering::Equal if r > 0 => RowCap::UpTo(r - 1),
            _ => RowCap::Nothing,
        },
    }
}

/// The part of an interval `[a, hi]` that cannot be written with the block
/// grammar: `[a, ω²)` in `ω² + 1` spans infinitely many full rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Inexpressible {
    pub from: OrdK,
}

fn row_points(n: u64, from: u64, to: u64, out: &mut Vec<KSet>) {
    out.extend((from..=to).map(|m| KSet::Point(OrdK::Pair(n, m))));
}

/// All `k` with `a ≤ k` admitted by `hi`, as blocks.
pub(crate) fn interval(
    family: Family,
    a: OrdK,
    hi: Upper,
) -> std::result::Result<Vec<KSet>, Inexpressible> {
    let mut out = Vec::new();
    let (qa, ra) = match a {
        OrdK::Top => {
            if hi.admits(OrdK::Top) {
                out.push(KSet::Point(OrdK::Top));
            }
            return Ok(out);
        }
        OrdK::Pair(q, r) => (q, r),
    };
    match hi {
        Upper::Le(OrdK::Top) => out.push(KSet::Full(a)),
        Upper::Lt(OrdK::Top) => match family {
            Family::Omega => out.push(KSet::Row { n: 0, m0: ra }),
            Family::OmegaSq => return Err(Inexpressible { from: a }),
        },
        _ => {
            for n in qa.. {
                let from = if n == qa { ra } else { 0 };
                match row_cap(hi, n) {
                    RowCap::All => out.push(KSet::Row { n, m0: from }),
                    RowCap::UpTo(r) => {
                        if r >= from {
                            row_points(n, from, r, &mut out);
                        }
                        break;
                    }
                    RowCap::Nothing => break,
                }
            }
        }
    }
    Ok(out)
}

/// `set ∩ [lo, hi]`, as blocks.
pub(crate) fn restrict(
    family: Family,
    set: KSet,
    lo: OrdK,
    hi: Upper,
) -> std::result::Result<Vec<KSet>, Inexpressible> {
    let mut out = Vec::new();
    match set {
        KSet::Point(p) => {
            if lo <= p && hi.admits(p) {
                out.push(set);
            }
        }
        KSet::Row { n, m0 } => {
            let start = match lo {
                OrdK::Pair(q, r) if q == n => r.max(m0),
                OrdK::Pair(q, _) if q < n => m0,
                _ => return Ok(out),
            };
            match row_cap(hi, n) {
                RowCap::All => out.push(KSet::Row { n, m0: start }),
                RowCap::UpTo(r) if r >= start => row_points(n, start, r, &mut out),
                _ => {}
            }
        }
        KSet::ZeroCol { n0 } => {
            let ceil = match lo {
                OrdK::Pair(q, 0) => q,
                OrdK::Pair(q, _) => q + 1,
                OrdK::Top => return Ok(out),
            };
            let start = n0.max(ceil);
            match hi {
                Upper::Le(OrdK::Top) | Upper::Lt(OrdK::Top) => out.push(KSet::ZeroCol { n0: start }),
                Upper::Le(OrdK::Pair(q, _)) => {
                    out.extend((start..=q).map(|i| KSet::Point(OrdK::Pair(i, 0))));
                }
                Upper::Lt(OrdK::Pair(q, r)) => {
                    let last = if r > 0 { Some(q) } else { q.checked_sub(1) };
                    if let Some(last) = last {
                        out.extend((start..=last).map(|i| KSet::Point(OrdK::Pair(i, 0))));
                    }
                }
            }
        }
        KSet::Full(k0) => return interval(family, k0.max(lo), hi),
    }
    Ok(out)
}

impl Block {
    pub fn bit(&self) -> u8 {
        match *self {
            Block::Point(e) => e.bit,
            Block::RowTail { bit, .. } | Block::ZeroColTail { bit, .. } | Block::FullTail { bit, .. } => {
                bit
            }
        }
    }

    pub(crate) fn kset(&self) -> KSet {
        match *self {
            Block::Point(e) => KSet::Point(e.ord),
            Block::RowTail { n, m0, .. } => KSet::Row { n, m0 },
            Block::ZeroColTail { n0, .. } => KSet::ZeroCol { n0 },
            Block::FullTail { k0, .. } => KSet::Full(k0),
        }
    }

    pub fn contains(&self, e: SymElem) -> bool {
        e.bit == self.bit() && self.kset().contains(e.ord)
    }

    pub fn is_infinite(&self) -> bool {
        !matches!(self, Block::Point(_))
    }

    /// The join of the block when it is not attained inside the block.
    pub fn limit(&self, family: Family) -> Option<SymElem> {
        self.kset().limit(family).map(|k| SymElem::new(k, self.bit()))
    }

    pub fn validate(&self, family: Family) -> Result<Block> {
        if self.bit() > 1 {
            return Err(Error::FamilyMismatch(format!("bit {} is not 0 or 1", self.bit())));
        }
        match (family, *self) {
            (Family::Omega, Block::ZeroColTail { .. }) => Err(Error::UnsupportedBlock(
                "zero-column tails need infinitely many rows".into(),
            )),
            (Family::Omega, Block::RowTail { n, .. }) if n != 0 => {
                Err(Error::FamilyMismatch(format!("omega has no row {n}")))
            }
            (_, Block::Point(e)) => family.check(e.ord).map(|_| *self),
            (_, Block::FullTail { k0, .. }) => family.check(k0).map(|_| *self),
            _ => Ok(*self),
        }
    }

    pub fn show(&self, family: Family) -> String {
        let b = self.bit();
        match *self {
            Block::Point(e) => format!("{{{}}}", family.show_elem(e)),
            Block::RowTail { n, m0, .. } => match family {
                Family::Omega => format!("{{(m,{b}) : m ≥ {m0}}}"),
                Family::OmegaSq => format!("{{({n}⋉m,{b}) : m ≥ {m0}}}"),
            },
            Block::ZeroColTail { n0, .. } => format!("{{(n⋉0,{b}) : n ≥ {n0}}}"),
            Block::FullTail { k0, .. } => format!(
                "{{(k,{b}) : {} ≤ k ≤ {}}}",
                family.show(k0),
                family.top_symbol()
            ),
        }
    }
}

/// Canonical blocks of one bit slice `S ⊆ K`, computed from the denotation.
fn normalize_slice(family: Family, raw: &[KSet]) -> Vec<KSet> {
    let mem = |k: OrdK| raw.iter().any(|s| s.contains(k));
    let mut row_starts: BTreeMap<u64, u64> = BTreeMap::new();
    let mut full_min: Option<OrdK> = None;
    let mut zero_col_min: Option<u64> = None;
    for s in raw {
        match *s {
            KSet::Row { n, m0 } => {
                let e = row_starts.entry(n).or_insert(m0);
                *e = (*e).min(m0);
            }
            KSet::Full(k0) => full_min = Some(full_min.map_or(k0, |f| f.min(k0))),
            KSet::ZeroCol { n0 } => zero_col_min = Some(zero_col_min.map_or(n0, |z| z.min(n0))),
            KSet::Point(_) => {}
        }
    }
    // Least m with (n⋉m') ∈ S for all m' ≥ m, when row n is eventually full.
    let row_tail = |n: u64| -> Option<u64> {
        let mut m = *row_starts.get(&n)?;
        while m > 0 && mem(OrdK::Pair(n, m - 1)) {
            m -= 1;
        }
        Some(m)
    };

    // Least k < top with [k, top] ⊆ S.
    let mut full = match (full_min, family) {
        (Some(k), _) => Some(k),
        (None, Family::Omega) if mem(OrdK::Top) => row_tail(0).map(|m| OrdK::Pair(0, m)),
        _ => None,
    };
    if let Some(mut k) = full {
        loop {
            let next = match k {
                OrdK::Pair(q, r) if r > 0 => Some(OrdK::Pair(q, r - 1)).filter(|&p| mem(p)),
                OrdK::Pair(0, 0) => None,
                OrdK::Pair(q, _) => row_tail(q - 1).map(|m| OrdK::Pair(q - 1, m)),
                OrdK::Top => match family {
                    Family::Omega => row_tail(0).map(|m| OrdK::Pair(0, m)),
                    Family::OmegaSq => None,
                },
            };
            match next {
                Some(p) => k = p,
                None => break,
            }
        }
        full = (!k.is_top()).then_some(k);
    }

    let mut out = Vec::new();
    let zero_col = match full {
        Some(_) => None,
        None => zero_col_min.map(|mut n0| {
            while n0 > 0 && mem(OrdK::Pair(n0 - 1, 0)) {
                n0 -= 1;
            }
            n0
        }),
    };
    for &n in row_starts.keys() {
        let m0 = row_tail(n).expect("row has a raw tail");
        if full.is_none_or(|f| f > OrdK::Pair(n, m0)) {
            out.push(KSet::Row { n, m0 });
        }
    }
    if let Some(n0) = zero_col {
        out.push(KSet::ZeroCol { n0 });
    }
    if let Some(k0) = full {
        out.push(KSet::Full(k0));
    }

    // Finitely many members remain outside the infinite blocks; they all come
    // from raw points, from zero-column elements below a full tail, or from a
    // degenerate full tail `{top}`.
    let mut candidates: BTreeSet<OrdK> = BTreeSet::new();
    for s in raw {
        match *s {
            KSet::Point(k) => {
                candidates.insert(k);
            }
            KSet::ZeroCol { n0 } => {
                if let Some(OrdK::Pair(q, _)) = full {
                    candidates.extend((n0..=q).map(|i| OrdK::Pair(i, 0)));
                }
            }
            KSet::Full(k0) => {
                candidates.insert(k0);
            }
            KSet::Row { .. } => {}
        }
    }
    let infinite = out.clone();
    out.extend(
        candidates
            .into_iter()
            .filter(|&k| mem(k) && !infinite.iter().any(|s| s.contains(k)))
            .map(KSet::Point),
    );
    out
}

/// A finite union of blocks in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Positive {
    family: Family,
    blocks: Vec<Block>,
}

impl Positive {
    /// Validates and normalizes.
    pub fn new(family: Family, blocks: impl IntoIterator<Item = Block>) -> Result<Self> {
        let blocks: Vec<Block> = blocks
            .into_iter()
            .map(|b| b.validate(family))
            .collect::<Result<_>>()?;
        Ok(Self::normalized(family, &blocks))
    }

    pub(crate) fn normalized(family: Family, blocks: &[Block]) -> Self {
        let mut out = Vec::new();
        for bit in 0..=1u8 {
            let raw: Vec<KSet> = blocks.iter().filter(|b| b.bit() == bit).map(|b| b.kset()).collect();
            out.extend(normalize_slice(family, &raw).into_iter().map(|k| k.with_bit(bit)));
        }
        out.sort_unstable();
        Self {
            family,
            blocks: out,
        }
    }

    pub fn empty(family: Family) -> Self {
        Self {
            family,
            blocks: Vec::new(),
        }
    }

    /// The whole carrier.
    pub fn whole(family: Family) -> Self {
        Self::normalized(
            family,
            &[
                Block::FullTail { k0: OrdK::ZERO, bit: 0 },
                Block::FullTail { k0: OrdK::ZERO, bit: 1 },
            ],
        )
    }

    pub fn points(family: Family, elems: impl IntoIterator<Item = SymElem>) -> Result<Self> {
        Self::new(family, elems.into_iter().map(Block::Point))
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn contains(&self, e: SymElem) -> bool {
        self.blocks.iter().any(|b| b.contains(e))
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        *self == Self::whole(self.family)
    }

    pub fn union(&self, other: &Positive) -> Result<Positive> {
        self.same_family(other.family)?;
        let all: Vec<Block> = self.blocks.iter().chain(&other.blocks).copied().collect();
        Ok(Self::normalized(self.family, &all))
    }

    pub fn with_block(&self, block: Block) -> Result<Positive> {
        let block = block.validate(self.family)?;
        let mut all = self.blocks.clone();
        all.push(block);
        Ok(Self::normalized(self.family, &all))
    }

    pub fn with(&self, e: SymElem) -> Result<Positive> {
        self.with_block(Block::Point(e))
    }

    /// Denotational inclusion, decided through the normal form.
    pub fn is_subset(&self, other: &Positive) -> Result<bool> {
        Ok(self.union(other)? == *other)
    }

    fn same_family(&self, f: Family) -> Result<()> {
        if f != self.family {
            return Err(Error::FamilyMismatch(format!(
                "{} description combined with {}",
                self.family, f
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Positive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self.blocks.iter().map(|b| b.show(self.family)).collect();
        f.write_str(&parts.join(" ∪ "))
    }
}

/// The carrier minus finitely many elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoFinite {
    family: Family,
    excluded: BTreeSet<SymElem>,
}

impl CoFinite {
    pub fn new(family: Family, excluded: impl IntoIterator<Item = SymElem>) -> Result<Self> {
        let lattice = super::ordinal::SymLattice::new(family);
        let excluded = excluded
            .into_iter()
            .map(|e| lattice.check(e))
            .collect::<Result<_>>()?;
        Ok(Self { family, excluded })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn excluded(&self) -> &BTreeSet<SymElem> {
        &self.excluded
    }

    pub fn contains(&self, e: SymElem) -> bool {
        !self.excluded.contains(&e)
    }

    pub fn is_whole(&self) -> bool {
        self.excluded.is_empty()
    }

    /// The same set as a positive description. Fails in `ω² + 1` when the top
    /// of some slice is excluded, since `[k, ω²)` is not a finite union of blocks.
    pub fn to_positive(&self) -> Result<Positive> {
        let mut blocks = Vec::new();
        for bit in 0..=1u8 {
            let mut start = OrdK::ZERO;
            let holes: Vec<OrdK> = self
                .excluded
                .iter()
                .filter(|e| e.bit == bit)
                .map(|e| e.ord)
                .collect();
            for &h in &holes {
                if start < h {
                    let piece = interval(self.family, start, Upper::Lt(h)).map_err(|i| {
                        Error::UnsupportedBlock(format!(
                            "[{}, {}) is not a finite union of blocks",
                            self.family.show(i.from),
                            self.family.top_symbol()
                        ))
                    })?;
                    blocks.extend(piece.into_iter().map(|k| k.with_bit(bit)));
                }
                match h.succ() {
                    Some(s) => start = s,
                    None => {
                        start = OrdK::Top;
                        break;
                    }
                }
            }
            if holes.last() != Some(&OrdK::Top) {
                blocks.extend(
                    interval(self.family, start, Upper::Le(OrdK::Top))
                        .expect("up-closed intervals are blocks")
                        .into_iter()
                        .map(|k| k.with_bit(bit)),
                );
            }
        }
        Ok(Positive::normalized(self.family, &blocks))
    }
}

impl fmt::Display for CoFinite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.excluded.is_empty() {
            return f.write_str("L");
        }
        let parts: Vec<String> = self.excluded.iter().map(|&e| self.family.show_elem(e)).collect();
        write!(f, "L ∖ {{{}}}", parts.join(", "))
    }
}

/// A finitely described subset of `K × {0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SetDesc {
    Positive(Positive),
    CoFinite(CoFinite),
}

impl SetDesc {
    pub fn family(&self) -> Family {
        match self {
            SetDesc::Positive(p) => p.family(),
            SetDesc::CoFinite(c) => c.family(),
        }
    }

    pub fn contains(&self, e: SymElem) -> bool {
        match self {
            SetDesc::Positive(p) => p.contains(e),
            SetDesc::CoFinite(c) => c.contains(e),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawDesc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        raw.into_desc()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&RawDesc::from_desc(self)).expect("descriptions serialize")
    }
}

impl From<Positive> for SetDesc {
    fn from(p: Positive) -> Self {
        SetDesc::Positive(p)
    }
}

impl From<CoFinite> for SetDesc {
    fn from(c: CoFinite) -> Self {
        SetDesc::CoFinite(c)
    }
}

impl fmt::Display for SetDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetDesc::Positive(p) => p.fmt(f),
            SetDesc::CoFinite(c) => c.fmt(f),
        }
    }
}

// ---- JSON interchange ----------------------------------------------------

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Positive,
    Cofinite,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawElem {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    top: Option<bool>,
    bit: u8,
}

impl RawElem {
    fn from_ord(k: OrdK, bit: u8) -> Self {
        match k {
            OrdK::Pair(q, r) => Self {
                n: Some(q),
                m: Some(r),
                top: None,
                bit,
            },
            OrdK::Top => Self {
                n: None,
                m: None,
                top: Some(true),
                bit,
            },
        }
    }

    fn ord(&self) -> Result<OrdK> {
        match (self.top, self.n, self.m) {
            (Some(true), None, None) => Ok(OrdK::Top),
            (Some(true), _, _) => Err(Error::Parse("a top element takes no n or m".into())),
            (_, n, Some(m)) => Ok(OrdK::Pair(n.unwrap_or(0), m)),
            (_, _, None) => Err(Error::Parse("element needs m (and n) or top".into())),
        }
    }

    fn elem(&self) -> Result<SymElem> {
        if self.bit > 1 {
            return Err(Error::Parse(format!("bit {} is not 0 or 1", self.bit)));
        }
        Ok(SymElem::new(self.ord()?, self.bit))
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "t", rename_all = "lowercase", deny_unknown_fields)]
enum RawBlock {
    Point {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        top: Option<bool>,
        bit: u8,
    },
    Rowtail {
        n: u64,
        m0: u64,
        bit: u8,
    },
    Zerocoltail {
        n0: u64,
        bit: u8,
    },
    Fulltail {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        top: Option<bool>,
        bit: u8,
    },
}

impl RawBlock {
    fn from_block(b: &Block) -> Self {
        match *b {
            Block::Point(e) => {
                let r = RawElem::from_ord(e.ord, e.bit);
                RawBlock::Point {
                    n: r.n,
                    m: r.m,
                    top: r.top,
                    bit: r.bit,
                }
            }
            Block::RowTail { n, m0, bit } => RawBlock::Rowtail { n, m0, bit },
            Block::ZeroColTail { n0, bit } => RawBlock::Zerocoltail { n0, bit },
            Block::FullTail { k0, bit } => {
                let r = RawElem::from_ord(k0, bit);
                RawBlock::Fulltail {
                    n: r.n,
                    m: r.m,
                    top: r.top,
                    bit: r.bit,
                }
            }
        }
    }

    fn block(&self) -> Result<Block> {
        let check_bit = |bit: u8| {
            if bit > 1 {
                Err(Error::Parse(format!("bit {bit} is not 0 or 1")))
            } else {
                Ok(bit)
            }
        };
        Ok(match *self {
            RawBlock::Point { n, m, top, bit } => {
                Block::Point(RawElem { n, m, top, bit }.elem()?)
            }
            RawBlock::Rowtail { n, m0, bit } => Block::RowTail {
                n,
                m0,
                bit: check_bit(bit)?,
            },
            RawBlock::Zerocoltail { n0, bit } => Block::ZeroColTail {
                n0,
                bit: check_bit(bit)?,
            },
            RawBlock::Fulltail { n, m, top, bit } => {
                let e = RawElem { n, m, top, bit }.elem()?;
                Block::FullTail { k0: e.ord, bit: e.bit }
            }
        })
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDesc {
    family: Family,
    kind: Kind,
    #[serde(default)]
    blocks: Vec<RawBlock>,
    #[serde(default)]
    excluded: Vec<RawElem>,
}

impl RawDesc {
    fn from_desc(d: &SetDesc) -> Self {
        match d {
            SetDesc::Positive(p) => Self {
                family: p.family,
                kind: Kind::Positive,
                blocks: p.blocks.iter().map(RawBlock::from_block).collect(),
                excluded: Vec::new(),
            },
            SetDesc::CoFinite(c) => Self {
                family: c.family,
                kind: Kind::Cofinite,
                blocks: Vec::new(),
                excluded: c.excluded.iter().map(|e| RawElem::from_ord(e.ord, e.bit)).collect(),
            },
        }
    }

    fn into_desc(self) -> Result<SetDesc> {
        match self.kind {
            Kind::Positive => {
                if !self.excluded.is_empty() {
                    return Err(Error::Parse("a positive description has no excluded list".into()));
                }
                let blocks: Vec<Block> = self.blocks.iter().map(RawBlock::block).collect::<Result<_>>()?;
                Ok(Positive::new(self.family, blocks)?.into())
            }
            Kind::Cofinite => {
                if !self.blocks.is_empty() {
                    return Err(Error::Parse("a co-finite description has no blocks".into()));
                }
                let excluded: Vec<SymElem> = self.excluded.iter().map(RawElem::elem).collect::<Result<_>>()?;
                Ok(CoFinite::new(self.family, excluded)?.into())
            }
        }
    }
}
