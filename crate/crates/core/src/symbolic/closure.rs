//! Complete-sublattice closure of positive descriptions.
//!
//! In `K × {0, 1}` every nonempty meet is a binary meet (the first coordinate
//! is well ordered, the second finite), and a join that is not attained is
//! the limit of one bit slice joined with at most one further element. So a
//! finitely described set is closed iff it is closed under the pairwise block
//! images below and contains the limit of each of its infinite blocks.

use super::desc::{interval, restrict, Block, Inexpressible, KSet, Positive, SetDesc, Upper};
use super::forcing::close_cofinite;
use super::ordinal::{Family, OrdK, SymElem};
use crate::error::{Error, Result};
use crate::generators::config::ClosureConfig;

pub const DEFAULT_MAX_ROUNDS: usize = 1000;

fn completion(
    family: Family,
    pieces: std::result::Result<Vec<KSet>, Inexpressible>,
    complete: bool,
) -> Result<Vec<KSet>> {
    match pieces {
        Ok(p) => Ok(p),
        // [k, top) is only produced together with the limit of its slice, so
        // in modes with infinitary joins the closure contains [k, top].
        Err(i) if complete => Ok(vec![KSet::Full(i.from)]),
        Err(i) => Err(Error::UnsupportedBlock(format!(
            "[{}, {}) needs infinitely many row tails",
            family.show(i.from),
            family.top_symbol()
        ))),
    }
}

/// `{x ∧ y : x ∈ a, y ∈ b}` as blocks.
pub(crate) fn meet_image(family: Family, a: &Block, b: &Block, complete: bool) -> Result<Vec<Block>> {
    let (ka, kb) = (a.kset(), b.kset());
    let bit = a.bit().min(b.bit());
    let mut out = completion(family, restrict(family, ka, OrdK::ZERO, kb.down_bound(family)), complete)?;
    out.extend(completion(
        family,
        restrict(family, kb, OrdK::ZERO, ka.down_bound(family)),
        complete,
    )?);
    Ok(out.into_iter().map(|k| with_bit(k, bit)).collect())
}

/// `{x ∨ y : x ∈ a, y ∈ b}` as blocks.
pub(crate) fn join_image(family: Family, a: &Block, b: &Block) -> Vec<Block> {
    let (ka, kb) = (a.kset(), b.kset());
    let bit = a.bit().max(b.bit());
    let up = Upper::Le(OrdK::Top);
    restrict(family, ka, kb.min(), up)
        .into_iter()
        .chain(restrict(family, kb, ka.min(), up))
        .flatten()
        .map(|k| with_bit(k, bit))
        .collect()
}

fn with_bit(k: KSet, bit: u8) -> Block {
    match k {
        KSet::Point(o) => Block::Point(SymElem::new(o, bit)),
        KSet::Row { n, m0 } => Block::RowTail { n, m0, bit },
        KSet::ZeroCol { n0 } => Block::ZeroColTail { n0, bit },
        KSet::Full(k0) => Block::FullTail { k0, bit },
    }
}

fn limit_rule(cfg: &ClosureConfig) -> bool {
    cfg.respect_joins && cfg.completeness.infinitary_joins()
}

/// One saturation step: pairwise images, limits and convention elements.
fn step(p: &Positive, cfg: &ClosureConfig) -> Result<Positive> {
    let family = p.family();
    let blocks = p.blocks();
    let complete = limit_rule(cfg);
    let mut next: Vec<Block> = blocks.to_vec();
    for (i, a) in blocks.iter().enumerate() {
        for b in &blocks[i + 1..] {
            next.extend(meet_image(family, a, b, complete)?);
            if cfg.respect_joins {
                next.extend(join_image(family, a, b));
            }
        }
        if complete {
            next.extend(a.limit(family).map(Block::Point));
        }
    }
    if cfg.include_empty_meet {
        next.push(Block::Point(family.top()));
    }
    if cfg.respect_joins && cfg.include_empty_join {
        next.push(Block::Point(family.bottom()));
    }
    Ok(Positive::normalized(family, &next))
}

/// Least substructure containing `p`, as a positive description.
pub fn close_positive(p: &Positive, cfg: &ClosureConfig, max_rounds: usize) -> Result<Positive> {
    let mut cur = p.clone();
    for _ in 0..max_rounds {
        let next = step(&cur, cfg)?;
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
    Err(Error::NonTermination { rounds: max_rounds })
}

/// Least substructure containing `d`.
///
/// Co-finite inputs are closed by removing forced elements from the
/// exclusion list until none is forced, so their closure stays co-finite.
pub fn complete_closure(d: &SetDesc, cfg: &ClosureConfig, max_rounds: usize) -> Result<SetDesc> {
    match d {
        SetDesc::Positive(p) => close_positive(p, cfg, max_rounds).map(SetDesc::Positive),
        SetDesc::CoFinite(c) => Ok(SetDesc::CoFinite(close_cofinite(c, cfg))),
    }
}

/// `[a, b]` in the family, as a positive description.
pub fn closed_interval(family: Family, a: SymElem, b: SymElem) -> Result<Positive> {
    let mut blocks = Vec::new();
    for bit in a.bit..=b.bit {
        let pieces = interval(family, a.ord, Upper::Le(b.ord)).expect("closed intervals are blocks");
        blocks.extend(pieces.into_iter().map(|k| with_bit(k, bit)));
    }
    Positive::new(family, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::config::Completeness;
    use proptest::prelude::*;

    const SQ: Family = Family::OmegaSq;
    const OM: Family = Family::Omega;

    fn p(q: u64, r: u64, b: u8) -> SymElem {
        SymElem::pair(q, r, b)
    }

    fn pos(f: Family, blocks: &[Block]) -> Positive {
        Positive::new(f, blocks.iter().copied()).unwrap()
    }

    fn close(d: &Positive, cfg: &ClosureConfig) -> Positive {
        close_positive(d, cfg, DEFAULT_MAX_ROUNDS).unwrap()
    }

    fn std_cfg() -> ClosureConfig {
        ClosureConfig::lattice()
    }

    fn configs() -> Vec<ClosureConfig> {
        let l = ClosureConfig::lattice();
        vec![
            l,
            l.without_extremes(),
            l.with_completeness(Completeness::JoinComplete),
            l.with_completeness(Completeness::Finitary),
            ClosureConfig::semilattice(),
        ]
    }

    fn m_set(f: Family) -> Positive {
        pos(
            f,
            &[
                Block::FullTail { k0: OrdK::ZERO, bit: 1 },
                Block::Point(p(0, 0, 0)),
            ],
        )
    }

    #[test]
    fn zero_column_reaches_the_top() {
        let d = pos(SQ, &[Block::ZeroColTail { n0: 0, bit: 0 }]);
        let c = close(&d, &std_cfg().without_extremes());
        assert!(c.contains(SymElem::top(0)));
        // without infinitary joins the column is already closed
        let fin = std_cfg().without_extremes().with_completeness(Completeness::Finitary);
        assert_eq!(close(&d, &fin), d);
    }

    #[test]
    fn m_is_closed_and_generates_everything_with_the_top_zero() {
        for f in [OM, SQ] {
            let m = m_set(f);
            for cfg in configs() {
                if cfg.respect_joins {
                    assert_eq!(close(&m, &cfg), m, "{f} {cfg:?}");
                }
            }
            let with = m.with(SymElem::top(0)).unwrap();
            assert!(close(&with, &std_cfg()).is_whole(), "{f}");
        }
    }

    #[test]
    fn meet_images_follow_the_rewriting_table() {
        // (n⋉1, 1) ∧ (k, 0) = (n⋉1, 0) for k ≥ n⋉1
        let a = Block::Point(p(3, 1, 1));
        let b = Block::FullTail { k0: OrdK::Pair(3, 1), bit: 0 };
        let img = Positive::normalized(SQ, &meet_image(SQ, &a, &b, true).unwrap());
        assert_eq!(img.blocks(), &[Block::Point(p(3, 1, 0))]);
        // a row tail against a full tail: the row itself, and the part of the
        // full tail below the row's limit
        let row = Block::RowTail { n: 1, m0: 4, bit: 1 };
        let full = Block::FullTail { k0: OrdK::Pair(1, 2), bit: 0 };
        let img = Positive::normalized(SQ, &meet_image(SQ, &row, &full, true).unwrap());
        assert_eq!(img.blocks(), &[Block::RowTail { n: 1, m0: 2, bit: 0 }]);
        let img = Positive::normalized(SQ, &join_image(SQ, &row, &full));
        assert_eq!(img.blocks(), &[Block::FullTail { k0: OrdK::Pair(1, 4), bit: 1 }]);
    }

    #[test]
    fn finitary_mode_rejects_inexpressible_images() {
        let zc = Block::ZeroColTail { n0: 0, bit: 0 };
        let full = Block::FullTail { k0: OrdK::Pair(0, 3), bit: 1 };
        assert!(matches!(meet_image(SQ, &zc, &full, false), Err(Error::UnsupportedBlock(_))));
        assert!(meet_image(SQ, &zc, &full, true).is_ok());
    }

    #[test]
    fn round_cap_is_observable() {
        let d = pos(SQ, &[Block::ZeroColTail { n0: 0, bit: 0 }, Block::Point(p(0, 0, 1))]);
        assert!(matches!(
            close_positive(&d, &std_cfg(), 1),
            Err(Error::NonTermination { rounds: 1 })
        ));
    }

    #[test]
    fn intervals() {
        let i = closed_interval(SQ, p(0, 2, 0), p(1, 1, 1)).unwrap();
        assert!(i.contains(p(0, 7, 1)) && i.contains(p(1, 1, 0)) && !i.contains(p(1, 2, 0)));
        assert!(!i.contains(p(0, 1, 1)));
    }

    /// Elementwise closure of a finite set of elements, as an oracle.
    fn finite_closure(xs: &[SymElem], cfg: &ClosureConfig, f: Family) -> Vec<SymElem> {
        let mut set: std::collections::BTreeSet<SymElem> = xs.iter().copied().collect();
        if cfg.include_empty_meet {
            set.insert(f.top());
        }
        if cfg.respect_joins && cfg.include_empty_join {
            set.insert(f.bottom());
        }
        loop {
            let cur: Vec<SymElem> = set.iter().copied().collect();
            let before = set.len();
            for &a in &cur {
                for &b in &cur {
                    set.insert(a.meet(b));
                    if cfg.respect_joins {
                        set.insert(a.join(b));
                    }
                }
            }
            if set.len() == before {
                return cur;
            }
        }
    }

    fn elem(f: Family) -> impl Strategy<Value = SymElem> {
        let q = if f == SQ { 0u64..4 } else { 0u64..1 };
        prop_oneof![
            4 => (q, 0u64..4, 0u8..2).prop_map(|(q, r, b)| SymElem::pair(q, r, b)),
            1 => (0u8..2).prop_map(SymElem::top),
        ]
    }

    proptest! {
        #[test]
        fn finite_sets_match_elementwise_saturation(
            xs in proptest::collection::vec(elem(SQ), 0..6), which in 0usize..5
        ) {
            let cfg = configs()[which];
            let d = Positive::points(SQ, xs.iter().copied()).unwrap();
            let c = close(&d, &cfg);
            let oracle = Positive::points(SQ, finite_closure(&xs, &cfg, SQ)).unwrap();
            prop_assert_eq!(c, oracle);
        }

        #[test]
        fn omega_finite_sets_match_elementwise_saturation(
            xs in proptest::collection::vec(elem(OM), 0..6), which in 0usize..5
        ) {
            let cfg = configs()[which];
            let d = Positive::points(OM, xs.iter().copied()).unwrap();
            let oracle = Positive::points(OM, finite_closure(&xs, &cfg, OM)).unwrap();
            prop_assert_eq!(close(&d, &cfg), oracle);
        }
    }
}
