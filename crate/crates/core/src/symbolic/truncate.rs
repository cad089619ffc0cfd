//! Finite truncations of the two countable lattices.

use super::ordinal::{Family, OrdK, SymElem};
use crate::error::{Error, Result};
use crate::finite::construct::{add_top, chain, lex_product, product};
use crate::finite::lattice::{FiniteLattice, FiniteStructure};

/// `(chain(k) + top) × chain(2)` for `ω + 1`, and
/// `(chain(k) ⋉ chain(k) + top) × chain(2)` for `ω² + 1`.
///
/// Element `i` is [`truncation_elem`]`(family, k, i)`; labels use the
/// symbolic notation.
pub fn truncate(family: Family, k: usize) -> Result<FiniteLattice> {
    if k == 0 {
        return Err(Error::EmptyCarrier);
    }
    let base = match family {
        Family::Omega => chain(k)?,
        Family::OmegaSq => lex_product(&chain(k)?, &chain(k)?)?,
    };
    let l = product(&add_top(&base)?, &chain(2)?)?;
    let labels = (0..l.size())
        .map(|i| family.show_elem(truncation_elem(family, k, i)))
        .collect();
    l.with_labels(labels)
}

/// The symbolic element that index `i` of `truncate(family, k)` stands for.
pub fn truncation_elem(family: Family, k: usize, i: usize) -> SymElem {
    let bit = (i % 2) as u8;
    let pos = i / 2;
    let ord = match family {
        Family::Omega if pos == k => OrdK::Top,
        Family::Omega => OrdK::Pair(0, pos as u64),
        Family::OmegaSq if pos == k * k => OrdK::Top,
        Family::OmegaSq => OrdK::Pair((pos / k) as u64, (pos % k) as u64),
    };
    SymElem::new(ord, bit)
}
