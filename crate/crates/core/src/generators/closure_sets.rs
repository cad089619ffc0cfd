//! Enumeration of closed sets (substructures) without visiting every subset.
//!
//! Close-by-One: starting from the closure of the empty set, a closed set `C`
//! is extended by each `j` above the last generator; the extension is kept only
//! when it adds no element below `j`, so each closed set is produced once.

use super::closure::ClosureEngine;

/// Calls `visit` once per closed set, in depth-first Close-by-One order.
pub fn for_each_closed_set(engine: &ClosureEngine, mut visit: impl FnMut(u64)) {
    let start = engine.close(0);
    visit(start);
    descend(engine, start, 0, &mut visit);
}

fn descend(engine: &ClosureEngine, closed: u64, from: usize, visit: &mut dyn FnMut(u64)) {
    for j in from..engine.size() {
        if closed >> j & 1 == 1 {
            continue;
        }
        let below = (1u64 << j) - 1;
        let forbidden = below & !closed;
        if let Some(next) = engine.extend_avoiding(closed, 1 << j, forbidden) {
            visit(next);
            descend(engine, next, j + 1, visit);
        }
    }
}

/// A proper closed set is maximal iff adding any missing element generates everything.
pub fn is_maximal_closed(engine: &ClosureEngine, closed: u64) -> bool {
    let full = engine.full();
    closed != full
        && crate::finite::mask::Ones(full & !closed).all(|a| engine.extend(closed, 1 << a) == full)
}
