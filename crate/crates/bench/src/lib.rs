//! Fixtures shared by the benchmarks.

use latgen_core::{chain, product, FiniteLattice};

/// The Boolean lattice with `2^k` elements, as an iterated product of 2-chains.
pub fn boolean_lattice(k: usize) -> FiniteLattice {
    let two = chain(2).expect("2-chain");
    (1..k).fold(two.clone(), |acc, _| product(&acc, &two).expect("within capacity"))
}
