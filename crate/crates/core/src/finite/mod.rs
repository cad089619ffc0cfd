//! Finite lattices, meet-semilattices and subset masks.

pub mod construct;
pub mod enumerate;
pub mod json;
pub mod lattice;
pub mod mask;

pub use construct::{add_bottom, add_top, chain, lex_product, product};
pub use enumerate::{canonical_form, enumerate_lattices, enumerate_meet_semilattices};
pub use json::CoverList;
pub use lattice::{FiniteLattice, FiniteMeetSemilattice, FiniteStructure, Poset};
pub use mask::SubsetMask;
