//! Generator theory for finite and countable lattices and semilattices:
//! generated substructures, non-generators, indispensable elements, maximal
//! proper substructures and their intersection.
//!
//! * [`finite`] — finite lattices and meet-semilattices with operation tables.
//! * [`generators`] — closure and the exhaustive non-generator analysis.
//! * [`symbolic`] — exact closure in `K × {0, 1}` for `K = ω + 1, ω² + 1`.
//! * [`omega_op`] — the single ω-ary operation expressing meets and joins.

pub mod error;
pub mod finite;
pub mod generators;
pub mod omega_op;
pub mod symbolic;

pub use error::{Error, Result};
pub use finite::{
    add_bottom, add_top, chain, lex_product, product, CoverList, FiniteLattice, FiniteMeetSemilattice,
    FiniteStructure, SubsetMask,
};
pub use generators::{analyze, analyze_with, AnalysisLimits, ClosureConfig, Completeness, GeneratorReport};
pub use omega_op::{omega_op_eval, LatticeOps, OmegaSeq};
pub use symbolic::{Family, OrdK, SymElem};
