//! Exact symbolic computation in the countable lattices `K × {0, 1}` with
//! `K = ω + 1` or `K = ω² + 1`, and in the dual ω-chain.

pub mod claims;
pub mod closure;
pub mod desc;
pub mod dual_chain;
pub mod forcing;
pub mod ordinal;
pub mod truncate;

pub use claims::{
    certify_outside_gamma, element_window, phi_catalog_disagreements,
    excluding_instance, gamma_formula, m_set, maximal_catalog, nongenerator_membership_screen,
    phi_formula, relative_generator_certificate, verify_catalog, verify_gamma_not_sublattice,
    CatalogInstance, GammaVerification, ScreenConfig, ScreenResult, SymCertificate, DEFAULT_INSTANCE_BOUND,
    DEFAULT_SEED,
};
pub use closure::{close_positive, closed_interval, complete_closure, DEFAULT_MAX_ROUNDS};
pub use desc::{Block, CoFinite, Positive, SetDesc};
pub use dual_chain::{dual_chain_closure, dual_chain_verdict, DualChainDesc, DualChainVerdict};
pub use forcing::{
    close_cofinite, forced_elements, forcing_of, is_complete_sublattice, is_maximal_complete_sublattice,
    ForcedElement, Forcing, SublatticeCheck,
};
pub use ordinal::{sym_join, sym_meet, Family, OrdK, SymElem, SymLattice};
pub use truncate::{truncate, truncation_elem};
