//! Generated substructures and the non-generator analysis built on them.

pub mod analysis;
pub mod closure;
pub mod closure_sets;
pub mod config;
pub mod report;

pub use analysis::{
    analyze, analyze_with, frattini, indispensable_elements, indispensable_elements_bruteforce,
    maximal_proper_substructures, meet_reducible_elements, non_generators_bruteforce,
    AnalysisLimits, MeetReducibles, NonGenerators, BRUTE_FORCE_BOUND,
};
pub use closure::{finitary_sublattice_closure, generate, is_substructure, ClosureEngine};
pub use closure_sets::{for_each_closed_set, is_maximal_closed};
pub use config::{ClosureConfig, Completeness};
pub use report::{Certificate, GeneratorReport, Strategy};
