use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::closure::ClosureEngine;
use crate::finite::mask::SubsetMask;

/// Machine-checkable evidence attached to a single element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `⟨x ∪ {a}⟩` is the whole carrier while `⟨x⟩` is not.
    RelativeGeneratorWitness { x: SubsetMask },
    /// `a ∉ y` and `⋀y = a`.
    MeetReduction { y: SubsetMask },
    /// The carrier minus `a` is a substructure.
    ComplementClosed,
    /// A maximal proper substructure that omits `a`.
    MaximalityWitness { excluded_by: SubsetMask },
}

impl Certificate {
    /// Re-checks the certificate against the operation tables.
    ///
    /// `meet_all` evaluates meets of families (used for meet reductions).
    pub fn check(
        &self,
        engine: &ClosureEngine,
        a: usize,
        meet_all: impl Fn(&SubsetMask) -> Option<usize>,
    ) -> bool {
        let full = engine.full();
        let bit = 1u64 << a;
        match self {
            Certificate::RelativeGeneratorWitness { x } => {
                engine.close(x.bits() | bit) == full && engine.close(x.bits()) != full
            }
            Certificate::MeetReduction { y } => !y.contains(a) && meet_all(y) == Some(a),
            Certificate::ComplementClosed => engine.is_closed(full & !bit),
            Certificate::MaximalityWitness { excluded_by } => {
                let m = excluded_by.bits();
                engine.is_closed(m)
                    && m != full
                    && m & bit == 0
                    && super::closure_sets::is_maximal_closed(engine, m)
            }
        }
    }
}

/// How a report was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Every subset of the carrier was closed.
    SubsetScan,
    /// Closed sets were enumerated directly.
    ClosedSetEnumeration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorReport {
    pub gamma: SubsetMask,
    pub phi: SubsetMask,
    pub indispensables: SubsetMask,
    pub relative_generators: SubsetMask,
    pub maximal_substructures: Vec<SubsetMask>,
    pub gamma_is_substructure: bool,
    pub gamma_equals_phi: bool,
    pub witnesses: BTreeMap<usize, Vec<Certificate>>,
    pub strategy: Strategy,
}

impl GeneratorReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Structural invariants every report satisfies.
    pub fn check_invariants(&self) -> Result<(), String> {
        if self.relative_generators != self.gamma.complement() {
            return Err("relative generators are not the complement of gamma".into());
        }
        if !self.gamma.is_subset(&self.phi) {
            return Err("gamma is not contained in phi".into());
        }
        if !self.indispensables.is_subset(&self.relative_generators) {
            return Err("an indispensable element is a non-generator".into());
        }
        Ok(())
    }
}

impl Serialize for GeneratorReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(7))?;
        m.serialize_entry("gamma", &self.gamma)?;
        m.serialize_entry("phi", &self.phi)?;
        m.serialize_entry("indispensable", &self.indispensables)?;
        m.serialize_entry("maximal", &self.maximal_substructures)?;
        m.serialize_entry("gamma_is_substructure", &self.gamma_is_substructure)?;
        m.serialize_entry("gamma_equals_phi", &self.gamma_equals_phi)?;
        m.serialize_entry("witnesses", &self.witnesses)?;
        m.end()
    }
}
