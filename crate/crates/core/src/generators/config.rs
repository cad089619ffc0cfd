use serde::{Deserialize, Serialize};

/// Which infinitary operations a substructure must respect.
///
/// On a finite carrier every mode yields the same closures; the distinction
/// only matters for the symbolic countable lattices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Completeness {
    /// Binary operations only.
    Finitary,
    /// Arbitrary countable meets and joins.
    CountablyComplete,
    /// Binary meets and countable joins.
    JoinComplete,
}

impl Completeness {
    pub fn infinitary_joins(self) -> bool {
        !matches!(self, Completeness::Finitary)
    }

    pub fn infinitary_meets(self) -> bool {
        matches!(self, Completeness::CountablyComplete)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClosureConfig {
    /// Lattice signature when true, meet-semilattice signature otherwise.
    pub respect_joins: bool,
    /// Closed sets contain the top (the meet of the empty family).
    pub include_empty_meet: bool,
    /// Closed sets contain the bottom; ignored without joins.
    pub include_empty_join: bool,
    pub completeness: Completeness,
}

impl ClosureConfig {
    /// Complete sublattices sharing top and bottom with the parent.
    pub const fn lattice() -> Self {
        Self {
            respect_joins: true,
            include_empty_meet: true,
            include_empty_join: true,
            completeness: Completeness::CountablyComplete,
        }
    }

    /// Complete subsemilattices sharing the top with the parent.
    pub const fn semilattice() -> Self {
        Self {
            respect_joins: false,
            include_empty_meet: true,
            include_empty_join: false,
            completeness: Completeness::CountablyComplete,
        }
    }

    /// Drops both empty-operation conventions.
    pub const fn without_extremes(self) -> Self {
        Self {
            include_empty_meet: false,
            include_empty_join: false,
            ..self
        }
    }

    pub const fn with_completeness(self, completeness: Completeness) -> Self {
        Self {
            completeness,
            ..self
        }
    }

    pub fn has_extremes(&self) -> bool {
        self.include_empty_meet || (self.respect_joins && self.include_empty_join)
    }
}

impl Default for ClosureConfig {
    fn default() -> Self {
        Self::lattice()
    }
}
