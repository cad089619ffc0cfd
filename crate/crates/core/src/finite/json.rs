//! Cover-list interchange format:
//! `{"n": <int>, "covers": [[lo,hi],...], "labels": [<string>...]?}`.
//!
//! Serialization emits the Hasse covers sorted lexicographically, so a lattice
//! round-trips to identical tables.

use serde::{Deserialize, Serialize};

use super::lattice::{FiniteLattice, FiniteMeetSemilattice, FiniteStructure, Poset};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverList {
    pub n: usize,
    pub covers: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl CoverList {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("cover list serializes")
    }

    fn pairs(&self) -> Vec<(usize, usize)> {
        self.covers.iter().map(|&[a, b]| (a, b)).collect()
    }

    pub fn poset(&self) -> Result<Poset> {
        Poset::from_covers(self.n, &self.pairs())
    }

    pub fn to_lattice(&self) -> Result<FiniteLattice> {
        let l = FiniteLattice::from_covers(self.n, &self.pairs())?;
        match &self.labels {
            Some(ls) => l.with_labels(ls.clone()),
            None => Ok(l),
        }
    }

    pub fn to_meet_semilattice(&self) -> Result<FiniteMeetSemilattice> {
        let s = FiniteMeetSemilattice::from_covers(self.n, &self.pairs())?;
        match &self.labels {
            Some(ls) => s.with_labels(ls.clone()),
            None => Ok(s),
        }
    }

    pub fn from_lattice(l: &FiniteLattice) -> Self {
        Self {
            n: l.size(),
            covers: l.covers().into_iter().map(|(a, b)| [a, b]).collect(),
            labels: l.labels().map(<[String]>::to_vec),
        }
    }

    pub fn from_meet_semilattice(s: &FiniteMeetSemilattice) -> Self {
        Self {
            n: s.size(),
            covers: s.covers().into_iter().map(|(a, b)| [a, b]).collect(),
            labels: None,
        }
    }
}
