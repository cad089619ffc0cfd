//! The meet-semilattice `c_0 > c_1 > c_2 > ... > d`: a descending ω-chain
//! with a bottom `d` added below it.
//!
//! Binary meets stay inside any subset (`c_i ∧ c_j = c_max(i,j)`), so the only
//! element a closure can add is `d`, as the meet of an infinite set of `c_i`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::generators::config::Completeness;

/// A subset of the chain: finitely many `c_i`, an optional tail
/// `{c_i : i ≥ i0}`, and optionally `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DualChainDesc {
    points: BTreeSet<u64>,
    tail: Option<u64>,
    d: bool,
}

impl DualChainDesc {
    pub fn new(points: impl IntoIterator<Item = u64>, tail: Option<u64>, d: bool) -> Self {
        let mut out = Self {
            points: points.into_iter().collect(),
            tail,
            d,
        };
        out.normalize();
        out
    }

    pub fn points(points: impl IntoIterator<Item = u64>) -> Self {
        Self::new(points, None, false)
    }

    /// `{c_i : i ≥ i0}`.
    pub fn ctail(i0: u64) -> Self {
        Self::new([], Some(i0), false)
    }

    pub fn whole() -> Self {
        Self::new([], Some(0), true)
    }

    /// The complement of `c_i`.
    pub fn without_c(i: u64) -> Self {
        Self::new(0..i, Some(i + 1), true)
    }

    fn normalize(&mut self) {
        if let Some(mut t) = self.tail {
            while t > 0 && self.points.contains(&(t - 1)) {
                t -= 1;
            }
            self.tail = Some(t);
            self.points.retain(|&i| i < t);
        }
    }

    pub fn contains_c(&self, i: u64) -> bool {
        self.points.contains(&i) || self.tail.is_some_and(|t| i >= t)
    }

    pub fn contains_d(&self) -> bool {
        self.d
    }

    pub fn tail(&self) -> Option<u64> {
        self.tail
    }

    pub fn is_whole(&self) -> bool {
        *self == Self::whole()
    }

    pub fn with_d(&self) -> Self {
        Self {
            d: true,
            ..self.clone()
        }
    }
}

impl fmt::Display for DualChainDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.points.iter().map(|i| format!("c_{i}")).collect();
        if let Some(t) = self.tail {
            parts.push(format!("c_i (i ≥ {t})"));
        }
        if self.d {
            parts.push("d".into());
        }
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Meet-closure of `x`. An infinite set of `c_i` has meet `d`, which is added
/// only when infinitary meets are respected.
pub fn dual_chain_closure(x: &DualChainDesc, completeness: Completeness) -> DualChainDesc {
    if x.tail.is_some() && completeness.infinitary_meets() {
        x.with_d()
    } else {
        x.clone()
    }
}

/// Status of `d` (and of the `c_i` up to a bound) in one completeness mode.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualChainVerdict {
    pub completeness: Completeness,
    /// The complement of `d` is closed.
    pub d_indispensable: bool,
    /// Every `c_i` with `i ≤ bound` has a closed complement.
    pub chain_indispensable_up_to: u64,
    pub chain_indispensable: bool,
    /// `⟨{c_i : i ∈ ℕ}⟩` contains `d`. Every generating set contains every
    /// indispensable `c_i`, so this makes `d` a non-generator.
    pub d_non_generator: bool,
    pub closure_of_chain: String,
}

pub fn dual_chain_verdict(completeness: Completeness, bound: u64) -> DualChainVerdict {
    let all_c = DualChainDesc::ctail(0);
    let closure = dual_chain_closure(&all_c, completeness);
    let chain_indispensable = (0..=bound).all(|i| {
        let comp = DualChainDesc::without_c(i);
        let c = dual_chain_closure(&comp, completeness);
        c == comp && !c.contains_c(i)
    });
    DualChainVerdict {
        completeness,
        d_indispensable: !closure.contains_d(),
        chain_indispensable_up_to: bound,
        chain_indispensable,
        d_non_generator: chain_indispensable && closure.is_whole(),
        closure_of_chain: closure.to_string(),
    }
}
