//! Non-generators, indispensable elements, maximal proper substructures and
//! their intersection for finite structures.
//!
//! Two exact routes are available. The subset scan closes every subset of the
//! carrier and applies the definitions literally; it is the oracle and is
//! capped at [`BRUTE_FORCE_BOUND`] elements. The closed-set route quantifies
//! only over substructures (`⟨X, a⟩ = ⟨⟨X⟩ ∪ {a}⟩`), which reaches carriers of
//! a few dozen elements.

use std::collections::BTreeMap;

use super::closure::ClosureEngine;
use super::closure_sets::{for_each_closed_set, is_maximal_closed};
use super::config::ClosureConfig;
use super::report::{Certificate, GeneratorReport, Strategy};
use crate::error::{Error, Result};
use crate::finite::lattice::FiniteStructure;
use crate::finite::mask::{Ones, SubsetMask, MASK_CAPACITY};

pub const BRUTE_FORCE_BOUND: usize = 16;

/// Size limits for [`analyze_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisLimits {
    /// Carriers up to this size use the subset scan.
    pub subset_scan: usize,
    /// Larger carriers up to this size use closed-set enumeration.
    pub closed_sets: usize,
}

impl Default for AnalysisLimits {
    fn default() -> Self {
        Self {
            subset_scan: BRUTE_FORCE_BOUND,
            closed_sets: BRUTE_FORCE_BOUND,
        }
    }
}

impl AnalysisLimits {
    pub fn extended(closed_sets: usize) -> Self {
        Self {
            subset_scan: BRUTE_FORCE_BOUND,
            closed_sets: closed_sets.min(MASK_CAPACITY),
        }
    }
}

fn check_brute_force(n: usize) -> Result<()> {
    if n > BRUTE_FORCE_BOUND {
        return Err(Error::BoundExceeded {
            what: "subset scan",
            size: n,
            bound: BRUTE_FORCE_BOUND,
        });
    }
    Ok(())
}

/// Closures of all `2^n` subsets, indexed by subset bits.
pub struct SubsetTable {
    engine: ClosureEngine,
    closure: Vec<u64>,
    /// Subsets ordered by increasing popcount, then value.
    order: Vec<u64>,
}

impl SubsetTable {
    pub fn new<S: FiniteStructure + ?Sized>(s: &S, cfg: &ClosureConfig) -> Result<Self> {
        let n = s.size();
        check_brute_force(n)?;
        let engine = ClosureEngine::new(s, cfg)?;
        let count = 1usize << n;
        let mut closure = vec![0u64; count];
        closure[0] = engine.close(0);
        for x in 1..count {
            // ⟨X⟩ = ⟨⟨X minus its top bit⟩ ∪ {top bit}⟩
            let hb = 63 - (x as u64).leading_zeros() as usize;
            let rest = x & !(1 << hb);
            closure[x] = engine.extend(closure[rest], 1 << hb);
        }
        let mut order: Vec<u64> = (0..count as u64).collect();
        order.sort_by_key(|&x| (x.count_ones(), x));
        Ok(Self {
            engine,
            closure,
            order,
        })
    }

    pub fn engine(&self) -> &ClosureEngine {
        &self.engine
    }

    pub fn close(&self, x: u64) -> u64 {
        self.closure[x as usize]
    }

    fn full(&self) -> u64 {
        self.engine.full()
    }

    /// First subset in scan order witnessing that `a` is a relative generator.
    pub fn relative_generator_witness(&self, a: usize) -> Option<u64> {
        let full = self.full();
        let bit = 1u64 << a;
        self.order
            .iter()
            .copied()
            .find(|&x| x & bit == 0 && self.close(x | bit) == full && self.close(x) != full)
    }

    pub fn maximal_closed_sets(&self) -> Vec<u64> {
        let full = self.full();
        (0..self.closure.len() as u64)
            .filter(|&x| x != full && self.close(x) == x)
            .filter(|&c| Ones(full & !c).all(|a| self.close(c | 1 << a) == full))
            .collect()
    }
}

/// Non-generators together with a relative-generator witness for every other element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonGenerators {
    pub gamma: SubsetMask,
    pub witnesses: BTreeMap<usize, SubsetMask>,
}

/// `a` is a non-generator iff for every `X`, `⟨X ∪ {a}⟩ = L` implies `⟨X⟩ = L`.
pub fn non_generators_bruteforce<S: FiniteStructure + ?Sized>(
    s: &S,
    cfg: &ClosureConfig,
) -> Result<NonGenerators> {
    let table = SubsetTable::new(s, cfg)?;
    Ok(non_generators_from_table(&table, s.size()))
}

fn non_generators_from_table(table: &SubsetTable, n: usize) -> NonGenerators {
    let mut gamma = SubsetMask::raw(n, 0);
    let mut witnesses = BTreeMap::new();
    for a in 0..n {
        match table.relative_generator_witness(a) {
            Some(x) => {
                witnesses.insert(a, SubsetMask::raw(n, x));
            }
            None => gamma.insert(a),
        }
    }
    NonGenerators { gamma, witnesses }
}

/// Elements whose removal leaves a substructure.
pub fn indispensable_elements<S: FiniteStructure + ?Sized>(
    s: &S,
    cfg: &ClosureConfig,
) -> Result<SubsetMask> {
    let e = ClosureEngine::new(s, cfg)?;
    Ok(indispensables_of(&e))
}

fn indispensables_of(e: &ClosureEngine) -> SubsetMask {
    let full = e.full();
    let bits = Ones(full)
        .filter(|&a| e.is_closed(full & !(1 << a)))
        .fold(0u64, |acc, a| acc | 1 << a);
    SubsetMask::raw(e.size(), bits)
}

/// Elements lying in every generating set, by scanning all subsets.
pub fn indispensable_elements_bruteforce<S: FiniteStructure + ?Sized>(
    s: &S,
    cfg: &ClosureConfig,
) -> Result<SubsetMask> {
    let table = SubsetTable::new(s, cfg)?;
    let full = table.full();
    let generating: Vec<u64> = (0..=full).filter(|&x| table.close(x) == full).collect();
    let bits = generating.iter().fold(full, |acc, &x| acc & x);
    Ok(SubsetMask::raw(s.size(), bits))
}

/// Meet-reducible elements with their canonical witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeetReducibles {
    pub reducible: SubsetMask,
    pub witnesses: BTreeMap<usize, SubsetMask>,
}

/// `a` is meet reducible iff `a = ⋀Y` for some `Y` not containing `a`. The
/// strict up-set of `a` is the canonical candidate: any such `Y` lies inside
/// it, so its meet is `a` whenever some `Y` works. The empty family only
/// counts when the empty-meet convention is on.
pub fn meet_reducible_elements<S: FiniteStructure + ?Sized>(
    s: &S,
    cfg: &ClosureConfig,
) -> Result<MeetReducibles> {
    let n = s.size();
    let mut reducible = SubsetMask::empty(n)?;
    let mut witnesses = BTreeMap::new();
    for a in 0..n {
        let above: Vec<usize> = (0..n).filter(|&y| y != a && s.leq(a, y)).collect();
        let holds = if above.is_empty() {
            cfg.include_empty_meet
        } else {
            above.iter().fold(s.top(), |acc, &y| s.meet(acc, y)) == a
        };
        if holds {
            reducible.insert(a);
            witnesses.insert(a, SubsetMask::from_indices(n, above)?);
        }
    }
    Ok(MeetReducibles {
        reducible,
        witnesses,
    })
}

pub fn maximal_proper_substructures<S: FiniteStructure + ?Sized>(
    s: &S,
    cfg: &ClosureConfig,
) -> Result<Vec<SubsetMask>> {
    let table = SubsetTable::new(s, cfg)?;
    Ok(table
        .maximal_closed_sets()
        .into_iter()
        .map(|m| SubsetMask::raw(s.size(), m))
        .collect())
}

fn intersect_all(n: usize, sets: &[SubsetMask]) -> SubsetMask {
    let full = SubsetMask::raw(n, crate::finite::mask::full_bits(n));
    sets.iter().fold(full, |acc, m| acc.intersection(m))
}

/// Intersection of the maximal proper substructures; the whole carrier if there are none.
pub fn frattini<S: FiniteStructure + ?Sized>(s: &S, cfg: &ClosureConfig) -> Result<SubsetMask> {
    Ok(intersect_all(s.size(), &maximal_proper_substructures(s, cfg)?))
}

pub fn analyze<S: FiniteStructure + ?Sized>(s: &S, cfg: &ClosureConfig) -> Result<GeneratorReport> {
    analyze_with(s, cfg, AnalysisLimits::default())
}

pub fn analyze_with<S: FiniteStructure + ?Sized>(
    s: &S,
    cfg: &ClosureConfig,
    limits: AnalysisLimits,
) -> Result<GeneratorReport> {
    let n = s.size();
    let bound = limits.subset_scan.min(BRUTE_FORCE_BOUND).max(limits.closed_sets.min(MASK_CAPACITY));
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "generator analysis",
            size: n,
            bound,
        });
    }
    let (engine, gamma, rel_witnesses, maximal, strategy) =
        if n <= limits.subset_scan.min(BRUTE_FORCE_BOUND) {
            let table = SubsetTable::new(s, cfg)?;
            let ng = non_generators_from_table(&table, n);
            let maximal = table.maximal_closed_sets();
            let engine = table.engine;
            (engine, ng.gamma, ng.witnesses, maximal, Strategy::SubsetScan)
        } else {
            let engine = ClosureEngine::new(s, cfg)?;
            let (gamma, witnesses, maximal) = closed_set_route(&engine);
            (engine, gamma, witnesses, maximal, Strategy::ClosedSetEnumeration)
        };

    let maximal: Vec<SubsetMask> = maximal.into_iter().map(|m| SubsetMask::raw(n, m)).collect();
    let phi = intersect_all(n, &maximal);
    let indispensables = indispensables_of(&engine);
    let reductions = if cfg.respect_joins && s.has_joins() {
        None
    } else {
        Some(meet_reducible_elements(s, cfg)?)
    };

    let mut witnesses: BTreeMap<usize, Vec<Certificate>> = BTreeMap::new();
    for (a, x) in rel_witnesses {
        witnesses
            .entry(a)
            .or_default()
            .push(Certificate::RelativeGeneratorWitness { x });
    }
    for a in indispensables.iter() {
        witnesses.entry(a).or_default().push(Certificate::ComplementClosed);
    }
    for a in phi.complement().iter() {
        if let Some(m) = maximal.iter().find(|m| !m.contains(a)) {
            witnesses
                .entry(a)
                .or_default()
                .push(Certificate::MaximalityWitness { excluded_by: *m });
        }
    }
    if let Some(r) = reductions {
        for a in gamma.iter() {
            if let Some(y) = r.witnesses.get(&a) {
                witnesses
                    .entry(a)
                    .or_default()
                    .push(Certificate::MeetReduction { y: *y });
            }
        }
    }

    Ok(GeneratorReport {
        gamma,
        phi,
        indispensables,
        relative_generators: gamma.complement(),
        maximal_substructures: maximal,
        gamma_is_substructure: engine.is_closed(gamma.bits()),
        gamma_equals_phi: gamma == phi,
        witnesses,
        strategy,
    })
}

type ClosedSetResult = (SubsetMask, BTreeMap<usize, SubsetMask>, Vec<u64>);

// a is a relative generator iff some proper substructure C has ⟨C ∪ {a}⟩ = L.
fn closed_set_route(engine: &ClosureEngine) -> ClosedSetResult {
    let n = engine.size();
    let full = engine.full();
    let mut candidates = full;
    let mut witnesses = BTreeMap::new();
    let mut maximal = Vec::new();
    for_each_closed_set(engine, |c| {
        if c == full {
            return;
        }
        let mut open = candidates & !c;
        while open != 0 {
            let a = open.trailing_zeros() as usize;
            open &= open - 1;
            if engine.extend(c, 1 << a) == full {
                candidates &= !(1 << a);
                witnesses.insert(a, SubsetMask::raw(n, c));
            }
        }
        if is_maximal_closed(engine, c) {
            maximal.push(c);
        }
    });
    maximal.sort_unstable();
    (SubsetMask::raw(n, candidates), witnesses, maximal)
}
