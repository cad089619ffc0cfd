//! Generated substructures of finite lattices and semilattices.

use super::config::ClosureConfig;
use crate::error::Result;
use crate::finite::lattice::{FiniteLattice, FiniteStructure};
use crate::finite::mask::{full_bits, Ones, SubsetMask};

/// Precomputed operation tables for repeated closure computations over a
/// carrier of at most 64 elements.
#[derive(Debug, Clone)]
pub struct ClosureEngine {
    n: usize,
    meet: Vec<u8>,
    join: Option<Vec<u8>>,
    forced: u64,
    full: u64,
}

impl ClosureEngine {
    pub fn new<S: FiniteStructure + ?Sized>(s: &S, cfg: &ClosureConfig) -> Result<Self> {
        let n = s.size();
        SubsetMask::empty(n)?;
        let mut meet = vec![0u8; n * n];
        let mut join = (cfg.respect_joins && s.has_joins()).then(|| vec![0u8; n * n]);
        for a in 0..n {
            for b in 0..n {
                meet[a * n + b] = s.meet(a, b) as u8;
                if let Some(j) = join.as_mut() {
                    j[a * n + b] = s.join(a, b).expect("lattice has joins") as u8;
                }
            }
        }
        let mut forced = 0u64;
        if cfg.include_empty_meet {
            forced |= 1 << s.top();
        }
        if join.is_some() && cfg.include_empty_join {
            if let Some(b) = s.bottom() {
                forced |= 1 << b;
            }
        }
        Ok(Self {
            n,
            meet,
            join,
            forced,
            full: full_bits(n),
        })
    }

    /// Binary meets and joins only, no forced extremes.
    pub fn finitary_lattice(l: &FiniteLattice) -> Result<Self> {
        let cfg = ClosureConfig::lattice().without_extremes();
        Self::new(l, &cfg)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn full(&self) -> u64 {
        self.full
    }

    /// Elements every closed set must contain.
    pub fn forced(&self) -> u64 {
        self.forced
    }

    pub fn close(&self, x: u64) -> u64 {
        self.extend(0, x | self.forced)
    }

    /// Closure of `closed ∪ add`, assuming `closed` is already closed.
    pub fn extend(&self, closed: u64, add: u64) -> u64 {
        self.extend_avoiding(closed, add, 0)
            .expect("nothing forbidden")
    }

    /// Like [`extend`](Self::extend), but gives up as soon as an element of
    /// `forbidden` enters the set.
    pub fn extend_avoiding(&self, closed: u64, add: u64, forbidden: u64) -> Option<u64> {
        let mut todo = add & !closed;
        let mut set = closed | todo;
        if set & forbidden != 0 {
            return None;
        }
        let n = self.n;
        while todo != 0 {
            let e = todo.trailing_zeros() as usize;
            todo &= todo - 1;
            let mrow = &self.meet[e * n..(e + 1) * n];
            let jrow = self.join.as_ref().map(|j| &j[e * n..(e + 1) * n]);
            let mut new = 0u64;
            for y in Ones(set) {
                new |= 1 << mrow[y];
                if let Some(jr) = jrow {
                    new |= 1 << jr[y];
                }
            }
            new &= !set;
            if new & forbidden != 0 {
                return None;
            }
            set |= new;
            todo |= new;
        }
        Some(set)
    }

    pub fn is_closed(&self, x: u64) -> bool {
        self.close(x) == x
    }
}

/// Least closed superset of `x`.
pub fn generate<S: FiniteStructure + ?Sized>(
    s: &S,
    x: &SubsetMask,
    cfg: &ClosureConfig,
) -> Result<SubsetMask> {
    let e = ClosureEngine::new(s, cfg)?;
    Ok(SubsetMask::raw(s.size(), e.close(x.bits())))
}

pub fn is_substructure<S: FiniteStructure + ?Sized>(
    s: &S,
    c: &SubsetMask,
    cfg: &ClosureConfig,
) -> Result<bool> {
    Ok(generate(s, c, cfg)? == *c)
}

/// Closure under binary meets and joins, without convention-forced extremes.
pub fn finitary_sublattice_closure(l: &FiniteLattice, x: &SubsetMask) -> Result<SubsetMask> {
    let e = ClosureEngine::finitary_lattice(l)?;
    Ok(SubsetMask::raw(l.size(), e.close(x.bits())))
}
