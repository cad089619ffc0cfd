//! The single ω-ary operation `f(x_0, x_1, ...) = ⋁_i (x_{2i} ∧ x_{2i+1})`
//! evaluated on eventually periodic sequences.
//!
//! Binary meets and countable joins are both expressible through `f`:
//! `f(x, y, x, y, ...) = x ∧ y` and `f(x_0, x_0, x_1, x_1, ..., x_k, x_k, ...) = x_0 ∨ ... ∨ x_k`.

use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::finite::lattice::{FiniteLattice, FiniteStructure};
use crate::symbolic::ordinal::{SymElem, SymLattice};

/// Binary lattice operations on some element type.
pub trait LatticeOps {
    type Elem: Copy + Eq + Debug;
    fn meet(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn join(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
}

impl LatticeOps for FiniteLattice {
    type Elem = usize;

    fn meet(&self, a: usize, b: usize) -> usize {
        FiniteStructure::meet(self, a, b)
    }

    fn join(&self, a: usize, b: usize) -> usize {
        self.join_of(a, b)
    }
}

impl LatticeOps for SymLattice {
    type Elem = SymElem;

    fn meet(&self, a: SymElem, b: SymElem) -> SymElem {
        a.meet(b)
    }

    fn join(&self, a: SymElem, b: SymElem) -> SymElem {
        a.join(b)
    }
}

/// `prefix` followed by `cycle` repeated forever. An eventually constant
/// sequence has a cycle of length one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaSeq<E> {
    prefix: Vec<E>,
    cycle: Vec<E>,
}

impl<E: Copy> OmegaSeq<E> {
    pub fn periodic(prefix: Vec<E>, cycle: Vec<E>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::Parse("an ω-sequence needs a nonempty repeating part".into()));
        }
        Ok(Self { prefix, cycle })
    }

    pub fn eventually_constant(prefix: Vec<E>, tail: E) -> Self {
        Self {
            prefix,
            cycle: vec![tail],
        }
    }

    pub fn constant(c: E) -> Self {
        Self::eventually_constant(Vec::new(), c)
    }

    /// `(x, y, x, y, ...)`, whose value is `x ∧ y`.
    pub fn meet_encoding(x: E, y: E) -> Self {
        Self {
            prefix: Vec::new(),
            cycle: vec![x, y],
        }
    }

    /// `(x_0, x_0, ..., x_k, x_k, x_k, ...)`, whose value is `x_0 ∨ ... ∨ x_k`.
    pub fn join_encoding(xs: &[E]) -> Result<Self> {
        let last = *xs
            .last()
            .ok_or_else(|| Error::Parse("the join encoding needs at least one element".into()))?;
        Ok(Self::eventually_constant(
            xs.iter().flat_map(|&x| [x, x]).collect(),
            last,
        ))
    }

    pub fn get(&self, i: usize) -> E {
        match self.prefix.get(i) {
            Some(&x) => x,
            None => self.cycle[(i - self.prefix.len()) % self.cycle.len()],
        }
    }

    /// Number of pairs `(x_{2i}, x_{2i+1})` after which the pairs repeat:
    /// past the prefix, pair `i + |cycle|` equals pair `i`.
    fn pair_span(&self) -> usize {
        self.prefix.len().div_ceil(2) + self.cycle.len()
    }
}

/// `⋁_i (x_{2i} ∧ x_{2i+1})`. The pairs are eventually periodic, so the
/// countable join is the finite join over one period.
pub fn omega_op_eval<L: LatticeOps>(lattice: &L, seq: &OmegaSeq<L::Elem>) -> L::Elem {
    (0..seq.pair_span())
        .map(|i| lattice.meet(seq.get(2 * i), seq.get(2 * i + 1)))
        .reduce(|acc, x| lattice.join(acc, x))
        .expect("at least one pair")
}
