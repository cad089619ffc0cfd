//! Labeled enumeration of small lattices and meet-semilattices.
//!
//! Every strict partial order on `0..n` is generated exactly once by
//! backtracking over the unordered pairs, pruning as soon as a fully assigned
//! triple violates transitivity. Structures are then filtered by the lattice
//! (resp. meet-semilattice) condition.

use super::lattice::{FiniteLattice, FiniteMeetSemilattice, FiniteStructure, Poset};
use crate::error::{Error, Result};

/// Largest carrier accepted by the enumerators.
pub const ENUMERATION_BOUND: usize = 6;

/// Largest carrier accepted by [`canonical_form`].
pub const CANONICAL_BOUND: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Rel {
    Incomparable,
    Less,
    Greater,
}

struct PosetSearch {
    n: usize,
    pairs: Vec<(usize, usize)>,
    pair_index: Vec<usize>,
    rel: Vec<Rel>,
}

impl PosetSearch {
    fn new(n: usize) -> Self {
        let mut pairs = Vec::new();
        let mut pair_index = vec![usize::MAX; n * n];
        for i in 0..n {
            for j in i + 1..n {
                pair_index[i * n + j] = pairs.len();
                pair_index[j * n + i] = pairs.len();
                pairs.push((i, j));
            }
        }
        let rel = vec![Rel::Incomparable; pairs.len()];
        Self {
            n,
            pairs,
            pair_index,
            rel,
        }
    }

    fn lt(&self, x: usize, y: usize) -> bool {
        if x == y {
            return false;
        }
        let r = self.rel[self.pair_index[x * self.n + y]];
        if x < y {
            r == Rel::Less
        } else {
            r == Rel::Greater
        }
    }

    fn triple_ok(&self, a: usize, b: usize, c: usize) -> bool {
        let t = [a, b, c];
        for &x in &t {
            for &y in &t {
                for &z in &t {
                    if x != y && y != z && x != z && self.lt(x, y) && self.lt(y, z) && !self.lt(x, z)
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, depth: usize, visit: &mut dyn FnMut(&Self)) {
        if depth == self.pairs.len() {
            visit(self);
            return;
        }
        let (i, j) = self.pairs[depth];
        for r in [Rel::Incomparable, Rel::Less, Rel::Greater] {
            self.rel[depth] = r;
            let ok = (0..self.n).filter(|&k| k != i && k != j).all(|k| {
                let done = self.pair_index[i * self.n + k] < depth
                    && self.pair_index[j * self.n + k] < depth;
                !done || self.triple_ok(i, j, k)
            });
            if ok {
                self.run(depth + 1, visit);
            }
        }
        self.rel[depth] = Rel::Incomparable;
    }
}

/// Calls `visit` once for every labeled partial order on `0..n`.
pub fn for_each_poset(n: usize, mut visit: impl FnMut(&Poset)) -> Result<()> {
    check_bound(n)?;
    let mut search = PosetSearch::new(n);
    search.run(0, &mut |s| {
        let p = Poset::from_leq(s.n, |x, y| x == y || s.lt(x, y)).expect("search yields orders");
        visit(&p);
    });
    Ok(())
}

fn check_bound(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    if n > ENUMERATION_BOUND {
        return Err(Error::BoundExceeded {
            what: "enumeration",
            size: n,
            bound: ENUMERATION_BOUND,
        });
    }
    Ok(())
}

/// Every labeled lattice on `n` elements, each exactly once.
pub fn enumerate_lattices(n: usize) -> Result<impl Iterator<Item = FiniteLattice>> {
    let mut out = Vec::new();
    for_each_poset(n, |p| {
        if let Ok(l) = FiniteLattice::from_poset(p) {
            out.push(l);
        }
    })?;
    Ok(out.into_iter())
}

/// Every labeled meet-semilattice with a maximum on `n` elements.
pub fn enumerate_meet_semilattices(n: usize) -> Result<impl Iterator<Item = FiniteMeetSemilattice>> {
    let mut out = Vec::new();
    for_each_poset(n, |p| {
        if let Ok(s) = FiniteMeetSemilattice::from_poset(p) {
            out.push(s);
        }
    })?;
    Ok(out.into_iter())
}

/// Lexicographically least order matrix over all relabelings; two structures
/// are isomorphic as posets iff their canonical forms agree.
pub fn canonical_form<S: FiniteStructure>(s: &S) -> Result<Vec<bool>> {
    let n = s.size();
    if n > CANONICAL_BOUND {
        return Err(Error::BoundExceeded {
            what: "canonical form",
            size: n,
            bound: CANONICAL_BOUND,
        });
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<bool>> = None;
    loop {
        let code: Vec<bool> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| s.leq(perm[i], perm[j]))
            .collect();
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(best.unwrap_or_default())
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
