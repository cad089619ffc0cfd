use super::lattice::{FiniteLattice, FiniteStructure, CONSTRUCTION_CAP};
use crate::error::{Error, Result};

/// The chain `0 < 1 < ... < n-1`.
pub fn chain(n: usize) -> Result<FiniteLattice> {
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    FiniteLattice::from_parts(n, |a, b| a <= b, usize::min, usize::max, 0, n - 1)
}

fn capped(size: usize) -> Result<usize> {
    if size > CONSTRUCTION_CAP {
        Err(Error::CapacityExceeded {
            size,
            cap: CONSTRUCTION_CAP,
        })
    } else {
        Ok(size)
    }
}

fn pair_labels(a: &FiniteLattice, b: &FiniteLattice, sep: &str) -> Vec<String> {
    let mut out = Vec::with_capacity(a.size() * b.size());
    for x in 0..a.size() {
        for y in 0..b.size() {
            out.push(format!("({}{sep}{})", a.label(x), b.label(y)));
        }
    }
    out
}

/// Componentwise product; `(x, y)` has index `x * |b| + y`.
pub fn product(a: &FiniteLattice, b: &FiniteLattice) -> Result<FiniteLattice> {
    let (na, nb) = (a.size(), b.size());
    let n = capped(na * nb)?;
    let split = |i: usize| (i / nb, i % nb);
    let l = FiniteLattice::from_parts(
        n,
        |i, j| {
            let ((x1, y1), (x2, y2)) = (split(i), split(j));
            a.leq(x1, x2) && b.leq(y1, y2)
        },
        |i, j| {
            let ((x1, y1), (x2, y2)) = (split(i), split(j));
            a.meet(x1, x2) * nb + b.meet(y1, y2)
        },
        |i, j| {
            let ((x1, y1), (x2, y2)) = (split(i), split(j));
            a.join_of(x1, x2) * nb + b.join_of(y1, y2)
        },
        a.bottom_index() * nb + b.bottom_index(),
        a.top() * nb + b.top(),
    )?;
    if a.labels().is_some() || b.labels().is_some() {
        l.with_labels(pair_labels(a, b, ","))
    } else {
        Ok(l)
    }
}

/// Chain position of every element (its index in ascending order).
fn chain_positions(c: &FiniteLattice) -> Result<Vec<usize>> {
    if !c.is_chain() {
        return Err(Error::NotAChain);
    }
    let n = c.size();
    Ok((0..n)
        .map(|x| (0..n).filter(|&y| y != x && c.leq(y, x)).count())
        .collect())
}

/// Lexicographic product of two chains. The result is a chain whose element
/// `a * |b| + b` is the pair `a ⋉ b`, and its indices follow the order of the
/// inputs' chain positions.
pub fn lex_product(a: &FiniteLattice, b: &FiniteLattice) -> Result<FiniteLattice> {
    let pa = chain_positions(a)?;
    let pb = chain_positions(b)?;
    let nb = b.size();
    let n = capped(a.size() * nb)?;
    let key = |i: usize| (pa[i / nb], pb[i % nb]);
    let lo = |i: usize, j: usize| if key(i) <= key(j) { i } else { j };
    let hi = |i: usize, j: usize| if key(i) >= key(j) { i } else { j };
    let bottom = (0..n).min_by_key(|&i| key(i)).unwrap_or(0);
    let top = (0..n).max_by_key(|&i| key(i)).unwrap_or(0);
    let l = FiniteLattice::from_parts(n, |i, j| key(i) <= key(j), lo, hi, bottom, top)?;
    if a.labels().is_some() || b.labels().is_some() {
        let labels = (0..n)
            .map(|i| format!("{}⋉{}", a.label(i / nb), b.label(i % nb)))
            .collect();
        l.with_labels(labels)
    } else {
        Ok(l)
    }
}

/// Adjoins a new maximum with index `n`.
pub fn add_top(a: &FiniteLattice) -> Result<FiniteLattice> {
    adjoin(a, true, "⊤")
}

/// Adjoins a new minimum with index `n`.
pub fn add_bottom(a: &FiniteLattice) -> Result<FiniteLattice> {
    adjoin(a, false, "⊥")
}

pub(crate) fn adjoin(a: &FiniteLattice, top: bool, label: &str) -> Result<FiniteLattice> {
    let old = a.size();
    let n = capped(old + 1)?;
    let new = old;
    let l = if top {
        FiniteLattice::from_parts(
            n,
            |i, j| j == new || (i != new && a.leq(i, j)),
            |i, j| match (i == new, j == new) {
                (true, _) => j,
                (_, true) => i,
                _ => a.meet(i, j),
            },
            |i, j| {
                if i == new || j == new {
                    new
                } else {
                    a.join_of(i, j)
                }
            },
            a.bottom_index(),
            new,
        )?
    } else {
        FiniteLattice::from_parts(
            n,
            |i, j| i == new || (j != new && a.leq(i, j)),
            |i, j| {
                if i == new || j == new {
                    new
                } else {
                    a.meet(i, j)
                }
            },
            |i, j| match (i == new, j == new) {
                (true, _) => j,
                (_, true) => i,
                _ => a.join_of(i, j),
            },
            new,
            a.top(),
        )?
    };
    match a.labels() {
        Some(ls) => {
            let mut ls = ls.to_vec();
            ls.push(label.to_string());
            l.with_labels(ls)
        }
        None => Ok(l),
    }
}
