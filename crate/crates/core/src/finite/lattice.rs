//! Finite lattices and meet-semilattices with explicit operation tables.
//!
//! Elements are dense indices `0..n`. Construction goes through a [`Poset`]
//! (the reflexive-transitive closure of a cover relation); glbs and lubs are
//! then tabulated and checked for existence.

use crate::error::{Error, Result};

/// Size cap for every construction operation.
pub const CONSTRUCTION_CAP: usize = 4096;

/// Common read-only view of a finite structure whose substructures are
/// closed under meets and, when present, joins.
pub trait FiniteStructure {
    fn size(&self) -> usize;
    fn leq(&self, a: usize, b: usize) -> bool;
    fn meet(&self, a: usize, b: usize) -> usize;
    /// `None` for meet-semilattices.
    fn join(&self, a: usize, b: usize) -> Option<usize>;
    fn top(&self) -> usize;
    fn bottom(&self) -> Option<usize>;
    fn label(&self, i: usize) -> String;

    fn has_joins(&self) -> bool {
        self.bottom().is_some()
    }
}

/// Dense bitset rows, one per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BitRows {
    words: usize,
    data: Vec<u64>,
}

impl BitRows {
    pub(crate) fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Self {
            words,
            data: vec![0; words * n],
        }
    }

    pub(crate) fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.words..(i + 1) * self.words]
    }

    pub(crate) fn get(&self, i: usize, j: usize) -> bool {
        self.row(i)[j / 64] >> (j % 64) & 1 == 1
    }

    pub(crate) fn set(&mut self, i: usize, j: usize) {
        self.row_mut(i)[j / 64] |= 1 << (j % 64);
    }

    fn or_row_into(&mut self, src: usize, dst: usize) {
        for w in 0..self.words {
            let v = self.data[src * self.words + w];
            self.data[dst * self.words + w] |= v;
        }
    }
}

/// A finite partial order stored as down-sets (`down[b]` contains `a` iff `a <= b`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    down: BitRows,
    up: BitRows,
    /// A linear extension: `topo[k]` is the element of rank `k`.
    topo: Vec<usize>,
    rank: Vec<usize>,
}

impl Poset {
    /// Reflexive-transitive closure of a cover list.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        if n > CONSTRUCTION_CAP {
            return Err(Error::CapacityExceeded {
                size: n,
                cap: CONSTRUCTION_CAP,
            });
        }
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        let mut seen = std::collections::HashSet::with_capacity(covers.len());
        for &(lo, hi) in covers {
            for idx in [lo, hi] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange { index: idx, size: n });
                }
            }
            if lo == hi {
                return Err(Error::CyclicCovers);
            }
            if !seen.insert((lo, hi)) {
                return Err(Error::DuplicateCover(lo, hi));
            }
            succ[lo].push(hi);
            indeg[hi] += 1;
        }
        // Kahn's algorithm; smallest index first keeps the extension deterministic.
        let mut ready: std::collections::BTreeSet<usize> =
            (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            topo.push(v);
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.insert(w);
                }
            }
        }
        if topo.len() != n {
            return Err(Error::CyclicCovers);
        }
        let mut down = BitRows::new(n);
        for &v in &topo {
            down.set(v, v);
        }
        for &v in &topo {
            for &w in &succ[v] {
                down.or_row_into(v, w);
            }
        }
        Ok(Self::from_down_sets(n, down, topo))
    }

    /// Builds a poset from a full order matrix, checking the partial-order axioms.
    pub fn from_leq(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        if n > CONSTRUCTION_CAP {
            return Err(Error::CapacityExceeded {
                size: n,
                cap: CONSTRUCTION_CAP,
            });
        }
        let mut down = BitRows::new(n);
        for a in 0..n {
            for b in 0..n {
                if leq(a, b) {
                    down.set(b, a);
                }
            }
        }
        for a in 0..n {
            if !down.get(a, a) {
                return Err(Error::NotASemilattice(format!("order not reflexive at {a}")));
            }
            for b in 0..n {
                if a != b && down.get(b, a) && down.get(a, b) {
                    return Err(Error::CyclicCovers);
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !down.get(b, a) {
                    continue;
                }
                for c in 0..n {
                    if down.get(c, b) && !down.get(c, a) {
                        return Err(Error::NotASemilattice(format!(
                            "order not transitive at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let mut topo: Vec<usize> = (0..n).collect();
        // Sorting by down-set size yields a linear extension.
        topo.sort_by_key(|&v| (down.row(v).iter().map(|w| w.count_ones()).sum::<u32>(), v));
        Ok(Self::from_down_sets(n, down, topo))
    }

    fn from_down_sets(n: usize, down: BitRows, topo: Vec<usize>) -> Self {
        let mut up = BitRows::new(n);
        for b in 0..n {
            for a in 0..n {
                if down.get(b, a) {
                    up.set(a, b);
                }
            }
        }
        let mut rank = vec![0; n];
        for (k, &v) in topo.iter().enumerate() {
            rank[v] = k;
        }
        Self {
            n,
            down,
            up,
            topo,
            rank,
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.down.get(b, a)
    }

    /// Greatest common lower bound, if one exists.
    pub fn glb(&self, a: usize, b: usize) -> Option<usize> {
        self.extreme_of(self.down.row(a), self.down.row(b), true)
    }

    /// Least common upper bound, if one exists.
    pub fn lub(&self, a: usize, b: usize) -> Option<usize> {
        self.extreme_of(self.up.row(a), self.up.row(b), false)
    }

    // The greatest element of a set, if it exists, has the highest rank in any
    // linear extension; it suffices to test that single candidate.
    fn extreme_of(&self, ra: &[u64], rb: &[u64], greatest: bool) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (w, (&x, &y)) in ra.iter().zip(rb).enumerate() {
            let mut bits = x & y;
            while bits != 0 {
                let i = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                best = match best {
                    None => Some(i),
                    Some(b) if (self.rank[i] > self.rank[b]) == greatest => Some(i),
                    keep => keep,
                };
            }
        }
        let c = best?;
        let rows = if greatest { &self.down } else { &self.up };
        let cand = rows.row(c);
        let ok = ra
            .iter()
            .zip(rb)
            .zip(cand)
            .all(|((&x, &y), &z)| x & y == z);
        ok.then_some(c)
    }

    /// The unique maximum, if any.
    pub fn maximum(&self) -> Option<usize> {
        let m = *self.topo.last()?;
        (0..self.n).all(|x| self.leq(x, m)).then_some(m)
    }

    /// The unique minimum, if any.
    pub fn minimum(&self) -> Option<usize> {
        let m = *self.topo.first()?;
        (0..self.n).all(|x| self.leq(m, x)).then_some(m)
    }

    /// Hasse diagram edges, sorted lexicographically.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if a == b || !self.leq(a, b) {
                    continue;
                }
                // a < b is a cover iff no c with a < c < b.
                let between = self
                    .up
                    .row(a)
                    .iter()
                    .zip(self.down.row(b))
                    .map(|(&u, &d)| (u & d).count_ones())
                    .sum::<u32>();
                if between == 2 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_chain(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.leq(a, b) || self.leq(b, a)))
    }

    /// Adjoins a new maximum (index `n`) above every maximal element.
    pub fn add_top(&self) -> Result<Self> {
        let mut covers = self.covers();
        let new = self.n;
        covers.extend(
            (0..self.n)
                .filter(|&a| (0..self.n).all(|b| b == a || !self.leq(a, b)))
                .map(|a| (a, new)),
        );
        Self::from_covers(self.n + 1, &covers)
    }

    /// Adjoins a new minimum (index `n`) below every minimal element.
    pub fn add_bottom(&self) -> Result<Self> {
        let mut covers = self.covers();
        let new = self.n;
        covers.extend(
            (0..self.n)
                .filter(|&a| (0..self.n).all(|b| b == a || !self.leq(b, a)))
                .map(|a| (new, a)),
        );
        Self::from_covers(self.n + 1, &covers)
    }
}

fn check_labels(n: usize, labels: &Option<Vec<String>>) -> Result<()> {
    match labels {
        Some(l) if l.len() != n => Err(Error::Parse(format!(
            "expected {n} labels, found {}",
            l.len()
        ))),
        _ => Ok(()),
    }
}

/// A finite lattice with total meet and join tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    n: usize,
    leq: BitRows,
    meet: Vec<u16>,
    join: Vec<u16>,
    bottom: usize,
    top: usize,
    labels: Option<Vec<String>>,
}

impl FiniteLattice {
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        Self::from_poset(&Poset::from_covers(n, covers)?)
    }

    pub fn from_poset(p: &Poset) -> Result<Self> {
        let n = p.size();
        let mut meet = vec![0u16; n * n];
        let mut join = vec![0u16; n * n];
        for a in 0..n {
            for b in a..n {
                let m = p.glb(a, b).ok_or(Error::NotALattice {
                    a,
                    b,
                    missing: "meet",
                })?;
                let j = p.lub(a, b).ok_or(Error::NotALattice {
                    a,
                    b,
                    missing: "join",
                })?;
                meet[a * n + b] = m as u16;
                meet[b * n + a] = m as u16;
                join[a * n + b] = j as u16;
                join[b * n + a] = j as u16;
            }
        }
        let bottom = p.minimum().ok_or(Error::NotALattice {
            a: 0,
            b: 0,
            missing: "bottom",
        })?;
        let top = p.maximum().ok_or(Error::NotALattice {
            a: 0,
            b: 0,
            missing: "top",
        })?;
        Ok(Self {
            n,
            leq: transpose_leq(p),
            meet,
            join,
            bottom,
            top,
            labels: None,
        })
    }

    /// Builds a lattice straight from operation closures, without glb searches.
    /// The caller guarantees that `leq`, `meet` and `join` are mutually consistent.
    pub(crate) fn from_parts(
        n: usize,
        leq: impl Fn(usize, usize) -> bool,
        meet: impl Fn(usize, usize) -> usize,
        join: impl Fn(usize, usize) -> usize,
        bottom: usize,
        top: usize,
    ) -> Result<Self> {
        if n > CONSTRUCTION_CAP {
            return Err(Error::CapacityExceeded {
                size: n,
                cap: CONSTRUCTION_CAP,
            });
        }
        let mut rows = BitRows::new(n);
        let mut mt = vec![0u16; n * n];
        let mut jt = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                if leq(a, b) {
                    rows.set(a, b);
                }
                mt[a * n + b] = meet(a, b) as u16;
                jt[a * n + b] = join(a, b) as u16;
            }
        }
        Ok(Self {
            n,
            leq: rows,
            meet: mt,
            join: jt,
            bottom,
            top,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        let labels = Some(labels);
        check_labels(self.n, &labels)?;
        self.labels = labels;
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn clear_labels(&mut self) {
        self.labels = None;
    }

    /// Covering pairs of the order, sorted lexicographically.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if a != b
                    && self.leq(a, b)
                    && !(0..self.n).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b))
                {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_chain(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.leq(a, b) || self.leq(b, a)))
    }

    /// Forgets the joins.
    pub fn to_meet_semilattice(&self) -> FiniteMeetSemilattice {
        FiniteMeetSemilattice {
            n: self.n,
            leq: self.leq.clone(),
            meet: self.meet.clone(),
            top: self.top,
            labels: self.labels.clone(),
        }
    }

    /// Full scan of the lattice axioms over the stored tables.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        let n = self.n;
        for a in 0..n {
            if !self.leq(a, a) {
                return Err(format!("leq not reflexive at {a}"));
            }
            if !self.leq(self.bottom, a) || !self.leq(a, self.top) {
                return Err(format!("{a} outside [bottom, top]"));
            }
            if self.meet(a, a) != a || self.join_of(a, a) != a {
                return Err(format!("idempotence fails at {a}"));
            }
            for b in 0..n {
                if a != b && self.leq(a, b) && self.leq(b, a) {
                    return Err(format!("leq not antisymmetric at ({a}, {b})"));
                }
                let (m, j) = (self.meet(a, b), self.join_of(a, b));
                if m != self.meet(b, a) || j != self.join_of(b, a) {
                    return Err(format!("commutativity fails at ({a}, {b})"));
                }
                if self.meet(a, self.join_of(a, b)) != a || self.join_of(a, self.meet(a, b)) != a {
                    return Err(format!("absorption fails at ({a}, {b})"));
                }
                if (self.leq(a, b)) != (m == a) {
                    return Err(format!("meet disagrees with order at ({a}, {b})"));
                }
                for c in 0..n {
                    if self.leq(a, b) && self.leq(b, c) && !self.leq(a, c) {
                        return Err(format!("leq not transitive at ({a}, {b}, {c})"));
                    }
                    if self.meet(a, self.meet(b, c)) != self.meet(m, c)
                        || self.join_of(a, self.join_of(b, c)) != self.join_of(j, c)
                    {
                        return Err(format!("associativity fails at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn join_of(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b] as usize
    }

    pub fn bottom_index(&self) -> usize {
        self.bottom
    }
}

fn transpose_leq(p: &Poset) -> BitRows {
    // rows[a] = up-set of a, so rows.get(a, b) == (a <= b)
    p.up.clone()
}

impl FiniteStructure for FiniteLattice {
    fn size(&self) -> usize {
        self.n
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        self.leq.get(a, b)
    }

    fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b] as usize
    }

    fn join(&self, a: usize, b: usize) -> Option<usize> {
        Some(self.join_of(a, b))
    }

    fn top(&self) -> usize {
        self.top
    }

    fn bottom(&self) -> Option<usize> {
        Some(self.bottom)
    }

    fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }
}

/// A finite meet-semilattice with a maximum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMeetSemilattice {
    n: usize,
    leq: BitRows,
    meet: Vec<u16>,
    top: usize,
    labels: Option<Vec<String>>,
}

impl FiniteMeetSemilattice {
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        Self::from_poset(&Poset::from_covers(n, covers)?)
    }

    pub fn from_poset(p: &Poset) -> Result<Self> {
        let n = p.size();
        let top = p
            .maximum()
            .ok_or_else(|| Error::NotASemilattice("no maximum".into()))?;
        let mut meet = vec![0u16; n * n];
        for a in 0..n {
            for b in a..n {
                let m = p.glb(a, b).ok_or_else(|| {
                    Error::NotASemilattice(format!("{a} and {b} have no meet"))
                })?;
                meet[a * n + b] = m as u16;
                meet[b * n + a] = m as u16;
            }
        }
        Ok(Self {
            n,
            leq: transpose_leq(p),
            meet,
            top,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        let labels = Some(labels);
        check_labels(self.n, &labels)?;
        self.labels = labels;
        Ok(self)
    }

    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if a != b
                    && self.leq(a, b)
                    && !(0..self.n).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b))
                {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Meet of an arbitrary family; the empty meet is the top.
    pub fn meet_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }
}

impl FiniteStructure for FiniteMeetSemilattice {
    fn size(&self) -> usize {
        self.n
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        self.leq.get(a, b)
    }

    fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b] as usize
    }

    fn join(&self, _: usize, _: usize) -> Option<usize> {
        None
    }

    fn top(&self) -> usize {
        self.top
    }

    fn bottom(&self) -> Option<usize> {
        None
    }

    fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }
}
