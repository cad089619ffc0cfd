use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest carrier a [`SubsetMask`] can address.
pub const MASK_CAPACITY: usize = 64;

/// A subset of a finite carrier `0..width`, stored as a single machine word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask {
    bits: u64,
    width: u8,
}

impl SubsetMask {
    pub fn empty(width: usize) -> Result<Self> {
        if width > MASK_CAPACITY {
            return Err(Error::CapacityExceeded {
                size: width,
                cap: MASK_CAPACITY,
            });
        }
        Ok(Self {
            bits: 0,
            width: width as u8,
        })
    }

    pub fn full(width: usize) -> Result<Self> {
        let mut m = Self::empty(width)?;
        m.bits = full_bits(width);
        Ok(m)
    }

    pub fn from_indices(width: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut m = Self::empty(width)?;
        for i in indices {
            if i >= width {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    size: width,
                });
            }
            m.bits |= 1 << i;
        }
        Ok(m)
    }

    /// Builds a mask from raw bits, discarding anything above `width`.
    pub fn from_bits(width: usize, bits: u64) -> Result<Self> {
        let mut m = Self::empty(width)?;
        m.bits = bits & full_bits(width);
        Ok(m)
    }

    pub(crate) fn raw(width: usize, bits: u64) -> Self {
        debug_assert!(width <= MASK_CAPACITY && bits & !full_bits(width) == 0);
        Self {
            bits,
            width: width as u8,
        }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.width() && self.bits >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.width(), "index {i} outside mask of width {}", self.width);
        self.bits |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.width() {
            self.bits &= !(1 << i);
        }
    }

    pub fn with(mut self, i: usize) -> Self {
        self.insert(i);
        self
    }

    pub fn without(mut self, i: usize) -> Self {
        self.remove(i);
        self
    }

    pub fn union(&self, other: &Self) -> Self {
        self.check_width(other);
        Self::raw(self.width(), self.bits | other.bits)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.check_width(other);
        Self::raw(self.width(), self.bits & other.bits)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.check_width(other);
        Self::raw(self.width(), self.bits & !other.bits)
    }

    pub fn complement(&self) -> Self {
        Self::raw(self.width(), !self.bits & full_bits(self.width()))
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == full_bits(self.width())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn iter(&self) -> Ones {
        Ones(self.bits)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn check_width(&self, other: &Self) {
        assert_eq!(self.width, other.width, "mask width mismatch");
    }
}

pub(crate) fn full_bits(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// Iterator over the set bits of a word, ascending.
#[derive(Clone)]
pub struct Ones(pub(crate) u64);

impl Iterator for Ones {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Ones {}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

// Masks serialize as sorted index arrays.
impl Serialize for SubsetMask {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn width_cap() {
        assert!(SubsetMask::empty(64).is_ok());
        assert!(matches!(
            SubsetMask::empty(65),
            Err(Error::CapacityExceeded { size: 65, cap: 64 })
        ));
        assert!(SubsetMask::full(64).unwrap().is_full());
    }

    #[test]
    fn out_of_range_index() {
        assert!(matches!(
            SubsetMask::from_indices(3, [0, 3]),
            Err(Error::IndexOutOfRange { index: 3, size: 3 })
        ));
    }

    #[test]
    fn display_is_sorted() {
        let m = SubsetMask::from_indices(8, [5, 1, 3]).unwrap();
        assert_eq!(m.to_string(), "{1, 3, 5}");
        assert_eq!(serde_json::to_string(&m).unwrap(), "[1,3,5]");
    }

    proptest! {
        #[test]
        fn set_algebra_is_exact(width in 0usize..=64, a in any::<u64>(), b in any::<u64>()) {
            let x = SubsetMask::from_bits(width, a).unwrap();
            let y = SubsetMask::from_bits(width, b).unwrap();
            let naive = |f: &dyn Fn(bool, bool) -> bool| -> Vec<usize> {
                (0..width).filter(|&i| f(x.contains(i), y.contains(i))).collect()
            };
            prop_assert_eq!(x.union(&y).to_vec(), naive(&|p, q| p || q));
            prop_assert_eq!(x.intersection(&y).to_vec(), naive(&|p, q| p && q));
            prop_assert_eq!(x.difference(&y).to_vec(), naive(&|p, q| p && !q));
            prop_assert_eq!(x.complement().to_vec(), naive(&|p, _| !p));
            prop_assert_eq!(x.len(), naive(&|p, _| p).len());
            prop_assert_eq!(x.complement().complement(), x);
        }
    }
}
