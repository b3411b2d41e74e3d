//! Fixed-width bitset over hyperplane indices.

use std::fmt;

/// Largest arrangement size addressable by [`HyperplaneSet`].
pub const MAX_HYPERPLANES: usize = 128;

/// A set of hyperplane indices `0..128`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct HyperplaneSet(u128);

impl HyperplaneSet {
    pub const EMPTY: Self = Self(0);

    pub fn from_bits(bits: u128) -> Self {
        Self(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    /// The set `{0, 1, ..., m-1}`.
    pub fn full(m: usize) -> Self {
        debug_assert!(m <= MAX_HYPERPLANES);
        if m == MAX_HYPERPLANES {
            Self(u128::MAX)
        } else {
            Self((1u128 << m) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        Self(1u128 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_HYPERPLANES && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u128 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u128 << i);
    }

    pub fn with(self, i: usize) -> Self {
        Self(self.0 | 1u128 << i)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        Self(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        Self(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest index in the set.
    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest index in the set.
    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 127 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for HyperplaneSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Self::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl IntoIterator for HyperplaneSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`HyperplaneSet`].
pub struct Iter(u128);

impl Iterator for Iter {
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

impl ExactSizeIterator for Iter {}

impl fmt::Debug for HyperplaneSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Ord for HyperplaneSet {
    /// Lexicographic order on the ascending member lists.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for HyperplaneSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl serde::Serialize for HyperplaneSet {
    /// Serialized as the ascending index list.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a: HyperplaneSet = [0, 3, 127].into_iter().collect();
        assert_eq!(a.len(), 3);
        assert!(a.contains(127));
        assert_eq!(a.min(), Some(0));
        assert_eq!(a.max(), Some(127));
        assert_eq!(a.to_vec(), vec![0, 3, 127]);
        let b = HyperplaneSet::singleton(3);
        assert!(b.is_subset(a));
        assert_eq!(a.difference(b).to_vec(), vec![0, 127]);
        assert_eq!(HyperplaneSet::full(128).len(), 128);
        assert!(HyperplaneSet::EMPTY.min().is_none());
    }

    #[test]
    fn lexicographic_order() {
        let a: HyperplaneSet = [0, 5].into_iter().collect();
        let b: HyperplaneSet = [1].into_iter().collect();
        let c: HyperplaneSet = [0].into_iter().collect();
        assert!(a < b);
        assert!(c < a);
    }
}
