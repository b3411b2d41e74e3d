//! Set partitions of an arrangement's hyperplanes, and their sections.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyperplane_set::HyperplaneSet;

/// An unordered partition of the hyperplane indices `0..m`, stored with
/// parts sorted by their minimum index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ArrangementPartition {
    parts: Vec<HyperplaneSet>,
}

impl ArrangementPartition {
    /// Validates that `parts` are nonempty, disjoint and cover `0..m`.
    pub fn new(m: usize, parts: impl IntoIterator<Item = HyperplaneSet>) -> Result<Self> {
        let mut seen = HyperplaneSet::EMPTY;
        let mut list = Vec::new();
        for p in parts {
            if p.is_empty() {
                return Err(Error::InvalidPartition("empty part".into()));
            }
            if !p.is_disjoint(seen) {
                return Err(Error::InvalidPartition("parts overlap".into()));
            }
            seen = seen.union(p);
            list.push(p);
        }
        if seen != HyperplaneSet::full(m) {
            return Err(Error::InvalidPartition(format!(
                "parts cover {:?}, expected 0..{m}",
                seen
            )));
        }
        Ok(Self::from_parts_unchecked(list))
    }

    pub(crate) fn from_parts_unchecked(mut parts: Vec<HyperplaneSet>) -> Self {
        parts.sort_by_key(|&p| p.min());
        Self { parts }
    }

    /// Partition from a block label per hyperplane.
    pub fn from_labels(labels: &[usize]) -> Self {
        let k = labels.iter().copied().max().map_or(0, |x| x + 1);
        let mut parts = vec![HyperplaneSet::EMPTY; k];
        for (h, &b) in labels.iter().enumerate() {
            parts[b].insert(h);
        }
        parts.retain(|p| !p.is_empty());
        Self::from_parts_unchecked(parts)
    }

    pub fn parts(&self) -> &[HyperplaneSet] {
        &self.parts
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Union of all parts.
    pub fn support(&self) -> HyperplaneSet {
        self.parts.iter().fold(HyperplaneSet::EMPTY, |a, &p| a.union(p))
    }

    /// Part index of every hyperplane in `0..m`.
    pub fn labels(&self, m: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; m];
        for (k, p) in self.parts.iter().enumerate() {
            for h in *p {
                out[h] = k;
            }
        }
        out
    }

    /// Index of the part containing `h`.
    pub fn part_of(&self, h: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(h))
    }

    /// Sizes of the parts, in part order.
    pub fn sizes(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.len()).collect()
    }

    /// `{ part ∩ s : part ∩ s ≠ ∅ }`.
    pub fn restrict(&self, s: HyperplaneSet) -> Self {
        Self::from_parts_unchecked(
            self.parts
                .iter()
                .map(|p| p.intersection(s))
                .filter(|p| !p.is_empty())
                .collect(),
        )
    }

    /// Union of two partitions on disjoint supports.
    pub fn union(&self, other: &Self) -> Self {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Self::from_parts_unchecked(parts)
    }

    /// Number of sections, including the empty one: `prod (|part| + 1)`.
    pub fn section_count(&self) -> u128 {
        self.parts.iter().map(|p| p.len() as u128 + 1).product()
    }

    /// All sections as sets (each picks at most one hyperplane per part).
    /// The order of a tuple is irrelevant to its rank, so one set stands for
    /// every ordering of the same hyperplanes.
    pub fn sections(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for p in &self.parts {
            let mut next = Vec::with_capacity(out.len() * (p.len() + 1));
            for s in &out {
                next.push(s.clone());
                for h in *p {
                    let mut t = s.clone();
                    t.push(h);
                    next.push(t);
                }
            }
            out = next;
        }
        out
    }
}

/// Iterator over all set partitions of `0..m` as restricted growth strings.
pub struct SetPartitions {
    labels: Vec<usize>,
    maxes: Vec<usize>,
    done: bool,
}

impl SetPartitions {
    pub fn new(m: usize) -> Self {
        Self {
            labels: vec![0; m],
            maxes: vec![0; m],
            done: false,
        }
    }
}

impl Iterator for SetPartitions {
    /// Block label of each element.
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.labels.clone();
        // maxes[i] = max(labels[0..i]), the largest label available before i.
        let m = self.labels.len();
        let mut i = m;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.labels[i] <= self.maxes[i] {
                self.labels[i] += 1;
                for j in i + 1..m {
                    self.labels[j] = 0;
                    self.maxes[j] = self.maxes[j - 1].max(self.labels[j - 1]);
                }
                break;
            }
        }
        Some(out)
    }
}

/// Bell numbers `B(0..=k)`.
pub fn bell_numbers(k: usize) -> Vec<u128> {
    let mut row = vec![1u128];
    let mut out = vec![1u128];
    for _ in 0..k {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        out.push(next[0]);
        row = next;
    }
    out.truncate(k + 1);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> HyperplaneSet {
        v.iter().copied().collect()
    }

    #[test]
    fn canonical_order_and_validation() {
        let p = ArrangementPartition::new(4, [set(&[3, 1]), set(&[0, 2])]).unwrap();
        assert_eq!(p.parts(), &[set(&[0, 2]), set(&[1, 3])]);
        assert_eq!(p.labels(4), vec![0, 1, 0, 1]);
        assert!(ArrangementPartition::new(3, [set(&[0, 1])]).is_err());
        assert!(ArrangementPartition::new(2, [set(&[0, 1]), set(&[1])]).is_err());
        assert!(ArrangementPartition::new(2, [set(&[0, 1]), set(&[])]).is_err());
        assert_eq!(
            ArrangementPartition::from_labels(&[2, 0, 2]),
            ArrangementPartition::new(3, [set(&[1]), set(&[0, 2])]).unwrap()
        );
    }

    #[test]
    fn bell_counts() {
        assert_eq!(bell_numbers(10), vec![1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975]);
        for m in 0..=8 {
            assert_eq!(SetPartitions::new(m).count() as u128, bell_numbers(m)[m]);
        }
    }

    #[test]
    fn set_partitions_are_distinct() {
        let all: std::collections::HashSet<ArrangementPartition> = SetPartitions::new(6)
            .map(|l| ArrangementPartition::from_labels(&l))
            .collect();
        assert_eq!(all.len(), 203);
    }

    #[test]
    fn section_count_matches_enumeration() {
        let p = ArrangementPartition::new(
            9,
            [set(&[0]), set(&[1, 2]), set(&[3, 4, 5]), set(&[6, 7, 8])],
        )
        .unwrap();
        assert_eq!(p.section_count(), 96);
        assert_eq!(p.sections().len(), 96);
        assert!(p.sections().contains(&vec![]));
    }
}
