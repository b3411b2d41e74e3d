//! Backtracking search for nice partitions.
//!
//! Hyperplanes are placed in index order, each into an existing part or a
//! new one. A placement is undone as soon as one of the following fails;
//! each is implied by niceness, so nothing nice is ever cut:
//!
//! - two hyperplanes share a part only if their rank-2 flat holds a third
//!   hyperplane (otherwise its localization has a single part);
//! - never more parts than the rank, and enough hyperplanes left to reach it;
//! - no circuit whose hyperplanes are all placed lies in distinct parts;
//! - each flat whose hyperplanes are all placed meets exactly `r(X)` parts,
//!   one of them in a single hyperplane.
//!
//! The last two conditions, checked for every circuit and every flat, are
//! the definition of niceness, so every leaf of the search is nice.

use crate::error::{Error, Result};
use crate::hyperplane_set::HyperplaneSet;
use crate::lattice::IntersectionLattice;
use crate::partition::ArrangementPartition;

/// Default largest arrangement the search accepts.
pub const DEFAULT_MAX_HYPERPLANES: usize = 21;

#[derive(Clone, Copy, Debug)]
pub struct EnumerationOptions {
    pub max_hyperplanes: usize,
    /// Stop after this many partitions.
    pub limit: Option<usize>,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            max_hyperplanes: DEFAULT_MAX_HYPERPLANES,
            limit: None,
        }
    }
}

struct Search<'a> {
    m: usize,
    rank: usize,
    compatible: Vec<HyperplaneSet>,
    circuits_ending: Vec<Vec<HyperplaneSet>>,
    flats_ending: Vec<Vec<(HyperplaneSet, usize)>>,
    parts: Vec<HyperplaneSet>,
    labels: Vec<usize>,
    out: &'a mut Vec<ArrangementPartition>,
    limit: usize,
}

impl Search<'_> {
    fn consistent(&self, h: usize) -> bool {
        let rainbow = |c: &HyperplaneSet| {
            let mut used = 0u128;
            c.iter().all(|k| {
                let bit = 1u128 << self.labels[k];
                let fresh = used & bit == 0;
                used |= bit;
                fresh
            })
        };
        if self.circuits_ending[h].iter().any(rainbow) {
            return false;
        }
        self.flats_ending[h].iter().all(|&(ax, rank)| {
            let mut met = 0;
            let mut single = false;
            for p in &self.parts {
                match p.intersection(ax).len() {
                    0 => {}
                    1 => {
                        met += 1;
                        single = true;
                    }
                    _ => met += 1,
                }
            }
            met == rank && single
        })
    }

    fn place(&mut self, h: usize) {
        if self.out.len() >= self.limit {
            return;
        }
        if h == self.m {
            self.out
                .push(ArrangementPartition::from_parts_unchecked(self.parts.clone()));
            return;
        }
        let remaining = self.m - h - 1;
        for k in 0..self.parts.len() {
            if !self.parts[k].is_subset(self.compatible[h]) {
                continue;
            }
            if self.parts.len() + remaining < self.rank {
                continue;
            }
            self.parts[k].insert(h);
            self.labels[h] = k;
            if self.consistent(h) {
                self.place(h + 1);
            }
            self.parts[k].remove(h);
        }
        if self.parts.len() < self.rank {
            self.parts.push(HyperplaneSet::singleton(h));
            self.labels[h] = self.parts.len() - 1;
            if self.parts.len() + remaining >= self.rank && self.consistent(h) {
                self.place(h + 1);
            }
            self.parts.pop();
        }
    }
}

/// All nice partitions of the lattice's arrangement, sorted canonically.
/// Empty iff the arrangement is not factored.
pub fn enumerate_nice_partitions(
    l: &IntersectionLattice,
    options: EnumerationOptions,
) -> Result<Vec<ArrangementPartition>> {
    let a = l.arrangement();
    let m = a.len();
    if m > options.max_hyperplanes {
        return Err(Error::EnumerationBoundExceeded {
            found: m,
            bound: options.max_hyperplanes,
        });
    }
    let mut compatible = vec![HyperplaneSet::EMPTY; m];
    for &x in l.at_rank(2) {
        let ax = l.hyperplanes(x);
        if ax.len() >= 3 {
            for h in ax {
                compatible[h] = compatible[h].union(ax);
            }
        }
    }
    let mut circuits_ending = vec![Vec::new(); m];
    for &c in l.circuits() {
        circuits_ending[c.max().unwrap()].push(c);
    }
    let mut flats_ending = vec![Vec::new(); m];
    for x in 1..l.len() {
        let ax = l.hyperplanes(x);
        flats_ending[ax.max().unwrap()].push((ax, l.rank_of(x)));
    }
    let mut out = Vec::new();
    let mut search = Search {
        m,
        rank: l.rank(),
        compatible,
        circuits_ending,
        flats_ending,
        parts: Vec::new(),
        labels: vec![0; m],
        out: &mut out,
        limit: options.limit.unwrap_or(usize::MAX),
    };
    search.place(0);
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::factorization::is_nice;
    use crate::graph::Graph;
    use crate::partition::SetPartitions;

    fn lattice(g: &Graph) -> IntersectionLattice {
        IntersectionLattice::build(&Arrangement::graphical(g).unwrap()).unwrap()
    }

    /// Brute force over all set partitions.
    fn brute_force(l: &IntersectionLattice) -> Vec<ArrangementPartition> {
        let mut out: Vec<ArrangementPartition> = SetPartitions::new(l.arrangement().len())
            .map(|labels| ArrangementPartition::from_labels(&labels))
            .filter(|pi| is_nice(l, pi).unwrap().is_nice())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn k3_has_three() {
        let l = lattice(&Graph::complete(3));
        let found = enumerate_nice_partitions(&l, EnumerationOptions::default()).unwrap();
        let set = |v: &[usize]| v.iter().copied().collect::<HyperplaneSet>();
        let expected: Vec<ArrangementPartition> = vec![
            ArrangementPartition::new(3, [set(&[0]), set(&[1, 2])]).unwrap(),
            ArrangementPartition::new(3, [set(&[0, 1]), set(&[2])]).unwrap(),
            ArrangementPartition::new(3, [set(&[0, 2]), set(&[1])]).unwrap(),
        ];
        let mut expected = expected;
        expected.sort();
        assert_eq!(found, expected);
    }

    #[test]
    fn c4_has_none() {
        let l = lattice(&Graph::cycle(4));
        assert!(enumerate_nice_partitions(&l, EnumerationOptions::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        let graphs = [
            Graph::complete(4),
            Graph::path(4),
            Graph::new(4, [(1, 2), (2, 3), (3, 4), (4, 1), (1, 3)]).unwrap(),
            Graph::new(5, [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)]).unwrap(),
            Graph::new(5, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (1, 3), (1, 4)]).unwrap(),
        ];
        for g in &graphs {
            let l = lattice(g);
            assert_eq!(
                enumerate_nice_partitions(&l, EnumerationOptions::default()).unwrap(),
                brute_force(&l),
                "{g:?}"
            );
        }
    }

    #[test]
    fn general_arrangement_matches_brute_force() {
        // Braid arrangement A3 written as a general arrangement plus a
        // generic extra hyperplane.
        let k4 = Arrangement::graphical(&Graph::complete(4)).unwrap();
        let mut normals: Vec<Vec<num_bigint::BigInt>> = k4.normals().to_vec();
        normals.push([1, 2, 4, 8].iter().map(|&x| x.into()).collect());
        let a = Arrangement::from_integer_normals(4, normals).unwrap();
        let l = IntersectionLattice::build(&a).unwrap();
        assert_eq!(
            enumerate_nice_partitions(&l, EnumerationOptions::default()).unwrap(),
            brute_force(&l)
        );
    }

    #[test]
    fn bound_and_limit() {
        let l = lattice(&Graph::complete(4));
        let err = enumerate_nice_partitions(
            &l,
            EnumerationOptions {
                max_hyperplanes: 5,
                limit: None,
            },
        );
        assert!(matches!(err, Err(Error::EnumerationBoundExceeded { .. })));
        let some = enumerate_nice_partitions(
            &l,
            EnumerationOptions {
                max_hyperplanes: 21,
                limit: Some(2),
            },
        )
        .unwrap();
        assert_eq!(some.len(), 2);
    }
}
