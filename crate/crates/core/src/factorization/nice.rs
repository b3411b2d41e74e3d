use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyperplane_set::HyperplaneSet;
use crate::lattice::{FlatId, IntersectionLattice};
use crate::partition::ArrangementPartition;
use crate::polynomial::IntPolynomial;

/// Why a partition is not nice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum NiceFailure {
    /// A section whose hyperplanes are linearly dependent; always a circuit.
    DependentSection(Vec<usize>),
    /// A flat `X ≠ V` such that no part meets `A_X` in exactly one hyperplane.
    NoSingletonMeet(FlatId),
}

impl NiceFailure {
    /// Re-checks the failure against the lattice and partition.
    pub fn validate(&self, l: &IntersectionLattice, pi: &ArrangementPartition) -> bool {
        match self {
            NiceFailure::DependentSection(s) => {
                let set: HyperplaneSet = s.iter().copied().collect();
                let mut parts: Vec<Option<usize>> = s.iter().map(|&h| pi.part_of(h)).collect();
                let n = parts.len();
                parts.sort();
                parts.dedup();
                set.len() == n
                    && parts.len() == n
                    && parts.iter().all(Option::is_some)
                    && l.arrangement().rank_of_subset(set) < n
            }
            NiceFailure::NoSingletonMeet(x) => {
                *x < l.len()
                    && *x != l.bottom()
                    && pi
                        .parts()
                        .iter()
                        .all(|p| p.intersection(l.hyperplanes(*x)).len() != 1)
            }
        }
    }
}

/// Verdict of [`is_nice`]; `failure` is present iff the partition is not
/// nice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NiceCertificate {
    pub failure: Option<NiceFailure>,
}

impl NiceCertificate {
    pub fn is_nice(&self) -> bool {
        self.failure.is_none()
    }
}

fn check_partition(l: &IntersectionLattice, pi: &ArrangementPartition) -> Result<()> {
    if pi.support() != l.arrangement().all() {
        return Err(Error::InvalidPartition(
            "partition does not cover the arrangement".into(),
        ));
    }
    Ok(())
}

/// Checks that every section is independent. A dependent section contains a
/// circuit whose hyperplanes lie in distinct parts, so only circuits are
/// examined; the returned witness is such a circuit.
pub fn is_independent_partition(
    l: &IntersectionLattice,
    pi: &ArrangementPartition,
) -> std::result::Result<(), Vec<usize>> {
    let labels = pi.labels(l.arrangement().len());
    for &c in l.circuits() {
        let mut used = 0u128;
        let rainbow = c.iter().all(|h| {
            let bit = 1u128 << labels[h];
            let fresh = used & bit == 0;
            used |= bit;
            fresh
        });
        if rainbow {
            return Err(c.to_vec());
        }
    }
    Ok(())
}

/// Niceness: independent, and every flat `X ≠ V` has a part meeting `A_X`
/// in exactly one hyperplane.
pub fn is_nice(l: &IntersectionLattice, pi: &ArrangementPartition) -> Result<NiceCertificate> {
    check_partition(l, pi)?;
    if let Err(section) = is_independent_partition(l, pi) {
        return Ok(NiceCertificate {
            failure: Some(NiceFailure::DependentSection(section)),
        });
    }
    let failure = (1..l.len())
        .find(|&x| {
            let ax = l.hyperplanes(x);
            !pi.parts().iter().any(|p| p.intersection(ax).len() == 1)
        })
        .map(NiceFailure::NoSingletonMeet);
    Ok(NiceCertificate { failure })
}

/// `π_X`: the nonempty intersections of the parts with `A_X`.
pub fn localize_partition(
    l: &IntersectionLattice,
    pi: &ArrangementPartition,
    x: FlatId,
) -> ArrangementPartition {
    pi.restrict(l.hyperplanes(x))
}

/// First flat `X` (in lattice order, `V` included) where
/// `chi(A_X, t) = t^(n-l) prod (t - |π_i ∩ A_X|)` fails.
///
/// Both sides are multiplied by `t^l` so partitions with more than `n`
/// parts stay within polynomials. At `V` every count is zero and both sides
/// equal `t^n`.
pub fn factorization_counterexample(
    l: &IntersectionLattice,
    pi: &ArrangementPartition,
) -> Option<FlatId> {
    let n = l.arrangement().dim();
    let parts = pi.len();
    (0..l.len()).find(|&x| {
        let ax = l.hyperplanes(x);
        let lhs = l.local_characteristic_polynomial(x).shift(parts);
        let rhs = IntPolynomial::from_roots(
            n,
            pi.parts().iter().map(|p| p.intersection(ax).len() as i64),
        );
        lhs != rhs
    })
}

/// Whether the factorization identity holds at every flat.
pub fn verify_factorization(l: &IntersectionLattice, pi: &ArrangementPartition) -> bool {
    factorization_counterexample(l, pi).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::graph::Graph;
    use crate::partition::SetPartitions;

    fn lattice(g: &Graph) -> IntersectionLattice {
        IntersectionLattice::build(&Arrangement::graphical(g).unwrap()).unwrap()
    }

    fn partition(g: &Graph, parts: &[&[(usize, usize)]]) -> ArrangementPartition {
        ArrangementPartition::new(
            g.edge_count(),
            parts
                .iter()
                .map(|p| p.iter().map(|&(u, v)| g.edge_index(u, v).unwrap()).collect()),
        )
        .unwrap()
    }

    fn five_vertex() -> Graph {
        Graph::new(
            5,
            [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 5), (3, 4), (3, 5), (4, 5)],
        )
        .unwrap()
    }

    fn example_partition(g: &Graph) -> ArrangementPartition {
        partition(
            g,
            &[
                &[(3, 4)],
                &[(3, 5), (4, 5)],
                &[(1, 3), (1, 4), (1, 5)],
                &[(1, 2), (2, 3), (2, 5)],
            ],
        )
    }

    #[test]
    fn k3_independence() {
        let g = Graph::complete(3);
        let l = lattice(&g);
        let singletons = partition(&g, &[&[(1, 2)], &[(1, 3)], &[(2, 3)]]);
        assert_eq!(is_independent_partition(&l, &singletons), Err(vec![0, 1, 2]));
        let cert = is_nice(&l, &singletons).unwrap();
        assert!(cert.failure.as_ref().unwrap().validate(&l, &singletons));
        let good = partition(&g, &[&[(1, 2)], &[(1, 3), (2, 3)]]);
        assert_eq!(is_independent_partition(&l, &good), Ok(()));
        assert!(is_nice(&l, &good).unwrap().is_nice());
    }

    #[test]
    fn five_vertex_partition_is_nice() {
        let g = five_vertex();
        let l = lattice(&g);
        let pi = example_partition(&g);
        assert!(is_independent_partition(&l, &pi).is_ok());
        assert!(is_nice(&l, &pi).unwrap().is_nice());
        assert!(verify_factorization(&l, &pi));
        assert_eq!(
            l.characteristic_polynomial(),
            IntPolynomial::from_roots(1, [1, 2, 3, 3])
        );
    }

    #[test]
    fn five_vertex_localization() {
        let g = five_vertex();
        let l = lattice(&g);
        let pi = example_partition(&g);
        let a = l.arrangement();
        let s: HyperplaneSet = [g.edge_index(3, 4).unwrap(), g.edge_index(4, 5).unwrap()]
            .into_iter()
            .collect();
        let x = l.find(a.closure_set(s)).unwrap();
        let local = localize_partition(&l, &pi, x);
        let e = |u, v| g.edge_index(u, v).unwrap();
        assert_eq!(local.parts(), &[[e(3, 4)].into_iter().collect(), [e(3, 5), e(4, 5)].into_iter().collect()]);
        assert_eq!(local.sizes(), vec![1, 2]);
        assert!(localize_partition(&l, &pi, l.bottom()).is_empty());
    }

    #[test]
    fn c4_partitions_all_fail() {
        let g = Graph::cycle(4);
        let l = lattice(&g);
        let mut count = 0;
        for labels in SetPartitions::new(4) {
            let pi = ArrangementPartition::from_labels(&labels);
            let cert = is_nice(&l, &pi).unwrap();
            assert!(!cert.is_nice());
            assert!(cert.failure.unwrap().validate(&l, &pi));
            assert!(!verify_factorization(&l, &pi));
            count += 1;
        }
        assert_eq!(count, 15);
    }

    #[test]
    fn k2_factorization() {
        let g = Graph::complete(2);
        let l = lattice(&g);
        let pi = partition(&g, &[&[(1, 2)]]);
        assert!(verify_factorization(&l, &pi));
        assert!(is_nice(&l, &pi).unwrap().is_nice());
    }

    #[test]
    fn rejects_partial_partition() {
        let g = Graph::complete(3);
        let l = lattice(&g);
        let pi = ArrangementPartition::new(2, [[0usize].into_iter().collect(), [1usize].into_iter().collect()])
            .unwrap();
        assert!(is_nice(&l, &pi).is_err());
    }
}
