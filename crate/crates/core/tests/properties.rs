//! Randomised invariants over small graphs.

use arrangelab::arrangement::Arrangement;
use arrangelab::factorization::{
    chain_to_partition, enumerate_nice_partitions, is_nice, partition_to_modular_chain, verify_factorization,
    EnumerationOptions,
};
use arrangelab::graph::{Chordality, Graph};
use arrangelab::hyperplane_set::HyperplaneSet;
use arrangelab::io::{parse_graph6, to_graph6};
use arrangelab::lattice::IntersectionLattice;
use arrangelab::oracle::{canonical_form, chromatic_polynomial_dc, naive_rank};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (1..=n).flat_map(|j| (1..j).map(move |i| (i, j)));
            Graph::new(n, pairs.zip(bits).filter(|&(_, b)| b).map(|(e, _)| e)).unwrap()
        })
    })
}

fn lattice(g: &Graph) -> IntersectionLattice {
    IntersectionLattice::build(&Arrangement::graphical(g).unwrap()).unwrap()
}

/// Chordal iff no induced subgraph on four or more vertices is a cycle.
fn brute_force_chordal(g: &Graph) -> bool {
    let n = g.n();
    (0u32..1 << n).filter(|s| s.count_ones() >= 4).all(|s| {
        let vs: Vec<usize> = (1..=n).filter(|&v| s >> (v - 1) & 1 == 1).collect();
        let deg = |v: usize| vs.iter().filter(|&&w| g.has_edge(v, w)).count();
        let two_regular = vs.iter().all(|&v| deg(v) == 2);
        let induced = Graph::new(
            n,
            g.edges().iter().copied().filter(|&(a, b)| s >> (a - 1) & 1 == 1 && s >> (b - 1) & 1 == 1),
        )
        .unwrap();
        !(two_regular && induced.components().iter().filter(|c| c.len() > 1).count() == 1)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rank_is_a_matroid_rank(g in graph(6), a in any::<u128>(), b in any::<u128>()) {
        let arr = Arrangement::graphical(&g).unwrap();
        let full = arr.all().bits();
        let (s, t) = (HyperplaneSet::from_bits(a & full), HyperplaneSet::from_bits(b & full));
        let r = |x: HyperplaneSet| arr.rank_of_subset(x);
        prop_assert_eq!(r(s), naive_rank(&arr, s));
        prop_assert!(r(s) <= s.len());
        prop_assert!(r(s.intersection(t)) <= r(s));
        prop_assert!(r(s.union(t)) + r(s.intersection(t)) <= r(s) + r(t));
    }

    #[test]
    fn closure_is_a_closure_operator(g in graph(6), a in any::<u128>(), b in any::<u128>()) {
        let arr = Arrangement::graphical(&g).unwrap();
        let full = arr.all().bits();
        let s = HyperplaneSet::from_bits(a & full);
        let t = s.union(HyperplaneSet::from_bits(b & full));
        let cs = arr.closure_set(s);
        prop_assert!(s.is_subset(cs));
        prop_assert_eq!(arr.closure_set(cs), cs);
        prop_assert_eq!(arr.rank_of_subset(cs), arr.rank_of_subset(s));
        prop_assert!(cs.is_subset(arr.closure_set(t)));
        prop_assert!(arr.is_closed(cs));
    }

    #[test]
    fn chordality_certificates(g in graph(7)) {
        let chordal = brute_force_chordal(&g);
        match g.chordality() {
            Chordality::Chordal(order) => {
                prop_assert!(chordal);
                prop_assert!(order.validate(&g));
            }
            Chordality::NotChordal(cycle) => {
                prop_assert!(!chordal);
                prop_assert!(cycle.validate(&g));
            }
        }
    }

    #[test]
    fn lattice_invariants(g in graph(6)) {
        let l = lattice(&g);
        let chi = l.characteristic_polynomial();
        prop_assert_eq!(&chi, &chromatic_polynomial_dc(&g).unwrap());
        prop_assert_eq!(chi.coefficient(g.n()), 1);
        prop_assert_eq!(l.is_supersolvable(), g.is_chordal());
        prop_assert!(l.geometric_violations().is_empty());
        for x in 0..l.len() {
            for y in 0..l.len() {
                let (j, m) = (l.join(x, y), l.meet(x, y));
                prop_assert!(l.leq(x, j) && l.leq(y, j) && l.leq(m, x) && l.leq(m, y));
                prop_assert!(l.rank_of(j) + l.rank_of(m) <= l.rank_of(x) + l.rank_of(y));
            }
        }
    }

    #[test]
    fn relabelling_preserves_invariants(g in graph(6), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (1..=g.n()).collect();
        let mut state = seed;
        for i in (1..perm.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }
        let h = g.relabel(&perm);
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert_eq!(lattice(&g).characteristic_polynomial(), lattice(&h).characteristic_polynomial());
        prop_assert_eq!(g.is_chordal(), h.is_chordal());
    }

    #[test]
    fn graph6_round_trip(g in graph(9)) {
        prop_assert_eq!(parse_graph6(&to_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn nice_partitions_give_modular_chains(g in graph(6)) {
        prop_assume!(g.edge_count() <= 12);
        let l = lattice(&g);
        let nice = enumerate_nice_partitions(&l, EnumerationOptions::default()).unwrap();
        prop_assert_eq!(nice.is_empty(), !g.is_chordal());
        for pi in nice.iter().take(20) {
            prop_assert!(is_nice(&l, pi).unwrap().is_nice());
            prop_assert!(verify_factorization(&l, pi));
            let rec = partition_to_modular_chain(&l, pi).unwrap();
            prop_assert!(l.is_maximal_chain(&rec.chain));
            prop_assert!(rec.chain.ids().iter().all(|&x| l.is_modular_element(x)));
            prop_assert_eq!(&chain_to_partition(&l, &rec.chain).unwrap(), pi);
        }
    }
}
