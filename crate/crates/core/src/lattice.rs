//! Intersection lattices: construction, Möbius values, characteristic
//! polynomials, modular elements and modular chains.
//!
//! Flats are identified by their (closed) hyperplane sets and numbered by
//! rank, then lexicographically by hyperplane indices, so flat `0` is the
//! ambient space `V` and the last flat is the top `T`. `X <= Y` in the
//! lattice iff the hyperplane set of `X` is a subset of that of `Y`.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, Flat};
use crate::error::{Error, Result};
use crate::hyperplane_set::HyperplaneSet;
use crate::polynomial::IntPolynomial;

/// Index of a flat inside an [`IntersectionLattice`].
pub type FlatId = usize;

/// Default safety bound on the number of flats.
pub const DEFAULT_FLAT_BOUND: usize = 1_000_000;

#[derive(Clone, Copy, Debug)]
pub struct LatticeOptions {
    pub flat_bound: usize,
}

impl Default for LatticeOptions {
    fn default() -> Self {
        Self {
            flat_bound: DEFAULT_FLAT_BOUND,
        }
    }
}

#[derive(Debug)]
pub struct IntersectionLattice {
    arrangement: Arrangement,
    flats: Vec<Flat>,
    index: HashMap<HyperplaneSet, FlatId>,
    by_rank: Vec<Vec<FlatId>>,
    covers: Vec<Vec<FlatId>>,
    mobius: Vec<i64>,
    circuits: OnceLock<Vec<HyperplaneSet>>,
    local_polys: OnceLock<Vec<IntPolynomial>>,
    modular: OnceLock<Vec<bool>>,
}

/// A chain `V = X0 < X1 < ... < Xk` of flats, by id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlatChain(pub Vec<FlatId>);

impl FlatChain {
    pub fn ids(&self) -> &[FlatId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl IntersectionLattice {
    pub fn build(arrangement: &Arrangement) -> Result<Self> {
        Self::build_with(arrangement, LatticeOptions::default())
    }

    /// Closure search upward from `V`: every cover of `X` is the closure of
    /// `A_X` plus one hyperplane.
    pub fn build_with(arrangement: &Arrangement, options: LatticeOptions) -> Result<Self> {
        let a = arrangement;
        let m = a.len();
        let mut flats: Vec<HyperplaneSet> = vec![HyperplaneSet::EMPTY];
        let mut by_rank: Vec<Vec<FlatId>> = vec![vec![0]];
        let mut cover_sets: Vec<Vec<HyperplaneSet>> = Vec::new();

        loop {
            let level = by_rank.last().unwrap().clone();
            let mut next: Vec<HyperplaneSet> = Vec::new();
            for &x in &level {
                let ax = flats[x];
                let mut found: Vec<HyperplaneSet> = Vec::new();
                for h in 0..m {
                    if ax.contains(h) || found.iter().any(|c| c.contains(h)) {
                        continue;
                    }
                    found.push(a.closure_set(ax.with(h)));
                }
                next.extend(found.iter().copied());
                cover_sets.push(found);
            }
            if next.is_empty() {
                break;
            }
            next.sort();
            next.dedup();
            if flats.len() + next.len() > options.flat_bound {
                return Err(Error::FlatBoundExceeded(options.flat_bound));
            }
            let start = flats.len();
            by_rank.push((start..start + next.len()).collect());
            flats.extend(next);
        }

        let index: HashMap<HyperplaneSet, FlatId> =
            flats.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut covers: Vec<Vec<FlatId>> = cover_sets
            .into_iter()
            .map(|cs| cs.iter().map(|s| index[s]).collect())
            .collect();
        for c in &mut covers {
            c.sort_unstable();
        }
        covers.resize(flats.len(), Vec::new());

        let mut mobius = vec![0i64; flats.len()];
        mobius[0] = 1;
        for x in 1..flats.len() {
            let ax = flats[x];
            mobius[x] = -(0..x)
                .filter(|&y| flats[y].is_subset(ax) && flats[y] != ax)
                .map(|y| mobius[y])
                .sum::<i64>();
        }

        let flats = flats.into_iter().map(|s| a.flat_from_closed(s)).collect();
        Ok(Self {
            arrangement: a.clone(),
            flats,
            index,
            by_rank,
            covers,
            mobius,
            circuits: OnceLock::new(),
            local_polys: OnceLock::new(),
            modular: OnceLock::new(),
        })
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn flat(&self, x: FlatId) -> &Flat {
        &self.flats[x]
    }

    pub fn bottom(&self) -> FlatId {
        0
    }

    pub fn top(&self) -> FlatId {
        self.flats.len() - 1
    }

    /// Rank of the lattice, `r(T)`.
    pub fn rank(&self) -> usize {
        self.by_rank.len() - 1
    }

    pub fn rank_of(&self, x: FlatId) -> usize {
        self.flats[x].rank()
    }

    /// Localization `A_X`.
    pub fn hyperplanes(&self, x: FlatId) -> HyperplaneSet {
        self.flats[x].hyperplanes()
    }

    pub fn mobius(&self, x: FlatId) -> i64 {
        self.mobius[x]
    }

    pub fn at_rank(&self, k: usize) -> &[FlatId] {
        self.by_rank.get(k).map_or(&[], Vec::as_slice)
    }

    /// Flats covering `x`.
    pub fn covers(&self, x: FlatId) -> &[FlatId] {
        &self.covers[x]
    }

    /// Hasse diagram edges `(lower, upper)`.
    pub fn cover_pairs(&self) -> impl Iterator<Item = (FlatId, FlatId)> + '_ {
        self.covers
            .iter()
            .enumerate()
            .flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y)))
    }

    /// Id of the flat with hyperplane set `s`, if `s` is closed.
    pub fn find(&self, s: HyperplaneSet) -> Option<FlatId> {
        self.index.get(&s).copied()
    }

    /// Id of a flat value of this arrangement.
    pub fn id_of(&self, x: &Flat) -> Result<FlatId> {
        match self.find(x.hyperplanes()) {
            Some(id) if self.flats[id] == *x => Ok(id),
            _ => Err(Error::ForeignFlat),
        }
    }

    /// Id of the closure of `s`.
    pub fn closure_id(&self, s: HyperplaneSet) -> FlatId {
        self.index[&self.arrangement.closure_set(s)]
    }

    pub fn leq(&self, x: FlatId, y: FlatId) -> bool {
        self.hyperplanes(x).is_subset(self.hyperplanes(y))
    }

    pub fn lt(&self, x: FlatId, y: FlatId) -> bool {
        x != y && self.leq(x, y)
    }

    /// `X v Y = X ∩ Y`: the closure of `A_X ∪ A_Y`.
    pub fn join(&self, x: FlatId, y: FlatId) -> FlatId {
        let s = self.hyperplanes(x).union(self.hyperplanes(y));
        self.find(s).unwrap_or_else(|| self.closure_id(s))
    }

    /// `X ∧ Y`: the intersection of all flats containing both subspaces,
    /// whose localization is `A_X ∩ A_Y`.
    pub fn meet(&self, x: FlatId, y: FlatId) -> FlatId {
        let s = self.hyperplanes(x).intersection(self.hyperplanes(y));
        self.find(s).expect("intersections of closed sets are closed")
    }

    /// `chi(A, t) = sum_X mu(X) t^(n - r(X))`.
    pub fn characteristic_polynomial(&self) -> IntPolynomial {
        self.local_characteristic_polynomial(self.top()).clone()
    }

    /// `chi(A_X, t)` in the ambient dimension, summing over the interval
    /// `[V, X]`.
    pub fn local_characteristic_polynomial(&self, x: FlatId) -> &IntPolynomial {
        &self.local_polys.get_or_init(|| {
            let n = self.arrangement.dim();
            (0..self.len())
                .map(|x| {
                    let ax = self.hyperplanes(x);
                    let mut coeffs = vec![0i64; n + 1];
                    for y in 0..=x {
                        if self.hyperplanes(y).is_subset(ax) {
                            coeffs[n - self.rank_of(y)] += self.mobius[y];
                        }
                    }
                    IntPolynomial::new(coeffs)
                })
                .collect()
        })[x]
    }

    /// Circuits of the underlying matroid, computed once.
    pub fn circuits(&self) -> &[HyperplaneSet] {
        self.circuits.get_or_init(|| self.arrangement.circuits())
    }

    /// Whether `r(X) + r(Y) = r(X v Y) + r(X ∧ Y)` for every flat `Y`.
    pub fn is_modular_element(&self, x: FlatId) -> bool {
        self.modular_flags()[x]
    }

    /// A flat `Y` breaking the rank identity with `x`, if any.
    pub fn modularity_witness(&self, x: FlatId) -> Option<FlatId> {
        let rx = self.rank_of(x);
        (0..self.len()).find(|&y| {
            rx + self.rank_of(y) != self.rank_of(self.join(x, y)) + self.rank_of(self.meet(x, y))
        })
    }

    fn modular_flags(&self) -> &[bool] {
        self.modular
            .get_or_init(|| (0..self.len()).map(|x| self.modularity_witness(x).is_none()).collect())
    }

    /// Modularity via localizations: `A_X ∩ A_Y` is nonempty for every `Y`
    /// of rank `r - r(X) + 1`. `V` and `T` are modular.
    pub fn is_modular_brylawski(&self, x: FlatId) -> bool {
        self.brylawski_witness(x).is_none()
    }

    /// A flat `Y` of rank `r - r(X) + 1` with `A_X ∩ A_Y = ∅`, if any.
    pub fn brylawski_witness(&self, x: FlatId) -> Option<FlatId> {
        if x == self.bottom() || x == self.top() {
            return None;
        }
        let ax = self.hyperplanes(x);
        let k = self.rank() + 1 - self.rank_of(x);
        self.at_rank(k)
            .iter()
            .copied()
            .find(|&y| ax.is_disjoint(self.hyperplanes(y)))
    }

    /// Whether `chain` starts at `V`, ends at `T`, and each step is a cover.
    pub fn is_maximal_chain(&self, chain: &FlatChain) -> bool {
        let ids = chain.ids();
        ids.len() == self.rank() + 1
            && ids.iter().all(|&x| x < self.len())
            && ids.iter().enumerate().all(|(k, &x)| self.rank_of(x) == k)
            && ids.windows(2).all(|w| self.lt(w[0], w[1]))
    }

    /// Visits every maximal chain; `prune` rejects a flat before it is added.
    pub fn visit_maximal_chains(
        &self,
        mut prune: impl FnMut(FlatId) -> bool,
        mut visit: impl FnMut(&[FlatId]),
    ) {
        fn go(
            l: &IntersectionLattice,
            path: &mut Vec<FlatId>,
            prune: &mut dyn FnMut(FlatId) -> bool,
            visit: &mut dyn FnMut(&[FlatId]),
        ) {
            let x = *path.last().unwrap();
            if x == l.top() {
                visit(path);
                return;
            }
            for &y in l.covers(x) {
                if prune(y) {
                    continue;
                }
                path.push(y);
                go(l, path, prune, visit);
                path.pop();
            }
        }
        if prune(self.bottom()) {
            return;
        }
        go(self, &mut vec![self.bottom()], &mut prune, &mut visit);
    }

    pub fn maximal_chains(&self) -> Vec<FlatChain> {
        let mut out = Vec::new();
        self.visit_maximal_chains(|_| false, |c| out.push(FlatChain(c.to_vec())));
        out
    }

    /// All maximal chains made of modular elements. Chains are cut at the
    /// first non-modular flat.
    pub fn maximal_modular_chains(&self) -> Vec<FlatChain> {
        let mut out = Vec::new();
        self.visit_maximal_chains(
            |y| !self.is_modular_element(y),
            |c| out.push(FlatChain(c.to_vec())),
        );
        out
    }

    /// Whether some maximal modular chain exists.
    pub fn is_supersolvable(&self) -> bool {
        let found = std::cell::Cell::new(false);
        // Stop descending once one chain is known.
        self.visit_maximal_chains(
            |y| found.get() || !self.is_modular_element(y),
            |_| found.set(true),
        );
        found.get()
    }

    /// Structural checks expected of every geometric lattice; returns a
    /// description of each violation.
    pub fn geometric_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.len();
        if self.hyperplanes(0) != HyperplaneSet::EMPTY || self.rank_of(0) != 0 {
            out.push("flat 0 is not V".into());
        }
        if self.hyperplanes(self.top()) != self.arrangement.closure_set(self.arrangement.all()) {
            out.push("last flat is not T".into());
        }
        for (x, y) in self.cover_pairs() {
            if self.rank_of(y) != self.rank_of(x) + 1 || !self.lt(x, y) {
                out.push(format!("cover {x} < {y} is not graded"));
            }
        }
        for x in 1..n {
            if self.covers(x).is_empty() && x != self.top() {
                out.push(format!("flat {x} is maximal but not T"));
            }
            let atoms_below: HyperplaneSet = self.hyperplanes(x);
            if self.arrangement.closure_set(atoms_below) != self.hyperplanes(x) {
                out.push(format!("flat {x} is not the join of its atoms"));
            }
            let below: i64 = (0..n).filter(|&y| self.lt(y, x)).map(|y| self.mobius(y)).sum();
            if below + self.mobius(x) != 0 {
                out.push(format!("mobius recursion fails at {x}"));
            }
            let sign = if self.rank_of(x).is_multiple_of(2) { 1 } else { -1 };
            if sign * self.mobius(x) <= 0 {
                out.push(format!("mobius sign fails at {x}"));
            }
        }
        for x in 0..n {
            for y in x..n {
                let lhs = self.rank_of(x) + self.rank_of(y);
                let rhs = self.rank_of(self.join(x, y)) + self.rank_of(self.meet(x, y));
                if lhs < rhs {
                    out.push(format!("semimodularity fails at ({x}, {y})"));
                }
            }
        }
        out
    }
}

/// Outcome of [`product_iso_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProductIsoReport {
    /// `sigma(X1, X2) = X1 ⊕ X2` is a rank-preserving order isomorphism.
    pub isomorphism: bool,
    /// `sigma(modular, modular)` is always modular.
    pub modular_closure: bool,
}

impl ProductIsoReport {
    pub fn holds(&self) -> bool {
        self.isomorphism && self.modular_closure
    }
}

/// Checks the product map for `l12 = L(A1 x A2)` where the hyperplanes of
/// `A1` come first, as produced by [`Arrangement::product`].
pub fn product_iso_check(
    l1: &IntersectionLattice,
    l2: &IntersectionLattice,
    l12: &IntersectionLattice,
) -> ProductIsoReport {
    let m1 = l1.arrangement().len();
    let embed1 = |s: HyperplaneSet| s;
    let embed2 = |s: HyperplaneSet| HyperplaneSet::from_bits(s.bits() << m1);
    let factors: [(&IntersectionLattice, &dyn Fn(HyperplaneSet) -> HyperplaneSet); 2] =
        [(l1, &embed1), (l2, &embed2)];
    if l12.arrangement().len() != m1 + l2.arrangement().len() {
        return ProductIsoReport {
            isomorphism: false,
            modular_closure: false,
        };
    }
    multi_product_check(&factors, l12)
}

/// Checks that `tuple -> union of embedded hyperplane sets` is a rank
/// preserving order isomorphism from the product of the factor lattices
/// onto `target`, and that tuples of modular elements map to modular
/// elements.
pub fn multi_product_check(
    factors: &[(&IntersectionLattice, &dyn Fn(HyperplaneSet) -> HyperplaneSet)],
    target: &IntersectionLattice,
) -> ProductIsoReport {
    let sizes: Vec<usize> = factors.iter().map(|(l, _)| l.len()).collect();
    let total: usize = sizes.iter().product();
    let mut isomorphism = total == target.len();
    let mut modular_closure = true;

    // Enumerate tuples in mixed radix.
    let mut images: Vec<(Vec<FlatId>, FlatId)> = Vec::with_capacity(total);
    let mut seen = vec![false; target.len()];
    let mut tuple = vec![0usize; factors.len()];
    for _ in 0..total {
        let mut set = HyperplaneSet::EMPTY;
        let mut rank = 0;
        for (k, (l, embed)) in factors.iter().enumerate() {
            set = set.union(embed(l.hyperplanes(tuple[k])));
            rank += l.rank_of(tuple[k]);
        }
        match target.find(set) {
            Some(id) if target.rank_of(id) == rank && !seen[id] => {
                seen[id] = true;
                images.push((tuple.clone(), id));
            }
            _ => isomorphism = false,
        }
        for k in 0..tuple.len() {
            tuple[k] += 1;
            if tuple[k] < sizes[k] {
                break;
            }
            tuple[k] = 0;
        }
    }
    if !isomorphism {
        return ProductIsoReport {
            isomorphism,
            modular_closure: false,
        };
    }
    'outer: for (tx, x) in &images {
        for (ty, y) in &images {
            let componentwise = factors
                .iter()
                .enumerate()
                .all(|(k, (l, _))| l.leq(tx[k], ty[k]));
            if componentwise != target.leq(*x, *y) {
                isomorphism = false;
                break 'outer;
            }
        }
    }
    for (tx, x) in &images {
        let all_modular = factors
            .iter()
            .enumerate()
            .all(|(k, (l, _))| l.is_modular_element(tx[k]));
        if all_modular && !target.is_modular_element(*x) {
            modular_closure = false;
        }
    }
    ProductIsoReport {
        isomorphism,
        modular_closure,
    }
}

/// Checks `L(A_G) ≅ L(A_G1) x ... x L(A_Gk)` over the blocks of the graph.
pub fn block_decomposition_check(l: &IntersectionLattice) -> Result<ProductIsoReport> {
    let g = l.arrangement().graph().ok_or(Error::NotGraphical)?;
    let blocks = g.blocks();
    let mut lattices = Vec::new();
    let mut maps: Vec<Vec<usize>> = Vec::new();
    for b in &blocks {
        let a = Arrangement::graphical(b)?;
        lattices.push(IntersectionLattice::build(&a)?);
        maps.push(
            b.edges()
                .iter()
                .map(|&(u, v)| g.edge_index(u, v).expect("block edge is a graph edge"))
                .collect(),
        );
    }
    let embeds: Vec<Box<dyn Fn(HyperplaneSet) -> HyperplaneSet>> = maps
        .into_iter()
        .map(|map| {
            Box::new(move |s: HyperplaneSet| s.iter().map(|i| map[i]).collect())
                as Box<dyn Fn(HyperplaneSet) -> HyperplaneSet>
        })
        .collect();
    let factors: Vec<(&IntersectionLattice, &dyn Fn(HyperplaneSet) -> HyperplaneSet)> = lattices
        .iter()
        .zip(&embeds)
        .map(|(l, e)| (l, e.as_ref()))
        .collect();
    Ok(multi_product_check(&factors, l))
}
