//! Central hyperplane arrangements over the rationals.
//!
//! Two kinds are supported. A graphical arrangement carries its graph and
//! represents the hyperplane `x_i - x_j = 0` by the edge `(i, j)`; all rank
//! and closure computations go through union-find on the vertex set. A
//! general arrangement stores primitive integer normals and uses exact
//! fraction-free elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hyperplane_set::{HyperplaneSet, MAX_HYPERPLANES};
use crate::linalg::{self, RowSpace};

/// A hyperplane through the origin.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Hyperplane {
    /// `x_i - x_j = 0` with `i < j`.
    GraphEdge(usize, usize),
    /// `normal . x = 0`, normal primitive with first nonzero entry positive.
    Linear(Vec<BigInt>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArrangementKind {
    Graphical,
    General,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
    normals: Vec<Vec<BigInt>>,
    graph: Option<Graph>,
}

/// An element of the intersection lattice.
///
/// `hyperplanes` is the localization: every hyperplane containing the
/// subspace. For graphical arrangements `blocks` is the vertex partition
/// whose blocks are the connected pieces, sorted by minimum vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flat {
    hyperplanes: HyperplaneSet,
    rank: usize,
    blocks: Option<Vec<Vec<usize>>>,
}

impl Flat {
    pub fn hyperplanes(&self) -> HyperplaneSet {
        self.hyperplanes
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn blocks(&self) -> Option<&[Vec<usize>]> {
        self.blocks.as_deref()
    }

    /// Blocks with more than one vertex.
    pub fn nontrivial_blocks(&self) -> Vec<&[usize]> {
        self.blocks
            .iter()
            .flatten()
            .filter(|b| b.len() > 1)
            .map(Vec::as_slice)
            .collect()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..=n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    /// Returns false if already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

impl Arrangement {
    /// One hyperplane `x_i - x_j = 0` per edge of `g`, indexed in edge order.
    pub fn graphical(g: &Graph) -> Result<Self> {
        if g.edge_count() > MAX_HYPERPLANES {
            return Err(Error::TooManyHyperplanes(g.edge_count()));
        }
        let n = g.n();
        Ok(Self {
            dim: n,
            hyperplanes: g.edges().iter().map(|&(i, j)| Hyperplane::GraphEdge(i, j)).collect(),
            normals: g
                .edges()
                .iter()
                .map(|&(i, j)| linalg::unit_vector_difference(n, i, j))
                .collect(),
            graph: Some(g.clone()),
        })
    }

    /// A general arrangement from rational normals. Duplicate hyperplanes
    /// (equal up to scaling) and zero normals are errors.
    pub fn general(dim: usize, normals: Vec<Vec<BigRational>>) -> Result<Self> {
        let mut ints = Vec::with_capacity(normals.len());
        for (index, v) in normals.into_iter().enumerate() {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    index,
                    expected: dim,
                    found: v.len(),
                });
            }
            let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            ints.push(v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect());
        }
        Self::from_integer_normals(dim, ints)
    }

    pub fn from_integer_normals(dim: usize, normals: Vec<Vec<BigInt>>) -> Result<Self> {
        if normals.len() > MAX_HYPERPLANES {
            return Err(Error::TooManyHyperplanes(normals.len()));
        }
        let mut canon: Vec<Vec<BigInt>> = Vec::with_capacity(normals.len());
        for (index, v) in normals.into_iter().enumerate() {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    index,
                    expected: dim,
                    found: v.len(),
                });
            }
            let p = linalg::primitive(v).ok_or(Error::ZeroNormal { index })?;
            if let Some(first) = canon.iter().position(|c| *c == p) {
                return Err(Error::DuplicateHyperplane { first, second: index });
            }
            canon.push(p);
        }
        Ok(Self {
            dim,
            hyperplanes: canon.iter().cloned().map(Hyperplane::Linear).collect(),
            normals: canon,
            graph: None,
        })
    }

    /// The same hyperplanes viewed as a general arrangement.
    pub fn to_general(&self) -> Self {
        Self::from_integer_normals(self.dim, self.normals.clone())
            .expect("normals of a valid arrangement are valid")
    }

    /// `A1 x A2` in dimension `n1 + n2`: hyperplanes of `a1` first, then
    /// those of `a2`. Always of general kind.
    pub fn product(a1: &Self, a2: &Self) -> Result<Self> {
        let dim = a1.dim + a2.dim;
        let pad = |v: &Vec<BigInt>, before: usize, after: usize| {
            let mut w = vec![BigInt::zero(); before];
            w.extend(v.iter().cloned());
            w.extend(std::iter::repeat_n(BigInt::zero(), after));
            w
        };
        let normals = a1
            .normals
            .iter()
            .map(|v| pad(v, 0, a2.dim))
            .chain(a2.normals.iter().map(|v| pad(v, a1.dim, 0)))
            .collect();
        Self::from_integer_normals(dim, normals)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn kind(&self) -> ArrangementKind {
        if self.graph.is_some() {
            ArrangementKind::Graphical
        } else {
            ArrangementKind::General
        }
    }

    pub fn graph(&self) -> Option<&Graph> {
        self.graph.as_ref()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn normal(&self, i: usize) -> &[BigInt] {
        &self.normals[i]
    }

    pub fn normals(&self) -> &[Vec<BigInt>] {
        &self.normals
    }

    pub fn all(&self) -> HyperplaneSet {
        HyperplaneSet::full(self.len())
    }

    /// Human-readable label: `"i-j"` for graph edges, `"h<index>"` otherwise.
    pub fn label(&self, i: usize) -> String {
        match &self.hyperplanes[i] {
            Hyperplane::GraphEdge(a, b) => format!("{a}-{b}"),
            Hyperplane::Linear(_) => format!("h{i}"),
        }
    }

    /// Inverse of [`Arrangement::label`].
    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        match &self.graph {
            Some(g) => {
                let (a, b) = label.split_once('-')?;
                g.edge_index(a.trim().parse().ok()?, b.trim().parse().ok()?)
            }
            None => {
                let i: usize = label.strip_prefix('h')?.parse().ok()?;
                (i < self.len()).then_some(i)
            }
        }
    }

    pub fn check_subset(&self, s: HyperplaneSet) -> Result<()> {
        match s.max() {
            Some(i) if i >= self.len() => Err(Error::HyperplaneOutOfRange {
                index: i,
                len: self.len(),
            }),
            _ => Ok(()),
        }
    }

    fn union_find(&self, g: &Graph, s: HyperplaneSet) -> (UnionFind, usize) {
        let mut uf = UnionFind::new(g.n());
        let mut merges = 0;
        for e in s {
            let (i, j) = g.edges()[e];
            if uf.union(i, j) {
                merges += 1;
            }
        }
        (uf, merges)
    }

    fn row_space(&self, s: HyperplaneSet) -> RowSpace {
        let mut space = RowSpace::new();
        for i in s {
            space.insert(&self.normals[i]);
        }
        space
    }

    /// Rank of the intersection of the hyperplanes in `s`.
    pub fn rank_of_subset(&self, s: HyperplaneSet) -> usize {
        match &self.graph {
            Some(g) => self.union_find(g, s).1,
            None => self.row_space(s).rank(),
        }
    }

    /// Hyperplane set of the smallest flat containing `s`.
    pub fn closure_set(&self, s: HyperplaneSet) -> HyperplaneSet {
        match &self.graph {
            Some(g) => {
                let (mut uf, _) = self.union_find(g, s);
                (0..self.len())
                    .filter(|&e| {
                        let (i, j) = g.edges()[e];
                        uf.find(i) == uf.find(j)
                    })
                    .collect()
            }
            None => {
                let space = self.row_space(s);
                (0..self.len())
                    .filter(|&e| s.contains(e) || space.contains(&self.normals[e]))
                    .collect()
            }
        }
    }

    /// The flat generated by `s`.
    pub fn closure(&self, s: HyperplaneSet) -> Flat {
        let hyperplanes = self.closure_set(s);
        self.flat_from_closed(hyperplanes)
    }

    /// Builds the flat for an already closed hyperplane set.
    pub(crate) fn flat_from_closed(&self, hyperplanes: HyperplaneSet) -> Flat {
        match &self.graph {
            Some(g) => {
                let (mut uf, rank) = self.union_find(g, hyperplanes);
                let mut blocks: Vec<Vec<usize>> = Vec::new();
                let mut slot = vec![usize::MAX; g.n() + 1];
                for v in 1..=g.n() {
                    let r = uf.find(v);
                    if slot[r] == usize::MAX {
                        slot[r] = blocks.len();
                        blocks.push(Vec::new());
                    }
                    blocks[slot[r]].push(v);
                }
                Flat {
                    hyperplanes,
                    rank,
                    blocks: Some(blocks),
                }
            }
            None => Flat {
                hyperplanes,
                rank: self.rank_of_subset(hyperplanes),
                blocks: None,
            },
        }
    }

    /// True iff `s` is closed.
    pub fn is_closed(&self, s: HyperplaneSet) -> bool {
        self.closure_set(s) == s
    }

    /// The hyperplanes containing `x`.
    pub fn localization(&self, x: &Flat) -> Result<HyperplaneSet> {
        self.check_subset(x.hyperplanes)?;
        if !self.is_closed(x.hyperplanes) || self.flat_from_closed(x.hyperplanes) != *x {
            return Err(Error::ForeignFlat);
        }
        Ok(x.hyperplanes)
    }

    /// The top flat, the intersection of all hyperplanes.
    pub fn top(&self) -> Flat {
        self.closure(self.all())
    }

    /// Rank of the arrangement.
    pub fn rank(&self) -> usize {
        self.rank_of_subset(self.all())
    }

    /// All circuits (minimal dependent subsets).
    pub fn circuits(&self) -> Vec<HyperplaneSet> {
        let mut out = match &self.graph {
            Some(g) => graph_cycles(g),
            None => {
                let mut out = Vec::new();
                self.circuits_from(HyperplaneSet::EMPTY, 0, &mut out);
                out
            }
        };
        out.sort();
        out
    }

    fn circuits_from(&self, s: HyperplaneSet, next: usize, out: &mut Vec<HyperplaneSet>) {
        let k = s.len();
        for e in next..self.len() {
            let t = s.with(e);
            if self.rank_of_subset(t) == k + 1 {
                self.circuits_from(t, e + 1, out);
            } else if s.iter().all(|f| {
                let mut u = t;
                u.remove(f);
                self.rank_of_subset(u) == k
            }) {
                out.push(t);
            }
        }
    }
}

/// Edge sets of all simple cycles of `g`.
fn graph_cycles(g: &Graph) -> Vec<HyperplaneSet> {
    fn extend(
        g: &Graph,
        start: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        edges: HyperplaneSet,
        out: &mut Vec<HyperplaneSet>,
    ) {
        let u = *path.last().unwrap();
        for &w in g.neighbors(u) {
            if w == start && path.len() >= 3 && path[1] < u {
                let e = g.edge_index(u, w).unwrap();
                out.push(edges.with(e));
            } else if w > start && !on_path[w] {
                let e = g.edge_index(u, w).unwrap();
                on_path[w] = true;
                path.push(w);
                extend(g, start, path, on_path, edges.with(e), out);
                path.pop();
                on_path[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on_path = vec![false; g.n() + 1];
    for s in 1..=g.n() {
        let mut path = vec![s];
        on_path[s] = true;
        extend(g, s, &mut path, &mut on_path, HyperplaneSet::EMPTY, &mut out);
        on_path[s] = false;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> HyperplaneSet {
        v.iter().copied().collect()
    }

    fn rat(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    fn five_vertex() -> Graph {
        Graph::new(
            5,
            [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 5), (3, 4), (3, 5), (4, 5)],
        )
        .unwrap()
    }

    fn edge_set(g: &Graph, edges: &[(usize, usize)]) -> HyperplaneSet {
        edges.iter().map(|&(a, b)| g.edge_index(a, b).unwrap()).collect()
    }

    #[test]
    fn graphical_construction() {
        let a = Arrangement::graphical(&Graph::complete(3)).unwrap();
        assert_eq!((a.len(), a.dim()), (3, 3));
        let a = Arrangement::graphical(&five_vertex()).unwrap();
        assert_eq!((a.len(), a.dim()), (9, 5));
        assert!(Arrangement::graphical(&Graph::empty(4)).unwrap().is_empty());
        assert_eq!(a.kind(), ArrangementKind::Graphical);
        assert_eq!(a.label(0), "1-2");
        assert_eq!(a.index_of_label("3-4"), Some(6));
    }

    #[test]
    fn ranks() {
        let a = Arrangement::graphical(&Graph::complete(3)).unwrap();
        assert_eq!(a.rank_of_subset(a.all()), 2);
        assert_eq!(a.rank_of_subset(HyperplaneSet::EMPTY), 0);
        let g = five_vertex();
        let a = Arrangement::graphical(&g).unwrap();
        assert_eq!(a.rank_of_subset(edge_set(&g, &[(3, 4), (4, 5), (1, 5), (1, 2)])), 4);
    }

    #[test]
    fn closures() {
        let a = Arrangement::graphical(&Graph::complete(3)).unwrap();
        let f = a.closure(set(&[0, 1]));
        assert_eq!(f.hyperplanes(), a.all());
        assert_eq!(f.rank(), 2);
        assert_eq!(f.blocks().unwrap(), &[vec![1, 2, 3]]);
        let v = a.closure(HyperplaneSet::EMPTY);
        assert_eq!(v.rank(), 0);
        assert!(v.hyperplanes().is_empty());

        let g1 = Graph::new(6, [(1, 2), (1, 4), (2, 3), (3, 4), (2, 4), (4, 5), (4, 6), (5, 6)])
            .unwrap();
        let a = Arrangement::graphical(&g1).unwrap();
        let block = edge_set(&g1, &[(1, 2), (1, 4), (2, 3), (3, 4), (2, 4)]);
        let f = a.closure(block);
        assert_eq!(f.rank(), 3);
        assert_eq!(f.nontrivial_blocks(), vec![&[1, 2, 3, 4][..]]);
    }

    #[test]
    fn localizations() {
        let g1 = Graph::new(6, [(1, 2), (1, 4), (2, 3), (3, 4), (2, 4), (4, 5), (4, 6), (5, 6)])
            .unwrap();
        let a = Arrangement::graphical(&g1).unwrap();
        let s = edge_set(&g1, &[(1, 2), (3, 4)]);
        assert_eq!(a.localization(&a.closure(s)).unwrap(), s);
        assert_eq!(a.localization(&a.top()).unwrap(), a.all());

        let g = five_vertex();
        let a = Arrangement::graphical(&g).unwrap();
        let x = a.closure(edge_set(&g, &[(3, 4), (4, 5)]));
        assert_eq!(a.localization(&x).unwrap(), edge_set(&g, &[(3, 4), (3, 5), (4, 5)]));
    }

    #[test]
    fn foreign_flat_rejected() {
        let a = Arrangement::graphical(&Graph::complete(3)).unwrap();
        let b = Arrangement::graphical(&Graph::path(3)).unwrap();
        // {0, 1} is the top of the path but not closed in K3.
        let x = b.top();
        assert_eq!(a.localization(&x), Err(Error::ForeignFlat));
    }

    #[test]
    fn general_canonicalization() {
        let a = Arrangement::general(2, vec![rat(&[-2, 4]), rat(&[0, 3])]).unwrap();
        assert_eq!(a.hyperplanes()[0], Hyperplane::Linear(vec![1.into(), (-2).into()]));
        assert_eq!(a.hyperplanes()[1], Hyperplane::Linear(vec![0.into(), 1.into()]));
        let half = BigRational::new(1.into(), 2.into());
        let a = Arrangement::general(2, vec![vec![half.clone(), half], rat(&[1, 1])]);
        assert_eq!(a, Err(Error::DuplicateHyperplane { first: 0, second: 1 }));
        assert_eq!(
            Arrangement::general(2, vec![rat(&[0, 0])]),
            Err(Error::ZeroNormal { index: 0 })
        );
        assert!(matches!(
            Arrangement::general(2, vec![rat(&[1])]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn products() {
        let k2 = Arrangement::graphical(&Graph::complete(2)).unwrap();
        let p = Arrangement::product(&k2, &k2).unwrap();
        assert_eq!((p.len(), p.dim(), p.rank()), (2, 4, 2));
        assert_eq!(p.kind(), ArrangementKind::General);
        let empty = Arrangement::from_integer_normals(1, vec![]).unwrap();
        let k3 = Arrangement::graphical(&Graph::complete(3)).unwrap();
        let p = Arrangement::product(&empty, &k3).unwrap();
        assert_eq!((p.len(), p.dim(), p.rank()), (3, 4, 2));
    }

    #[test]
    fn general_closure_matches_graphical() {
        let g = five_vertex();
        let a = Arrangement::graphical(&g).unwrap();
        let b = a.to_general();
        for bits in 0u128..(1 << a.len()) {
            let s = HyperplaneSet::from_bits(bits);
            assert_eq!(a.closure_set(s), b.closure_set(s));
        }
    }

    #[test]
    fn circuits_of_k4() {
        let a = Arrangement::graphical(&Graph::complete(4)).unwrap();
        let c = a.circuits();
        // 4 triangles + 3 four-cycles.
        assert_eq!(c.len(), 7);
        assert_eq!(c, a.to_general().circuits());
    }
}
