//! Simple undirected graphs on vertices `1..=n`, block decomposition and
//! chordality certificates.
//!
//! Vertex labels are 1-based throughout. Edges are stored as `(i, j)` with
//! `i < j`, sorted lexicographically; the position of an edge in
//! [`Graph::edges`] is its hyperplane index in the graphical arrangement.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simple undirected graph on the vertex set `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicates and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n + 1];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Self { n, edges: list, adj })
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, []).expect("edgeless graph is valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j)));
        Self::new(n, edges).expect("complete graph is valid")
    }

    /// The cycle `1-2-...-n-1`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let edges = (1..=n).map(|i| (i, i % n + 1));
        Self::new(n, edges).expect("cycle is valid")
    }

    /// The path `1-2-...-n`.
    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i, i + 1))).expect("path is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && u <= self.n && v <= self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Index of edge `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Vertices incident to at least one edge.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.n).filter(|&v| !self.adj[v].is_empty()).collect()
    }

    /// Connected components as sorted vertex lists, ordered by minimum vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n + 1];
        let mut out = Vec::new();
        for s in 1..=self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// True iff every pair of neighbours of `v` is adjacent.
    pub fn is_simplicial(&self, v: usize) -> Result<bool> {
        self.check_vertex(v)?;
        Ok(self.simplicial_within(v, |_| true))
    }

    fn simplicial_within(&self, v: usize, alive: impl Fn(usize) -> bool) -> bool {
        let nbrs: Vec<usize> = self.adj[v].iter().copied().filter(|&w| alive(w)).collect();
        nbrs.iter()
            .enumerate()
            .all(|(k, &x)| nbrs[k + 1..].iter().all(|&y| self.has_edge(x, y)))
    }

    /// Biconnected blocks. Each block is returned as a graph on the same
    /// vertex set `1..=n` carrying only the block's edges; blocks are sorted
    /// by their vertex lists.
    pub fn blocks(&self) -> Vec<Graph> {
        let mut state = BlockSearch {
            g: self,
            disc: vec![0; self.n + 1],
            low: vec![0; self.n + 1],
            time: 0,
            stack: Vec::new(),
            blocks: Vec::new(),
        };
        for s in 1..=self.n {
            if state.disc[s] == 0 && !self.adj[s].is_empty() {
                state.visit(s, 0);
            }
        }
        let mut blocks: Vec<(Vec<usize>, Graph)> = state
            .blocks
            .into_iter()
            .map(|edges| {
                let g = Graph::new(self.n, edges).expect("block edges come from a simple graph");
                (g.support(), g)
            })
            .collect();
        blocks.sort_by(|a, b| a.0.cmp(&b.0));
        blocks.into_iter().map(|(_, g)| g).collect()
    }

    /// Maximum cardinality search visit order, smallest label first on ties.
    pub fn maximum_cardinality_search(&self) -> Vec<usize> {
        let mut weight = vec![0usize; self.n + 1];
        let mut done = vec![false; self.n + 1];
        let mut order = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            let v = (1..=self.n)
                .filter(|&v| !done[v])
                .max_by_key(|&v| (weight[v], Reverse(v)))
                .expect("unvisited vertex remains");
            done[v] = true;
            order.push(v);
            for &w in &self.adj[v] {
                if !done[w] {
                    weight[w] += 1;
                }
            }
        }
        order
    }

    /// First step of `order` whose vertex is not simplicial among the
    /// vertices after it, reported as `(v, x, y)` with `x`, `y` later
    /// non-adjacent neighbours of `v`.
    fn first_violation(&self, order: &[usize]) -> Option<(usize, usize, usize)> {
        let mut pos = vec![0usize; self.n + 1];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        for (i, &v) in order.iter().enumerate() {
            let later: Vec<usize> = self.adj[v].iter().copied().filter(|&w| pos[w] > i).collect();
            for (k, &x) in later.iter().enumerate() {
                if let Some(&y) = later[k + 1..].iter().find(|&&y| !self.has_edge(x, y)) {
                    return Some((v, x, y));
                }
            }
        }
        None
    }

    /// Chordality certificate: a simplicial elimination ordering if the graph
    /// is chordal, otherwise a chordless cycle of length at least four.
    pub fn chordality(&self) -> Chordality {
        let mut order = self.maximum_cardinality_search();
        order.reverse();
        match self.first_violation(&order) {
            None => Chordality::Chordal(EliminationOrdering(order)),
            Some((v, x, y)) => {
                let cycle = self
                    .chordless_cycle_through(v, x, y)
                    .or_else(|| self.any_chordless_cycle())
                    .expect("an elimination ordering failed, so a chordless cycle exists");
                Chordality::NotChordal(cycle)
            }
        }
    }

    /// Shortest `x`-`y` path avoiding `v` and its other neighbours, closed
    /// through `v` into a chordless cycle.
    fn chordless_cycle_through(&self, v: usize, x: usize, y: usize) -> Option<ChordlessCycle> {
        let blocked = |w: usize| w == v || (w != x && w != y && self.has_edge(v, w));
        let mut prev = vec![0usize; self.n + 1];
        let mut seen = vec![false; self.n + 1];
        seen[x] = true;
        let mut queue = VecDeque::from([x]);
        while let Some(u) = queue.pop_front() {
            if u == y {
                break;
            }
            for &w in &self.adj[u] {
                if !seen[w] && !blocked(w) {
                    seen[w] = true;
                    prev[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if !seen[y] {
            return None;
        }
        let mut path = vec![y];
        while *path.last().unwrap() != x {
            path.push(prev[*path.last().unwrap()]);
        }
        path.push(v);
        Some(ChordlessCycle::normalized(path))
    }

    fn any_chordless_cycle(&self) -> Option<ChordlessCycle> {
        for v in 1..=self.n {
            let nbrs = &self.adj[v];
            for (k, &x) in nbrs.iter().enumerate() {
                for &y in &nbrs[k + 1..] {
                    if !self.has_edge(x, y) {
                        if let Some(c) = self.chordless_cycle_through(v, x, y) {
                            return Some(c);
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_chordal(&self) -> bool {
        matches!(self.chordality(), Chordality::Chordal(_))
    }

    /// Applies a vertex relabelling `perm[v-1] = new label of v`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let edges = self.edges.iter().map(|&(u, v)| (perm[u - 1], perm[v - 1]));
        Graph::new(self.n, edges).expect("relabelling preserves simplicity")
    }
}

struct BlockSearch<'a> {
    g: &'a Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    stack: Vec<(usize, usize)>,
    blocks: Vec<Vec<(usize, usize)>>,
}

impl BlockSearch<'_> {
    fn visit(&mut self, u: usize, parent: usize) {
        self.time += 1;
        self.disc[u] = self.time;
        self.low[u] = self.time;
        for &w in &self.g.adj[u] {
            if self.disc[w] == 0 {
                self.stack.push((u, w));
                self.visit(w, u);
                self.low[u] = self.low[u].min(self.low[w]);
                if self.low[w] >= self.disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = self.stack.pop() {
                        block.push(e);
                        if e == (u, w) {
                            break;
                        }
                    }
                    self.blocks.push(block);
                }
            } else if w != parent && self.disc[w] < self.disc[u] {
                self.stack.push((u, w));
                self.low[u] = self.low[u].min(self.disc[w]);
            }
        }
    }
}

/// Outcome of [`Graph::chordality`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chordality {
    Chordal(EliminationOrdering),
    NotChordal(ChordlessCycle),
}

/// A vertex ordering in which each vertex is simplicial among itself and
/// the vertices after it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationOrdering(pub Vec<usize>);

impl EliminationOrdering {
    /// Checks that this is a permutation of `1..=n` and a simplicial
    /// elimination ordering of `g`.
    pub fn validate(&self, g: &Graph) -> bool {
        let mut seen = vec![false; g.n() + 1];
        for &v in &self.0 {
            if v == 0 || v > g.n() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        self.0.len() == g.n() && g.first_violation(&self.0).is_none()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// A cycle of length at least four with no chord.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordlessCycle(pub Vec<usize>);

impl ChordlessCycle {
    /// Rotates to start at the smallest vertex, walking toward its smaller
    /// cycle neighbour.
    fn normalized(mut cycle: Vec<usize>) -> Self {
        let k = cycle.len();
        let start = (0..k).min_by_key(|&i| cycle[i]).unwrap();
        cycle.rotate_left(start);
        if cycle[k - 1] < cycle[1] {
            cycle[1..].reverse();
        }
        Self(cycle)
    }

    pub fn validate(&self, g: &Graph) -> bool {
        let c = &self.0;
        let k = c.len();
        if k < 4 {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        if !c.iter().all(|&v| v >= 1 && v <= g.n() && seen.insert(v)) {
            return false;
        }
        (0..k).all(|i| {
            (i + 1..k).all(|j| {
                let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                g.has_edge(c[i], c[j]) == consecutive
            })
        })
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// A directed graph on `1..=n`, used for orientations of undirected graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out: Vec<Vec<usize>>,
}

/// Outcome of [`Digraph::topological_order`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TopologicalOrder {
    Order(Vec<usize>),
    /// Vertices `c0 -> c1 -> ... -> ck -> c0`.
    Cycle(Vec<usize>),
}

impl Digraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut out = vec![Vec::new(); n + 1];
        for (u, v) in arcs {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            out[u].push(v);
        }
        for o in &mut out {
            o.sort_unstable();
            o.dedup();
        }
        Ok(Self { n, out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.n).flat_map(move |u| self.out[u].iter().map(move |&v| (u, v)))
    }

    /// Kahn's algorithm taking the smallest available label first; returns a
    /// directed cycle when no order exists.
    pub fn topological_order(&self) -> TopologicalOrder {
        let mut indeg = vec![0usize; self.n + 1];
        for (_, v) in self.arcs() {
            indeg[v] += 1;
        }
        let mut heap: BinaryHeap<Reverse<usize>> =
            (1..=self.n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(Reverse(u)) = heap.pop() {
            order.push(u);
            for &v in &self.out[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    heap.push(Reverse(v));
                }
            }
        }
        if order.len() == self.n {
            return TopologicalOrder::Order(order);
        }
        // Every leftover vertex keeps a leftover predecessor; walk backwards
        // until a vertex repeats.
        let leftover: Vec<bool> = (0..=self.n).map(|v| v > 0 && indeg[v] > 0).collect();
        let mut pred = vec![0usize; self.n + 1];
        for (u, v) in self.arcs() {
            if leftover[u] && leftover[v] && pred[v] == 0 {
                pred[v] = u;
            }
        }
        let start = (1..=self.n).find(|&v| leftover[v]).unwrap();
        let mut pos = vec![usize::MAX; self.n + 1];
        let mut walk = Vec::new();
        let mut v = start;
        while pos[v] == usize::MAX {
            pos[v] = walk.len();
            walk.push(v);
            v = pred[v];
        }
        let mut cycle = walk[pos[v]..].to_vec();
        cycle.reverse();
        TopologicalOrder::Cycle(cycle)
    }
}
