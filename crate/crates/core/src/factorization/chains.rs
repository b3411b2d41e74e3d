//! Maximal chains to partitions and back.
//!
//! A maximal chain `V = X0 < ... < Xr = T` induces the partition with parts
//! `A_Xi \ A_X(i-1)`. For graphical arrangements the converse runs block by
//! block: inside a doubly connected block every part of a nice partition is
//! a star around its own centre, exactly one part is a single edge, and
//! orienting every edge away from its part's centre gives an acyclic
//! digraph. A topological order of that digraph is a simplicial elimination
//! ordering, and intersecting one outgoing hyperplane per vertex from the
//! back of the order yields a modular chain inducing the partition. Block
//! chains are concatenated.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Digraph, Graph, TopologicalOrder};
use crate::hyperplane_set::HyperplaneSet;
use crate::lattice::{FlatChain, IntersectionLattice};
use crate::partition::ArrangementPartition;

use super::nice::is_nice;

/// Partition induced by a maximal chain.
pub fn chain_to_partition(
    l: &IntersectionLattice,
    chain: &FlatChain,
) -> Result<ArrangementPartition> {
    if !l.is_maximal_chain(chain) {
        return Err(Error::InvalidChain(format!(
            "expected {} covers from V to T",
            l.rank()
        )));
    }
    let parts = chain
        .ids()
        .windows(2)
        .map(|w| l.hyperplanes(w[1]).difference(l.hyperplanes(w[0])))
        .collect();
    Ok(ArrangementPartition::from_parts_unchecked(parts))
}

/// The vertex shared by every edge of `part` (at least two edges).
pub fn star_vertex(g: &Graph, part: HyperplaneSet) -> Result<usize> {
    if part.len() < 2 {
        return Err(Error::InvalidPartition(
            "star vertex needs a part with at least two edges".into(),
        ));
    }
    let mut common: Option<Vec<usize>> = None;
    for e in part {
        let &(u, v) = g.edges().get(e).ok_or(Error::HyperplaneOutOfRange {
            index: e,
            len: g.edge_count(),
        })?;
        common = Some(match common {
            None => vec![u, v],
            Some(c) => c.into_iter().filter(|&w| w == u || w == v).collect(),
        });
    }
    match common.as_deref() {
        Some(&[w]) => Ok(w),
        _ => Err(Error::NoStarVertex),
    }
}

/// How one block of the graph was oriented.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockOrientation {
    /// Vertices of the block, ascending.
    pub vertices: Vec<usize>,
    /// `(part, centre)` for every part inside the block; `part` is the
    /// part's hyperplane list.
    pub star_vertices: Vec<(Vec<usize>, usize)>,
    /// Arcs of the orientation, tail first.
    pub arcs: Vec<(usize, usize)>,
    /// Topological order of the orientation; a simplicial elimination
    /// ordering of the block.
    pub order: Vec<usize>,
    /// Hyperplane added at each chain step within the block.
    pub steps: Vec<usize>,
}

/// Output of [`partition_to_modular_chain`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainReconstruction {
    pub chain: FlatChain,
    pub blocks: Vec<BlockOrientation>,
}

/// Builds a maximal modular chain inducing the nice partition `pi` of a
/// graphical arrangement.
pub fn partition_to_modular_chain(
    l: &IntersectionLattice,
    pi: &ArrangementPartition,
) -> Result<ChainReconstruction> {
    let g = l.arrangement().graph().ok_or(Error::NotGraphical)?;
    if !is_nice(l, pi)?.is_nice() {
        return Err(Error::NotNice);
    }
    let mut blocks = Vec::new();
    let mut current = HyperplaneSet::EMPTY;
    let mut chain = vec![l.bottom()];
    for block in g.blocks() {
        let edges: HyperplaneSet = block
            .edges()
            .iter()
            .map(|&(u, v)| g.edge_index(u, v).expect("block edge is a graph edge"))
            .collect();
        let local = pi.restrict(edges);
        let orientation = orient_block(g, &block, &local)?;
        for &h in &orientation.steps {
            current = l.arrangement().closure_set(current.with(h));
            chain.push(l.find(current).expect("closure is a flat"));
        }
        blocks.push(orientation);
    }
    Ok(ChainReconstruction {
        chain: FlatChain(chain),
        blocks,
    })
}

fn orient_block(
    g: &Graph,
    block: &Graph,
    local: &ArrangementPartition,
) -> Result<BlockOrientation> {
    let vertices = block.support();
    let mut star_vertices = Vec::new();
    let mut arcs = Vec::new();
    let mut singleton = None;
    for &part in local.parts() {
        if part.len() == 1 {
            if singleton.replace(part).is_some() {
                // Two single-edge parts cannot occur in a nice partition of
                // a doubly connected chordal graph.
                return Err(Error::NotNice);
            }
            continue;
        }
        let centre = star_vertex(g, part)?;
        star_vertices.push((part.to_vec(), centre));
        for e in part {
            let (u, v) = g.edges()[e];
            arcs.push((centre, if u == centre { v } else { u }));
        }
    }
    let single = singleton.ok_or(Error::NotNice)?;
    let e = single.min().unwrap();
    let (a, b) = g.edges()[e];
    let indegree = |w: usize| arcs.iter().filter(|&&(_, h)| h == w).count();
    // The edge points at the endpoint already receiving more arcs.
    let first = if indegree(b) < indegree(a) { b } else { a };
    let second = if first == a { b } else { a };

    for centre in [first, second] {
        let other = if centre == a { b } else { a };
        let mut all = arcs.clone();
        all.push((centre, other));
        let d = Digraph::new(g.n(), all.iter().copied())?;
        let TopologicalOrder::Order(full) = d.topological_order() else {
            continue;
        };
        let order: Vec<usize> = full.into_iter().filter(|v| vertices.binary_search(v).is_ok()).collect();
        let mut steps = Vec::with_capacity(order.len().saturating_sub(1));
        for &v in order[..order.len() - 1].iter().rev() {
            let head = *d.successors(v).first().ok_or(Error::NotNice)?;
            steps.push(g.edge_index(v, head).expect("arc is an edge"));
        }
        let mut stars = star_vertices.clone();
        stars.push((vec![e], centre));
        stars.sort();
        all.sort();
        return Ok(BlockOrientation {
            vertices,
            star_vertices: stars,
            arcs: all,
            order,
            steps,
        });
    }
    Err(Error::NotNice)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::graph::EliminationOrdering;

    fn lattice(g: &Graph) -> IntersectionLattice {
        IntersectionLattice::build(&Arrangement::graphical(g).unwrap()).unwrap()
    }

    fn edges(g: &Graph, list: &[(usize, usize)]) -> HyperplaneSet {
        list.iter().map(|&(u, v)| g.edge_index(u, v).unwrap()).collect()
    }

    fn five_vertex() -> Graph {
        Graph::new(
            5,
            [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 5), (3, 4), (3, 5), (4, 5)],
        )
        .unwrap()
    }

    #[test]
    fn star_vertices_of_example() {
        let g = five_vertex();
        assert_eq!(star_vertex(&g, edges(&g, &[(1, 3), (1, 4), (1, 5)])), Ok(1));
        assert_eq!(star_vertex(&g, edges(&g, &[(3, 5), (4, 5)])), Ok(5));
        assert_eq!(
            star_vertex(&g, edges(&g, &[(1, 2), (3, 4)])),
            Err(Error::NoStarVertex)
        );
        assert!(star_vertex(&g, edges(&g, &[(3, 4)])).is_err());
    }

    #[test]
    fn five_vertex_reconstruction() {
        let g = five_vertex();
        let l = lattice(&g);
        let pi = ArrangementPartition::new(
            9,
            [
                edges(&g, &[(3, 4)]),
                edges(&g, &[(3, 5), (4, 5)]),
                edges(&g, &[(1, 3), (1, 4), (1, 5)]),
                edges(&g, &[(1, 2), (2, 3), (2, 5)]),
            ],
        )
        .unwrap();
        let rec = partition_to_modular_chain(&l, &pi).unwrap();
        assert_eq!(rec.blocks.len(), 1);
        let b = &rec.blocks[0];
        assert_eq!(b.order, vec![2, 1, 5, 4, 3]);
        assert!(EliminationOrdering(b.order.clone()).validate(&g));
        let centre = |list: &[(usize, usize)]| {
            let key = edges(&g, list).to_vec();
            b.star_vertices.iter().find(|(p, _)| *p == key).unwrap().1
        };
        assert_eq!(centre(&[(3, 4)]), 4);
        assert_eq!(centre(&[(3, 5), (4, 5)]), 5);
        assert_eq!(centre(&[(1, 3), (1, 4), (1, 5)]), 1);
        assert_eq!(centre(&[(1, 2), (2, 3), (2, 5)]), 2);
        assert!(l.is_maximal_chain(&rec.chain));
        assert!(rec.chain.ids().iter().all(|&x| l.is_modular_element(x)));
        assert_eq!(chain_to_partition(&l, &rec.chain).unwrap(), pi);
    }

    #[test]
    fn k2_chain() {
        let g = Graph::complete(2);
        let l = lattice(&g);
        let pi = ArrangementPartition::new(1, [edges(&g, &[(1, 2)])]).unwrap();
        let rec = partition_to_modular_chain(&l, &pi).unwrap();
        assert_eq!(rec.chain, FlatChain(vec![0, 1]));
        assert_eq!(chain_to_partition(&l, &rec.chain).unwrap(), pi);
    }

    #[test]
    fn rejects_non_nice_and_non_maximal() {
        let g = Graph::complete(3);
        let l = lattice(&g);
        let pi = ArrangementPartition::from_labels(&[0, 1, 2]);
        assert_eq!(partition_to_modular_chain(&l, &pi), Err(Error::NotNice));
        assert!(chain_to_partition(&l, &FlatChain(vec![0, 4])).is_err());
        assert!(chain_to_partition(&l, &FlatChain(vec![0, 1])).is_err());
    }
}
