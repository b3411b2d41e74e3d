//! Isomorphism classes of small graphs.
//!
//! Graphs are grown one edge at a time from the empty graph; each new graph
//! is reduced to a canonical form and deduplicated. The canonical form
//! refines vertex colours by degree and neighbour colours, then takes the
//! largest adjacency code over all labellings that respect the colour order.

use std::collections::{BTreeSet, HashSet};

use crate::graph::Graph;

/// Largest vertex count handled by the generator.
const MAX_N: usize = 10;

fn pair_index(i: usize, j: usize) -> usize {
    // Column-major upper triangle, matching graph6 bit order.
    j * (j - 1) / 2 + i
}

/// Colour classes after refinement, in canonical order.
fn refined_cells(adj: &[u32]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut colour: Vec<usize> = vec![0; n];
    loop {
        let signature: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut s: Vec<usize> = (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(|w| colour[w]).collect();
                s.sort_unstable();
                (colour[v], s)
            })
            .collect();
        let distinct: BTreeSet<&(usize, Vec<usize>)> = signature.iter().collect();
        let distinct: Vec<_> = distinct.into_iter().collect();
        let next: Vec<usize> = signature
            .iter()
            .map(|s| distinct.binary_search(&s).unwrap())
            .collect();
        let before = colour.iter().collect::<BTreeSet<_>>().len();
        colour = next;
        if distinct.len() == before {
            break;
        }
    }
    let k = colour.iter().max().map_or(0, |&c| c + 1);
    let mut cells = vec![Vec::new(); k];
    for v in 0..n {
        cells[colour[v]].push(v);
    }
    cells
}

fn code(adj: &[u32], order: &[usize]) -> u64 {
    // order[p] is the vertex placed at position p.
    let mut c = 0u64;
    for j in 1..order.len() {
        for i in 0..j {
            if adj[order[i]] >> order[j] & 1 == 1 {
                c |= 1 << pair_index(i, j);
            }
        }
    }
    c
}

fn best_code(adj: &[u32], cells: &[Vec<usize>], k: usize, order: &mut Vec<usize>, best: &mut u64) {
    if k == cells.len() {
        *best = (*best).max(code(adj, order));
        return;
    }
    let mut cell = cells[k].clone();
    permute(adj, cells, k, &mut cell, 0, order, best);
}

fn permute(
    adj: &[u32],
    cells: &[Vec<usize>],
    k: usize,
    cell: &mut Vec<usize>,
    i: usize,
    order: &mut Vec<usize>,
    best: &mut u64,
) {
    if i == cell.len() {
        let len = order.len();
        order.extend_from_slice(cell);
        best_code(adj, cells, k + 1, order, best);
        order.truncate(len);
        return;
    }
    for j in i..cell.len() {
        cell.swap(i, j);
        permute(adj, cells, k, cell, i + 1, order, best);
        cell.swap(i, j);
    }
}

fn canonical_code(adj: &[u32]) -> u64 {
    let cells = refined_cells(adj);
    let mut best = 0;
    best_code(adj, &cells, 0, &mut Vec::new(), &mut best);
    best
}

fn from_code(n: usize, c: u64) -> Graph {
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if c >> pair_index(i, j) & 1 == 1 {
                edges.push((i + 1, j + 1));
            }
        }
    }
    Graph::new(n, edges).expect("decoded edges are valid")
}

fn adjacency(g: &Graph) -> Vec<u32> {
    let mut adj = vec![0u32; g.n()];
    for &(a, b) in g.edges() {
        adj[a - 1] |= 1 << (b - 1);
        adj[b - 1] |= 1 << (a - 1);
    }
    adj
}

/// Canonical representative of the isomorphism class of `g` (at most 10
/// vertices).
pub fn canonical_form(g: &Graph) -> Graph {
    assert!(g.n() <= MAX_N, "canonical form supports at most {MAX_N} vertices");
    from_code(g.n(), canonical_code(&adjacency(g)))
}

/// One representative per isomorphism class of graphs on `n` vertices,
/// ordered by edge count then canonical code.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= MAX_N, "generator supports at most {MAX_N} vertices");
    let mut out = Vec::new();
    let mut level: Vec<u64> = vec![0];
    loop {
        let mut sorted = level.clone();
        sorted.sort_unstable();
        out.extend(sorted.iter().map(|&c| from_code(n, c)));
        let mut next = HashSet::new();
        for &c in &level {
            let g = from_code(n, c);
            let adj = adjacency(&g);
            for j in 1..n {
                for i in 0..j {
                    if c >> pair_index(i, j) & 1 == 0 {
                        let mut a = adj.clone();
                        a[i] |= 1 << j;
                        a[j] |= 1 << i;
                        next.insert(canonical_code(&a));
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        level = next.into_iter().collect();
    }
    out
}

pub fn connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n).into_iter().filter(Graph::is_connected).collect()
}

/// Graphs on `1..=max_n` vertices, connected ones only if asked.
pub fn corpus_up_to(max_n: usize, connected_only: bool) -> Vec<Graph> {
    (1..=max_n)
        .flat_map(|n| {
            if connected_only {
                connected_graphs(n)
            } else {
                all_graphs(n)
            }
        })
        .collect()
}
