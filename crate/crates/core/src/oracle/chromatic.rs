use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::polynomial::IntPolynomial;

/// Largest edge count [`chromatic_polynomial_dc`] accepts.
pub const MAX_DC_EDGES: usize = 30;

/// Adjacency rows as bitmasks; contraction merges rows, so parallel edges
/// collapse automatically.
type Rows = Vec<u64>;

fn edge_count(rows: &Rows) -> u32 {
    rows.iter().map(|r| r.count_ones()).sum::<u32>() / 2
}

/// Removes vertex `v`, shifting the higher bits down.
fn remove_vertex(rows: &Rows, v: usize) -> Rows {
    let low = (1u64 << v) - 1;
    rows.iter()
        .enumerate()
        .filter(|&(u, _)| u != v)
        .map(|(_, &r)| (r & low) | ((r >> 1) & !low))
        .collect()
}

fn dc(rows: Rows, memo: &mut HashMap<Rows, IntPolynomial>) -> IntPolynomial {
    let n = rows.len();
    // Isolated vertices contribute a factor t each.
    if let Some(v) = rows.iter().position(|&r| r == 0) {
        return dc(remove_vertex(&rows, v), memo).shift(1);
    }
    if n == 0 {
        return IntPolynomial::one();
    }
    if edge_count(&rows) as usize == n * (n - 1) / 2 {
        return IntPolynomial::from_roots(0, 0..n as i64);
    }
    if let Some(p) = memo.get(&rows) {
        return p.clone();
    }
    // Branch on an edge at the vertex of smallest positive degree.
    let u = (0..n).min_by_key(|&u| rows[u].count_ones()).unwrap();
    let v = rows[u].trailing_zeros() as usize;
    let mut deleted = rows.clone();
    deleted[u] &= !(1 << v);
    deleted[v] &= !(1 << u);
    let mut merged = deleted.clone();
    let nv = merged[v];
    merged[u] |= nv;
    for (w, r) in merged.iter_mut().enumerate() {
        if nv >> w & 1 == 1 {
            *r |= 1 << u;
        }
    }
    let contracted = remove_vertex(&merged, v);
    let p = &dc(deleted, memo) - &dc(contracted, memo);
    memo.insert(rows, p.clone());
    p
}

/// Chromatic polynomial of `g` by deletion-contraction with memoization.
pub fn chromatic_polynomial_dc(g: &Graph) -> Result<IntPolynomial> {
    if g.edge_count() > MAX_DC_EDGES {
        return Err(Error::EnumerationBoundExceeded {
            found: g.edge_count(),
            bound: MAX_DC_EDGES,
        });
    }
    if g.n() > 64 {
        // More than 64 vertices with at most 30 edges: the rest are isolated.
        let used = g.support();
        let relabel: HashMap<usize, usize> = used.iter().enumerate().map(|(i, &v)| (v, i + 1)).collect();
        let h = Graph::new(used.len(), g.edges().iter().map(|&(a, b)| (relabel[&a], relabel[&b])))?;
        return Ok(chromatic_polynomial_dc(&h)?.shift(g.n() - used.len()));
    }
    let mut rows = vec![0u64; g.n()];
    for &(a, b) in g.edges() {
        rows[a - 1] |= 1 << (b - 1);
        rows[b - 1] |= 1 << (a - 1);
    }
    Ok(dc(rows, &mut HashMap::new()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dc(g: &Graph) -> IntPolynomial {
        chromatic_polynomial_dc(g).unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!(dc(&Graph::complete(3)).to_string(), "t^3 - 3t^2 + 2t");
        assert_eq!(dc(&Graph::cycle(4)).to_string(), "t^4 - 4t^3 + 6t^2 - 3t");
        assert_eq!(dc(&Graph::complete(2)).to_string(), "t^2 - t");
        assert_eq!(dc(&Graph::new(4, [(1, 2)]).unwrap()).to_string(), "t^4 - t^3");
        assert_eq!(dc(&Graph::empty(0)), IntPolynomial::one());
    }

    #[test]
    fn trees_and_cycles() {
        for n in 1..=8 {
            // A tree on n vertices: t (t-1)^(n-1).
            let tree = IntPolynomial::from_roots(1, std::iter::repeat_n(1, n - 1));
            assert_eq!(dc(&Graph::path(n)), tree);
        }
        for n in 3..=9usize {
            // (t-1)^n + (-1)^n (t-1)
            let mut p = IntPolynomial::from_roots(0, std::iter::repeat_n(1, n));
            let sign = if n % 2 == 0 { 1 } else { -1 };
            p = &p + &IntPolynomial::new(vec![-sign, sign]);
            assert_eq!(dc(&Graph::cycle(n)), p, "C{n}");
        }
    }

    #[test]
    fn five_vertex_graph() {
        let g = Graph::new(
            5,
            [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 5), (3, 4), (3, 5), (4, 5)],
        )
        .unwrap();
        assert_eq!(dc(&g), IntPolynomial::from_roots(1, [1, 2, 3, 3]));
    }

    #[test]
    fn proper_colourings_by_brute_force() {
        let g = Graph::new(6, [(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 6), (6, 4), (1, 6)]).unwrap();
        let p = dc(&g);
        for k in 0..=4i64 {
            let mut count = 0;
            let total = (k as usize).pow(6);
            for code in 0..total {
                let colour = |v: usize| code / (k as usize).pow(v as u32 - 1) % k as usize;
                if g.edges().iter().all(|&(a, b)| colour(a) != colour(b)) {
                    count += 1;
                }
            }
            assert_eq!(p.eval(k), count, "k = {k}");
        }
    }

    #[test]
    fn bound_and_sparse_large_graphs() {
        assert!(chromatic_polynomial_dc(&Graph::complete(9)).is_err());
        let g = Graph::new(70, [(1, 70), (2, 3)]).unwrap();
        assert_eq!(dc(&g), IntPolynomial::from_roots(68, [1, 1]));
    }
}
